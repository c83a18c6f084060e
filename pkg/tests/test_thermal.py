#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from dlropf.nlp import centralJacobian
from dlropf.thermal import *

def _coefficients(k0, k1, k4):
	return ThermalCoefficients(k0_prime = k0, k0 = k0, k1 = k1, k4 = k4, r_prime = 1.0)

def _weathers(conductor):
	return [
		WeatherSample(0.6, math.pi / 2, 313.15, solarGain(conductor, 1000.0)),
		WeatherSample(2.0, math.pi / 3, 300.0, solarGain(conductor, 600.0)),
		WeatherSample(8.0, math.pi / 4, 283.0, solarGain(conductor, 200.0))
	]

def test_invalidConductor():
	with pytest.raises(InvalidThermalDataError) as info:
		ConductorParams(9.4e-5, 1.628, 805.0, -0.028, 0.8, 0.8)

	assert info.value.field == 'diameter'

	with pytest.raises(InvalidThermalDataError):
		ConductorParams(9.4e-5, 1.628, 805.0, 0.028, 1.2, 0.8)

def test_invalidWeather():
	with pytest.raises(InvalidThermalDataError):
		WeatherSample(-1.0, 0.0, 300.0, 0.0)

	with pytest.raises(InvalidThermalDataError):
		WeatherSample(1.0, 2.0, 300.0, 0.0)

def test_convectionAtAmbient(conductor, weather):
	assert exactConvection(conductor, weather, weather.ambient_temp) == 0.0

def test_convectionWithoutWind(conductor, weather):
	calm = weather.replace(wind_speed = 0.0)
	assert exactConvection(conductor, calm, calm.ambient_temp + 40) > 0

def test_linearizeSyntheticLine(conductor, weather):
	registerConvectionProvider('synthetic', lambda params, weather, temp: 5 * (temp - 300))
	lin = linearizeConvection(conductor, weather, (300.0, 400.0), provider = 'synthetic')

	assert lin.slope == pytest.approx(5.0)
	assert lin.intercept == pytest.approx(-1500.0)
	assert lin.fit_r2 == pytest.approx(1.0)

def test_linearizeFitQuality(conductor):
	weather = WeatherSample(0.61, math.pi / 2, 313.0, 0.0)
	assert linearizeConvection(conductor, weather).fit_r2 >= 0.99

def test_linearizeSlopeGrowsWithWind(conductor):
	slow = WeatherSample(0.6, math.pi / 2, 300.0, 0.0)
	fast = slow.replace(wind_speed = 10.0)
	assert linearizeConvection(conductor, fast).slope > linearizeConvection(conductor, slow).slope

def test_linearizeDegenerate(conductor, weather):
	registerConvectionProvider('flat', lambda params, weather, temp: 1.0)
	with pytest.raises(DegenerateFitError):
		linearizeConvection(conductor, weather, provider = 'flat')

def test_coefficientsWithoutCurrent(conductor, weather, lin):
	coeffs = computeCoefficients(conductor, weather, lin)
	assert coeffs.k0 == coeffs.k0_prime
	assert coeffs.withCurrent(1e6).k0 == pytest.approx(coeffs.k0_prime + coeffs.r_prime * 1e6)

def test_nonPositiveK0(conductor, weather, lin):
	cold = LinearConvection(lin.slope, lin.intercept + 1e4, lin.fit_r2)
	with pytest.raises(NonPositiveK0Error):
		computeCoefficients(conductor, weather, cold)

def test_quarticWithoutLinearTerm():
	roots = quarticRoots(_coefficients(16.0, 0.0, 1.0))
	assert roots.s1 == pytest.approx(2.0, rel = 1e-10)
	assert roots.s2 == pytest.approx(2.0, rel = 1e-10)

def test_quarticFromFactorization():
	roots = quarticRoots(_coefficients(6.0, 5.0, 1.0))
	assert roots.s1 == pytest.approx(1.0, rel = 1e-10)
	assert roots.s2 == pytest.approx(2.0, rel = 1e-10)
	assert roots.p == pytest.approx(1.0)
	assert roots.q == pytest.approx(3.0)

def test_quarticIdentities():
	rng = np.random.default_rng(0)

	for _ in range(50):
		k4 = float(rng.uniform(1e-12, 1e-11))
		coeffs = _coefficients(float(rng.uniform(0.01, 1.0)), float(rng.uniform(1e-4, 1e-2)), k4)
		roots = quarticRoots(coeffs)

		b, c = coeffs.k1 / coeffs.k4, coeffs.k0 / coeffs.k4
		scale = max(1.0, c)
		assert roots.s1 > 0 and roots.s2 > 0
		assert abs(roots.s1**4 + b * roots.s1 - c) / scale <= 1e-10
		assert abs(roots.s2**4 - b * roots.s2 - c) / scale <= 1e-10
		assert (roots.s2 - roots.s1) * (roots.s1**2 + roots.s2**2) == pytest.approx(b, rel = 1e-8)
		assert roots.s1 * roots.s2 * roots.q == pytest.approx(c, rel = 1e-8)

def test_tauBasics(conductor, weather, lin):
	coeffs = computeCoefficients(conductor, weather, lin, 1e6)
	roots = quarticRoots(coeffs)
	initial_temp = 310.0

	assert tauOfTemperature(initial_temp, initial_temp, roots, coeffs.k4) == 0.0

	middle = tauOfTemperature((initial_temp + roots.s1) / 2, initial_temp, roots, coeffs.k4)
	near = tauOfTemperature(roots.s1 * (1 - 1e-12), initial_temp, roots, coeffs.k4)
	assert near > middle > 0

	temps = np.linspace(initial_temp, roots.s1, 20)[1:-1]
	taus = [tauOfTemperature(t, initial_temp, roots, coeffs.k4) for t in temps]
	assert np.all(np.diff(taus) > 0)

	with pytest.raises(OutOfBranchError):
		tauOfTemperature(roots.s1 + 1, initial_temp, roots, coeffs.k4)

def test_tauInvertsStep(conductor, weather, lin):
	coeffs = computeCoefficients(conductor, weather, lin, 5e5)
	temp = stepTemperature(320.0, 5e5, conductor, weather, lin, 600.0)
	assert tauOfTemperature(temp, 320.0, quarticRoots(coeffs), coeffs.k4) == pytest.approx(600.0, rel = 1e-6)

def test_stepMatchesRK4(conductor):
	for weather in _weathers(conductor):
		lin = linearizeConvection(conductor, weather)
		current_max = maxSteadyCurrentSq(conductor, weather, lin)

		for initial_temp in np.linspace(290.0, 370.0, 6):
			for current_sq in np.linspace(0.0, 1.2 * current_max, 6):
				coeffs = computeCoefficients(conductor, weather, lin, current_sq)
				closed = stepTemperature(initial_temp, current_sq, conductor, weather, lin, 300.0)
				assert abs(closed - integrateRK4(initial_temp, coeffs, 300.0, steps = 2048)) <= 1e-6

def test_stepDegenerateCases(conductor, weather, lin):
	s1 = steadyStateTemperature(1e6, conductor, weather, lin)
	assert stepTemperature(s1, 1e6, conductor, weather, lin, 900.0) == s1
	assert stepTemperature(330.0, 1e6, conductor, weather, lin, 0.0) == 330.0

def test_stepLongPeriod(conductor, weather, lin):
	s1 = steadyStateTemperature(8e5, conductor, weather, lin)
	assert stepTemperature(320.0, 8e5, conductor, weather, lin, 1e6) == pytest.approx(s1, abs = 1e-6)

def test_steadyStateWithoutCurrent(conductor, weather, lin):
	assert steadyStateTemperature(0.0, conductor, weather, lin) > weather.ambient_temp

def test_ampacityRoundTrip(conductor):
	rng = np.random.default_rng(1)

	for _ in range(20):
		weather = WeatherSample(float(rng.uniform(0.5, 10)), float(rng.uniform(0.2, math.pi / 2)), float(rng.uniform(270, 320)), float(rng.uniform(0, 25)))
		lin = linearizeConvection(conductor, weather)
		current_sq = maxSteadyCurrentSq(conductor, weather, lin)

		assert steadyStateTemperature(current_sq, conductor, weather, lin) == pytest.approx(conductor.max_temperature, abs = 1e-6)

def test_ampacityGrowsWithWind(conductor, weather):
	fast = weather.replace(wind_speed = 6.0)
	slow_cap = maxSteadyCurrentSq(conductor, weather, linearizeConvection(conductor, weather))
	assert maxSteadyCurrentSq(conductor, fast, linearizeConvection(conductor, fast)) > slow_cap

def test_ampacityAtUnloadedEquilibrium(conductor, weather, lin):
	t_max = steadyStateTemperature(0.0, conductor, weather, lin)
	assert maxSteadyCurrentSq(conductor, weather, lin, t_max) == pytest.approx(0.0, abs = 1e-3)

def test_ampacityClamped(conductor):
	weather = WeatherSample(0.1, math.pi / 2, 370.0, 30.0)
	lin = linearizeConvection(conductor, weather, (370.0, 390.0))

	with pytest.warns(AmpacityClampedWarning):
		assert maxSteadyCurrentSq(conductor, weather, lin, 371.0) == 0.0

def test_constantTrajectoryAtEquilibrium(conductor, weather, lin):
	s1 = steadyStateTemperature(0.0, conductor, weather, lin)
	temps = simulateSchedule(s1, [0.0] * 6, weather, conductor, lin, 300.0)
	assert np.allclose(temps, s1, atol = 1e-9)

def test_scheduleMatchesRK4(conductor):
	weathers = (_weathers(conductor) * 4)[:12]
	lins = [linearizeConvection(conductor, w) for w in weathers]
	currents = np.linspace(2e5, 1.2e6, 12)

	temps = simulateSchedule(330.0, currents, weathers, conductor, lins, 300.0)

	temp = 330.0
	for t in range(12):
		temp = integrateRK4(temp, computeCoefficients(conductor, weathers[t], lins[t], currents[t]), 300.0)
		assert temps[t] == pytest.approx(temp, abs = 1e-5)

def test_scheduleLength(conductor, weather, lin):
	with pytest.raises(ScheduleLengthError):
		simulateSchedule(320.0, [0.0, 1.0], [weather], conductor, lin, 300.0)

def test_scheduleStepError(conductor, weather, lin):
	cold = LinearConvection(lin.slope, lin.intercept + 1e4, lin.fit_r2)

	with pytest.raises(ScheduleStepError) as info:
		simulateSchedule(320.0, [0.0, 0.0], weather, conductor, [lin, cold], 300.0)

	assert info.value.period == 1

def test_flowMapGradient(conductor):
	rng = np.random.default_rng(2)
	weathers = _weathers(conductor)
	lins = [linearizeConvection(conductor, w) for w in weathers]
	scale = maxSteadyCurrentSq(conductor, weathers[1], lins[1])

	for _ in range(50):
		initial_temp = float(rng.uniform(300, 350))
		currents = rng.uniform(0.2, 1.0, 3) * scale

		def final(z):
			return simulateSchedule(z[0], z[1:] * scale, weathers, conductor, lins, 300.0)[-1]

		gradient = flowMapGradient(initial_temp, currents, weathers, conductor, lins, 300.0)
		gradient[1:] *= scale

		z = np.concatenate([[initial_temp], currents / scale])
		reference = centralJacobian(final, z, 1e-4)[0]

		assert np.max(np.abs(gradient - reference)) <= 1e-5 * np.max(np.abs(reference))

def test_flowMapJacobianShape(conductor, weather, lin):
	temps, jacobian = flowMapJacobian(320.0, [4e5, 6e5], weather, conductor, lin, 300.0)
	assert jacobian.shape == (2, 3)
	assert jacobian[0, 2] == 0.0
	assert np.all(jacobian[:, 0] > 0)

def test_smoothnessBoundsLimits(conductor, weather, lin):
	bounds = smoothnessBounds(conductor, weather, lin, 300.0)
	assert bounds.hessian_op_bound > 0
	assert 0 < bounds.g_delta < 1

	assert smoothnessBounds(conductor, weather, lin, 1e-9).m_delta == pytest.approx(0.0, abs = 1e-9)

	faint = ConductorParams(conductor.resistance_per_length, conductor.mass_per_length, conductor.specific_heat, conductor.diameter, 1e-12, conductor.absorptivity)
	assert smoothnessBounds(faint, weather, lin, 300.0).hessian_op_bound < 1e-9

def test_hessianWithinBound(conductor):
	rng = np.random.default_rng(3)
	scale = 1e6

	for weather in _weathers(conductor):
		lin = linearizeConvection(conductor, weather)
		current_max = maxSteadyCurrentSq(conductor, weather, lin) / scale
		bound = smoothnessBounds(conductor, weather, lin, 300.0, current_scale = scale).hessian_op_bound

		def gradient(z):
			g = flowMapGradient(z[0], [z[1] * scale], weather, conductor, lin, 300.0, steps = 512)
			return np.array([g[0], g[1] * scale])

		for _ in range(10):
			z = np.array([rng.uniform(290, 360), rng.uniform(0.2, 1.0) * current_max])
			hessian = centralJacobian(gradient, z, 1e-3)

			assert np.linalg.norm(hessian, 2) <= bound
