#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
import warnings

from scipy import optimize

from .conductor import ThermalCoefficients, QuarticRoots
from .errors import *

MAX_ITERATIONS = 200
STEP_TOLERANCE = 1e-9

def computeCoefficients(params, weather, lin, current_sq = 0.0, *, check = True):
	'''
	Coefficients of the heat equation under a linearized convection.

	Parameters
	----------
	params : ConductorParams
		The conductor.

	weather : WeatherSample
		Weather conditions.

	lin : LinearConvection
		Affine convection fit for these conditions.

	current_sq : float
		Squared current, in A².

	check : bool
		`True` to reject a non-positive K0.

	Raises
	------
	NonPositiveK0Error
		K0 is not positive and `check` is set.

	Returns
	-------
	coeffs : ThermalCoefficients
		The coefficients.
	'''

	if current_sq < 0:
		raise InvalidThermalDataError('current_sq', current_sq)

	heat_capacity = params.heat_capacity
	radiation = params.radiation_factor

	k0_prime = (radiation * weather.ambient_temp**4 + weather.solar_gain - lin.intercept) / heat_capacity
	r_prime = params.resistance_per_length / heat_capacity

	coeffs = ThermalCoefficients(
		k0_prime = k0_prime,
		k0 = k0_prime + r_prime * current_sq,
		k1 = lin.slope / heat_capacity,
		k4 = radiation / heat_capacity,
		r_prime = r_prime
	)

	if check and not(coeffs.k0 > 0):
		raise NonPositiveK0Error(coeffs.k0)

	return coeffs

def _positiveRoot(f, df, high, what):
	'''
	Root of an increasing-from-negative function on [0, high], polished with Newton steps.
	'''

	try:
		root, info = optimize.brentq(f, 0.0, high, maxiter = MAX_ITERATIONS, full_output = True, disp = False)

	except ValueError:
		raise NoConvergenceError(what, 0)

	if not(info.converged):
		raise NoConvergenceError(what, info.iterations)

	for _ in range(3):
		slope = df(root)
		if slope == 0:
			break

		candidate = root - f(root) / slope
		if not(0 < candidate <= high) or abs(f(candidate)) >= abs(f(root)):
			break

		root = candidate

	return root

def quarticRoots(coeffs):
	'''
	Real roots of the quartic P(T) = T⁴ + (K1/K4)·T − K0/K4.
	P increases on [0, ∞) from −K0/K4, so the positive root is bracketed; the negative one is found the same way on P(−s).

	Parameters
	----------
	coeffs : ThermalCoefficients
		Coefficients with K4 > 0 and K0 > 0.

	Raises
	------
	NonPositiveK0Error
		K0 is not positive.

	NoConvergenceError
		A root search failed.

	Returns
	-------
	roots : QuarticRoots
		Both roots and the derived scalars.
	'''

	if not(coeffs.k4 > 0):
		raise InvalidThermalDataError('k4', coeffs.k4)

	if not(coeffs.k0 > 0):
		raise NonPositiveK0Error(coeffs.k0)

	b = coeffs.k1 / coeffs.k4
	c = coeffs.k0 / coeffs.k4

	s1 = _positiveRoot(
		lambda t: t**4 + b * t - c,
		lambda t: 4 * t**3 + b,
		c**0.25 + 1,
		's1'
	)

	# s⁴ ≥ b·s + c as soon as s ≥ max((2b)^(1/3), (2c)^(1/4))
	s2 = _positiveRoot(
		lambda s: s**4 - b * s - c,
		lambda s: 4 * s**3 - b,
		max((2 * max(b, 0.0))**(1 / 3), (2 * c)**0.25) + 1,
		's2'
	)

	return QuarticRoots.fromRoots(s1, s2)

def _tau(temp, initial_temp, roots, k4):
	'''
	Closed-form time to go from `initial_temp` to `temp`, without branch checks.
	'''

	s1, s2, p, q = roots.s1, roots.s2, roots.p, roots.q
	g1, g2 = roots.g1, roots.g2

	if temp == initial_temp:
		return 0.0

	if temp == s1:
		return math.inf

	sqrt_g3 = math.sqrt(roots.g3)
	g12 = g1 * g2

	quadratic = math.log((temp**2 - p * temp + q) / (initial_temp**2 - p * initial_temp + q))
	near = math.log(abs(temp - s1) / abs(initial_temp - s1))
	far = math.log((temp + s2) / (initial_temp + s2))
	arc = math.atan((2 * temp - p) / sqrt_g3) - math.atan((2 * initial_temp - p) / sqrt_g3)

	return ((s2 - s1) / g12 * quadratic - (near / g1 - far / g2) / (s1 + s2) + 4 * s1 * s2 / (g12 * sqrt_g3) * arc) / k4

def tauOfTemperature(temp, initial_temp, roots, k4):
	'''
	Time needed by the conductor to go from `initial_temp` to `temp` under constant current and weather.

	Parameters
	----------
	temp : float
		Target temperature, in K, between the initial temperature and s1 (s1 excluded).

	initial_temp : float
		Initial temperature, in K.

	roots : QuarticRoots
		Roots of the quartic for the current and weather.

	k4 : float
		Radiative coefficient K4.

	Raises
	------
	OutOfBranchError
		The temperature is not reachable from the initial one.

	Returns
	-------
	tau : float
		Elapsed time, in s.
	'''

	if temp == initial_temp:
		return 0.0

	low, high = min(initial_temp, roots.s1), max(initial_temp, roots.s1)
	if not(low <= temp <= high) or temp == roots.s1:
		raise OutOfBranchError(temp, initial_temp, roots.s1)

	return _tau(temp, initial_temp, roots, k4)

def advanceTemperature(initial_temp, roots, k4, dt):
	'''
	Temperature after `dt` seconds, by bisection on the closed-form elapsed time.

	Parameters
	----------
	initial_temp : float
		Initial temperature, in K.

	roots : QuarticRoots
		Roots of the quartic for the current and weather.

	k4 : float
		Radiative coefficient K4.

	dt : float
		Duration, in s.

	Raises
	------
	NoConvergenceError
		The bisection did not converge.

	Returns
	-------
	temp : float
		Final temperature, in K.
	'''

	s1 = roots.s1

	if dt == 0:
		return initial_temp

	if abs(initial_temp - s1) <= STEP_TOLERANCE:
		return s1

	try:
		temp, info = optimize.bisect(lambda t: _tau(t, initial_temp, roots, k4) - dt, initial_temp, s1, xtol = STEP_TOLERANCE, maxiter = MAX_ITERATIONS, full_output = True, disp = False)

	except (ValueError, RuntimeError):
		raise NoConvergenceError('temperature step', MAX_ITERATIONS)

	if not(info.converged):
		raise NoConvergenceError('temperature step', info.iterations)

	return temp

def stepTemperature(initial_temp, current_sq, params, weather, lin, dt):
	'''
	Conductor temperature at the end of a period with constant current and weather.

	Parameters
	----------
	initial_temp : float
		Temperature at the start of the period, in K.

	current_sq : float
		Squared current, in A².

	params : ConductorParams
		The conductor.

	weather : WeatherSample
		Weather during the period.

	lin : LinearConvection
		Affine convection fit for this weather.

	dt : float
		Length of the period, in s.

	Raises
	------
	NonPositiveK0Error
		The weather is outside the model's regime.

	Returns
	-------
	temp : float
		Temperature at the end of the period, in K.
	'''

	if dt < 0:
		raise InvalidThermalDataError('dt', dt)

	if not(initial_temp > 0):
		raise InvalidThermalDataError('initial_temp', initial_temp)

	coeffs = computeCoefficients(params, weather, lin, current_sq)
	return advanceTemperature(initial_temp, quarticRoots(coeffs), coeffs.k4, dt)

def steadyStateTemperature(current_sq, params, weather, lin):
	'''
	Equilibrium temperature s1 under constant current and weather.

	Returns
	-------
	temp : float
		The equilibrium, in K.
	'''

	return quarticRoots(computeCoefficients(params, weather, lin, current_sq)).s1

def maxSteadyCurrentSq(params, weather, lin, t_max = None):
	'''
	Largest squared current whose equilibrium temperature does not exceed `t_max`.
	Clamped at 0, with an `AmpacityClampedWarning`, when the unloaded line is already too hot.

	Parameters
	----------
	params : ConductorParams
		The conductor.

	weather : WeatherSample
		Weather conditions.

	lin : LinearConvection
		Affine convection fit for this weather.

	t_max : float
		Temperature limit, in K. Default to the conductor's maximum temperature.

	Returns
	-------
	current_sq : float
		The steady-state ampacity squared, in A².
	'''

	if t_max is None:
		t_max = params.max_temperature

	if not(t_max > weather.ambient_temp):
		raise InvalidThermalDataError('t_max', t_max)

	coeffs = computeCoefficients(params, weather, lin, check = False)
	current_sq = (coeffs.k4 * t_max**4 + coeffs.k1 * t_max - coeffs.k0_prime) / coeffs.r_prime

	if current_sq < 0:
		warnings.warn(AmpacityClampedWarning(f'conductor above {t_max} K without current, ampacity clamped to 0'), stacklevel = 2)
		current_sq = 0.0

	return current_sq
