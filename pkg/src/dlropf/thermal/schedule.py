#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np

from .conductor import SmoothnessBounds, WeatherSample, LinearConvection
from .dynamics import computeCoefficients, stepTemperature
from .errors import *

RK4_STEPS = 2048
SENSITIVITY_STEPS = 256

def _perPeriod(values, n, kind):
	'''
	Broadcast a single record to `n` periods, or check the length of a sequence.
	'''

	if isinstance(values, kind):
		return [values] * n

	values = list(values)
	if len(values) != n:
		raise ScheduleLengthError(n, len(values))

	return values

def simulateSchedule(initial_temp, currents, weathers, params, lins, dt):
	'''
	Temperatures at the end of each period of a piecewise constant current schedule.

	Parameters
	----------
	initial_temp : float
		Temperature before the first period, in K.

	currents : list
		Squared current of each period, in A².

	weathers : list|WeatherSample
		Weather of each period, or one sample for all periods.

	params : ConductorParams
		The conductor.

	lins : list|LinearConvection
		Convection fit of each period, or one fit for all periods.

	dt : float
		Length of a period, in s.

	Raises
	------
	ScheduleLengthError
		The sequences have different lengths.

	ScheduleStepError
		A step failed; the error carries the period index.

	Returns
	-------
	temps : numpy.ndarray
		End-of-period temperatures, in K.
	'''

	currents = np.asarray(currents, dtype = float)
	n = len(currents)
	weathers = _perPeriod(weathers, n, WeatherSample)
	lins = _perPeriod(lins, n, LinearConvection)

	temps = np.empty(n)
	temp = initial_temp

	for t in range(n):
		try:
			temp = stepTemperature(temp, currents[t], params, weathers[t], lins[t], dt)

		except ThermalError as e:
			raise ScheduleStepError(t, e)

		temps[t] = temp

	return temps

def _rk4(starts, k0, k1, k4, r_prime, dt, steps):
	'''
	Vectorized RK4 on the augmented state (T, ∂T/∂T0, ∂T/∂ι), one column per independent period.
	'''

	def rhs(temp, d_initial, d_current):
		slope = -4 * k4 * temp**3 - k1
		return -k4 * temp**4 - k1 * temp + k0, slope * d_initial, slope * d_current + r_prime

	temp = np.array(starts, dtype = float)
	d_initial = np.ones_like(temp)
	d_current = np.zeros_like(temp)
	h = dt / steps

	for _ in range(steps):
		a = rhs(temp, d_initial, d_current)
		b = rhs(temp + h / 2 * a[0], d_initial + h / 2 * a[1], d_current + h / 2 * a[2])
		c = rhs(temp + h / 2 * b[0], d_initial + h / 2 * b[1], d_current + h / 2 * b[2])
		d = rhs(temp + h * c[0], d_initial + h * c[1], d_current + h * c[2])

		temp = temp + h / 6 * (a[0] + 2 * b[0] + 2 * c[0] + d[0])
		d_initial = d_initial + h / 6 * (a[1] + 2 * b[1] + 2 * c[1] + d[1])
		d_current = d_current + h / 6 * (a[2] + 2 * b[2] + 2 * c[2] + d[2])

	return temp, d_initial, d_current

def integrateRK4(initial_temp, coeffs, dt, *, steps = RK4_STEPS, sensitivities = False):
	'''
	Fixed-step fourth order Runge-Kutta integration of the heat equation.
	With `sensitivities`, the derivatives of the final temperature with respect to the initial temperature and to the squared current are integrated alongside.

	Parameters
	----------
	initial_temp : float
		Initial temperature, in K.

	coeffs : ThermalCoefficients
		Coefficients at the period's current.

	dt : float
		Duration, in s.

	steps : int
		Number of steps.

	sensitivities : bool
		`True` to also return the sensitivities.

	Returns
	-------
	temp : float
		Final temperature, in K.

	d_initial : float
		∂T/∂T0 (only with `sensitivities`).

	d_current : float
		∂T/∂ι, in K/A² (only with `sensitivities`).
	'''

	temp, d_initial, d_current = _rk4([initial_temp], coeffs.k0, coeffs.k1, coeffs.k4, coeffs.r_prime, dt, steps)

	if sensitivities:
		return float(temp[0]), float(d_initial[0]), float(d_current[0])

	return float(temp[0])

def flowMapJacobian(initial_temp, currents, weathers, params, lins, dt, *, steps = SENSITIVITY_STEPS):
	'''
	Gradients of every end-of-period temperature with respect to the initial temperature and the currents.
	Single-step Jacobians come from the sensitivity equation, integrated for all periods at once from the closed-form start temperatures, then chained period by period.

	Parameters
	----------
	initial_temp : float
		Temperature before the first period, in K.

	currents : list
		Squared current of each period, in A².

	weathers : list|WeatherSample
		Weather of each period.

	params : ConductorParams
		The conductor.

	lins : list|LinearConvection
		Convection fit of each period.

	dt : float
		Length of a period, in s.

	steps : int
		Number of RK4 steps per period.

	Returns
	-------
	temps : numpy.ndarray
		End-of-period temperatures, in K.

	jacobian : numpy.ndarray
		Matrix of shape (M, M + 1). Row t holds the gradient of the temperature after period t with respect to (T0, ι_1, …, ι_M).
	'''

	currents = np.asarray(currents, dtype = float)
	n = len(currents)
	weathers = _perPeriod(weathers, n, WeatherSample)
	lins = _perPeriod(lins, n, LinearConvection)

	if n == 0:
		return np.empty(0), np.empty((0, 1))

	temps = simulateSchedule(initial_temp, currents, weathers, params, lins, dt)
	coeffs = [computeCoefficients(params, weathers[t], lins[t], currents[t]) for t in range(n)]
	starts = np.concatenate([[initial_temp], temps[:-1]])

	_, d_initial, d_current = _rk4(
		starts,
		np.array([c.k0 for c in coeffs]),
		np.array([c.k1 for c in coeffs]),
		np.array([c.k4 for c in coeffs]),
		np.array([c.r_prime for c in coeffs]),
		dt, steps
	)

	jacobian = np.zeros((n, n + 1))
	gradient = np.zeros(n + 1)
	gradient[0] = 1.0

	for t in range(n):
		gradient = d_initial[t] * gradient
		gradient[t + 1] += d_current[t]
		jacobian[t] = gradient

	return temps, jacobian

def flowMapGradient(initial_temp, currents, weathers, params, lins, dt, *, steps = SENSITIVITY_STEPS):
	'''
	Gradient of the final temperature with respect to (T0, ι_1, …, ι_M).

	Returns
	-------
	gradient : numpy.ndarray
		The gradient, of length M + 1.
	'''

	return flowMapJacobian(initial_temp, currents, weathers, params, lins, dt, steps = steps)[1][-1]

def smoothnessBounds(params, weather, lin, dt, t_max = None, *, current_scale = 1.0):
	'''
	Curvature constants of the flow maps below the temperature limit.

	Parameters
	----------
	params : ConductorParams
		The conductor.

	weather : WeatherSample
		Weather conditions.

	lin : LinearConvection
		Affine convection fit.

	dt : float
		Length of a period, in s.

	t_max : float
		Temperature limit, in K. Default to the conductor's maximum temperature.

	current_scale : float
		Squared amperes per unit of the current variable (1e6 for (kA)²).

	Returns
	-------
	bounds : SmoothnessBounds
		The constants.
	'''

	if not(dt > 0):
		raise InvalidThermalDataError('dt', dt)

	if t_max is None:
		t_max = params.max_temperature

	coeffs = computeCoefficients(params, weather, lin, check = False)
	if not(coeffs.k1 > 0):
		raise InvalidThermalDataError('k1', coeffs.k1)

	r_prime = coeffs.r_prime * current_scale

	beta = 12 * coeffs.k4 * t_max**2
	kappa_lower = coeffs.k1 + 4 * coeffs.k4 * t_max**3
	g_delta = math.exp(-coeffs.k1 * dt)
	m_delta = beta / kappa_lower * (1 + r_prime**2 / coeffs.k1**2) * (1 - math.exp(-kappa_lower * dt))

	return SmoothnessBounds(
		beta = beta,
		kappa_lower = kappa_lower,
		g_delta = g_delta,
		m_delta = m_delta,
		hessian_op_bound = m_delta + m_delta * (1 + r_prime / coeffs.k1)**2 / (1 - g_delta)
	)
