#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class ThermalError(Exception):
	'''
	Base class for exceptions raised by the conductor thermal model.
	'''

	pass

class InvalidThermalDataError(ThermalError):
	'''
	Exception raised when a physical parameter or weather value is outside its domain.

	Parameters
	----------
	field : str
		Name of the offending field.

	value : float
		Its value.
	'''

	def __init__(self, field, value):
		super().__init__(f'invalid value for `{field}`: {value!r}')
		self.field = field
		self.value = value

class DegenerateFitError(ThermalError):
	'''
	Exception raised when every sampled convection value is identical, so no line can be fitted.

	Parameters
	----------
	fit_range : tuple
		The temperature range of the fit, in K.
	'''

	def __init__(self, fit_range):
		super().__init__(f'constant convection over {fit_range}, slope would be 0')
		self.fit_range = fit_range
		self.slope = 0.0

class NonPositiveK0Error(ThermalError):
	'''
	Exception raised when the constant heating coefficient K0 is not positive.
	The weather sample is outside the regime where the closed-form solution holds.

	Parameters
	----------
	k0 : float
		The computed coefficient, in K/s.
	'''

	def __init__(self, k0):
		super().__init__(f'K0 = {k0!r} K/s is not positive')
		self.k0 = k0

class NoConvergenceError(ThermalError):
	'''
	Exception raised when a root search does not converge.

	Parameters
	----------
	what : str
		Name of the searched quantity.

	iterations : int
		Number of iterations done.
	'''

	def __init__(self, what, iterations):
		super().__init__(f'no convergence for {what} after {iterations} iterations')
		self.what = what
		self.iterations = iterations

class OutOfBranchError(ThermalError):
	'''
	Exception raised when a temperature cannot be reached from the initial temperature.

	Parameters
	----------
	temp : float
		The requested temperature, in K.

	initial_temp : float
		The initial temperature, in K.

	s1 : float
		The steady-state temperature, in K.
	'''

	def __init__(self, temp, initial_temp, s1):
		super().__init__(f'{temp} K is not between {initial_temp} K and the equilibrium {s1} K')
		self.temp = temp
		self.initial_temp = initial_temp
		self.s1 = s1

class ScheduleLengthError(ThermalError):
	'''
	Exception raised when a current schedule and its weather sequence have different lengths.

	Parameters
	----------
	n_currents : int
		Number of currents.

	n_weathers : int
		Number of weather samples.
	'''

	def __init__(self, n_currents, n_weathers):
		super().__init__(f'{n_currents} currents for {n_weathers} weather samples')
		self.n_currents = n_currents
		self.n_weathers = n_weathers

class ScheduleStepError(ThermalError):
	'''
	Exception raised when a step of a schedule fails.

	Parameters
	----------
	period : int
		Index of the period (0-based).

	cause : ThermalError
		The original error.
	'''

	def __init__(self, period, cause):
		super().__init__(f'period {period}: {cause}')
		self.period = period
		self.cause = cause

class AmpacityClampedWarning(UserWarning):
	'''
	Warning emitted when the conductor exceeds its maximum temperature even without current.
	'''

	pass
