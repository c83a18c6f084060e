#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
import sys

import numpy as np
from scipy import stats

from .conductor import LinearConvection, ZERO_CELSIUS
from .errors import *
from ..utils import FCollection

MIN_WIND_SPEED = 0.1
MIN_FIT_SAMPLES = 32

def convection_ieee738(params, weather, temp, *, elevation = 0.0):
	'''
	Forced convection heat loss, IEEE 738 formulas in SI units.
	The larger of the low and high Reynolds number correlations is used.

	Parameters
	----------
	params : ConductorParams
		The conductor.

	weather : WeatherSample
		Weather conditions.

	temp : float|numpy.ndarray
		Conductor temperature, in K.

	elevation : float
		Elevation of the line above sea level, in m.

	Returns
	-------
	loss : float|numpy.ndarray
		Convective loss, in W/m. Negative when the conductor is colder than the air.
	'''

	temp = np.asarray(temp, dtype = float)
	film = (temp + weather.ambient_temp) / 2 - ZERO_CELSIUS

	density = (1.293 - 1.525e-4 * elevation + 6.379e-9 * elevation**2) / (1 + 0.00367 * film)
	viscosity = 1.458e-6 * (film + 273)**1.5 / (film + 383.4)
	conductivity = 2.424e-2 + 7.477e-5 * film - 4.407e-9 * film**2

	wind = max(weather.wind_speed, MIN_WIND_SPEED)
	reynolds = params.diameter * density * wind / viscosity

	phi = weather.wind_angle
	k_angle = 1.194 - math.cos(phi) + 0.194 * math.cos(2 * phi) + 0.368 * math.sin(2 * phi)

	nusselt = np.maximum(1.01 + 1.35 * reynolds**0.52, 0.754 * reynolds**0.6)
	loss = k_angle * nusselt * conductivity * (temp - weather.ambient_temp)

	return loss if loss.ndim else float(loss)

_providers = FCollection(filter_regex = r'^convection_(?P<name>[A-Za-z0-9_]+)$')
_providers.loadFromModule(sys.modules[__name__])

def registerConvectionProvider(name, f):
	'''
	Make a convection formula selectable by name.

	Parameters
	----------
	name : str
		Name of the provider.

	f : callable
		Function `(params, weather, temp) -> W/m`.
	'''

	_providers.set(name, f)

def convectionProvider(provider):
	'''
	Resolve a provider given by name or as a callable.

	Parameters
	----------
	provider : str|callable
		Name of a registered provider, or the function itself.

	Raises
	------
	FCollectionFunctionNotFoundError
		No provider is registered under this name.

	Returns
	-------
	f : callable
		The provider.
	'''

	if callable(provider):
		return provider

	return _providers.get(provider)

def exactConvection(params, weather, temp, *, provider = 'ieee738'):
	'''
	Convective heat loss of a conductor at a given temperature.

	Parameters
	----------
	params : ConductorParams
		The conductor.

	weather : WeatherSample
		Weather conditions.

	temp : float
		Conductor temperature, in K. Must not be lower than the ambient temperature minus 50 K.

	provider : str|callable
		Convection formula.

	Returns
	-------
	loss : float
		Convective loss, in W/m.
	'''

	if temp < weather.ambient_temp - 50:
		raise InvalidThermalDataError('temp', temp)

	return convectionProvider(provider)(params, weather, temp)

def linearizeConvection(params, weather, fit_range = None, *, provider = 'ieee738', samples = 64):
	'''
	Least-squares affine fit of the convective loss over a temperature range.

	Parameters
	----------
	params : ConductorParams
		The conductor.

	weather : WeatherSample
		Weather conditions.

	fit_range : tuple
		Temperature range `(low, high)`, in K. Default to the ambient temperature up to the maximum temperature plus 10 K.

	provider : str|callable
		Convection formula.

	samples : int
		Number of uniformly spaced temperatures, at least 32.

	Raises
	------
	DegenerateFitError
		All sampled losses are identical.

	Returns
	-------
	lin : LinearConvection
		Slope, intercept and coefficient of determination.
	'''

	if fit_range is None:
		fit_range = (weather.ambient_temp, params.max_temperature + 10)

	low, high = fit_range
	if not(high > low):
		raise InvalidThermalDataError('fit_range', fit_range)

	f = convectionProvider(provider)
	temps = np.linspace(low, high, max(samples, MIN_FIT_SAMPLES))
	losses = np.array([f(params, weather, t) for t in temps], dtype = float)

	if np.ptp(losses) == 0:
		raise DegenerateFitError(tuple(fit_range))

	fit = stats.linregress(temps, losses)
	r2 = min(max(fit.rvalue**2, 0.0), 1.0)

	return LinearConvection(slope = float(fit.slope), intercept = float(fit.intercept), fit_r2 = float(r2))
