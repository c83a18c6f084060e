#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import math

from .errors import *

STEFAN_BOLTZMANN = 5.6704e-8
ZERO_CELSIUS = 273.15
DEFAULT_MAX_TEMPERATURE = 373.15

@dataclasses.dataclass(frozen = True)
class ConductorParams():
	'''
	Physical parameters of a conductor, per unit length.

	Parameters
	----------
	resistance_per_length : float
		Resistance at the maximum temperature, in Ω/m.

	mass_per_length : float
		Mass, in kg/m.

	specific_heat : float
		Specific heat capacity, in J/(kg·K).

	diameter : float
		Outer diameter, in m.

	emissivity : float
		Radiative emissivity, in (0, 1].

	absorptivity : float
		Solar absorptivity, in (0, 1].

	max_temperature : float
		Maximum allowed temperature, in K.
	'''

	resistance_per_length: float
	mass_per_length: float
	specific_heat: float
	diameter: float
	emissivity: float
	absorptivity: float
	max_temperature: float = DEFAULT_MAX_TEMPERATURE

	def __post_init__(self):
		for field in dataclasses.fields(self):
			value = getattr(self, field.name)
			if not(math.isfinite(value)) or value <= 0:
				raise InvalidThermalDataError(field.name, value)

		for field in ['emissivity', 'absorptivity']:
			if getattr(self, field) > 1:
				raise InvalidThermalDataError(field, getattr(self, field))

		if self.max_temperature <= ZERO_CELSIUS:
			raise InvalidThermalDataError('max_temperature', self.max_temperature)

	@property
	def heat_capacity(self):
		'''
		Heat capacity per unit length m·c_p, in J/(m·K).
		'''

		return self.mass_per_length * self.specific_heat

	@property
	def radiation_factor(self):
		'''
		Radiated power per unit length and per K⁴, π·D·ε·σ.
		'''

		return math.pi * self.diameter * self.emissivity * STEFAN_BOLTZMANN

@dataclasses.dataclass(frozen = True)
class WeatherSample():
	'''
	Weather seen by a line during one period.

	Parameters
	----------
	wind_speed : float
		Wind speed, in m/s.

	wind_angle : float
		Angle between the wind and the line axis, in rad, within [0, π/2].

	ambient_temp : float
		Ambient temperature, in K.

	solar_gain : float
		Absorbed solar heat per unit length, in W/m.
	'''

	wind_speed: float
	wind_angle: float
	ambient_temp: float
	solar_gain: float

	def __post_init__(self):
		if not(self.wind_speed >= 0):
			raise InvalidThermalDataError('wind_speed', self.wind_speed)

		if not(0 <= self.wind_angle <= math.pi / 2 + 1e-12):
			raise InvalidThermalDataError('wind_angle', self.wind_angle)

		if not(self.ambient_temp > 0):
			raise InvalidThermalDataError('ambient_temp', self.ambient_temp)

		if not(self.solar_gain >= 0):
			raise InvalidThermalDataError('solar_gain', self.solar_gain)

	def replace(self, **changes):
		'''
		Copy of the sample with some fields changed.
		'''

		return dataclasses.replace(self, **changes)

@dataclasses.dataclass(frozen = True)
class LinearConvection():
	'''
	Affine approximation q_c(T) ≈ slope·T + intercept of the convective heat loss.
	'''

	slope: float
	intercept: float
	fit_r2: float

	def __call__(self, temp):
		return self.slope * temp + self.intercept

@dataclasses.dataclass(frozen = True)
class ThermalCoefficients():
	'''
	Coefficients of the heat equation dT/dt = −K4·T⁴ − K1·T + K0, with K0 = K0' + r'·ι.

	Parameters
	----------
	k0_prime : float
		Current-independent heating, in K/s.

	k0 : float
		Total constant heating at the given current, in K/s.

	k1 : float
		Linear cooling, in 1/s.

	k4 : float
		Radiative cooling, in 1/(s·K³).

	r_prime : float
		Joule heating per squared ampere, in K/(s·A²).
	'''

	k0_prime: float
	k0: float
	k1: float
	k4: float
	r_prime: float

	def withCurrent(self, current_sq):
		'''
		Coefficients for another squared current.

		Parameters
		----------
		current_sq : float
			Squared current, in A².

		Returns
		-------
		coeffs : ThermalCoefficients
			The updated coefficients.
		'''

		return dataclasses.replace(self, k0 = self.k0_prime + self.r_prime * current_sq)

	def rate(self, temp):
		'''
		Right-hand side of the heat equation, in K/s.
		'''

		return -self.k4 * temp**4 - self.k1 * temp + self.k0

	def rateDerivative(self, temp):
		'''
		Derivative of the right-hand side with respect to the temperature, in 1/s.
		'''

		return -4 * self.k4 * temp**3 - self.k1

@dataclasses.dataclass(frozen = True)
class QuarticRoots():
	'''
	Real roots of P(T) = T⁴ + (K1/K4)·T − K0/K4 = (T − s1)(T + s2)(T² − p·T + q), and the derived scalars.
	'''

	s1: float
	s2: float
	p: float
	q: float
	g1: float
	g2: float
	g3: float

	@classmethod
	def fromRoots(cls, s1, s2):
		'''
		Build the record from the two real roots.

		Parameters
		----------
		s1 : float
			Positive root, in K.

		s2 : float
			Magnitude of the negative root, in K.

		Returns
		-------
		roots : QuarticRoots
			The full record.
		'''

		return cls(
			s1 = s1,
			s2 = s2,
			p = s2 - s1,
			q = s1**2 - s1 * s2 + s2**2,
			g1 = 3 * s1**2 - 2 * s1 * s2 + s2**2,
			g2 = s1**2 - 2 * s1 * s2 + 3 * s2**2,
			g3 = 3 * s1**2 - 2 * s1 * s2 + 3 * s2**2
		)

@dataclasses.dataclass(frozen = True)
class SmoothnessBounds():
	'''
	Constants bounding the curvature of the temperature flow maps.
	'''

	beta: float
	kappa_lower: float
	g_delta: float
	m_delta: float
	hessian_op_bound: float

def solarGain(params, irradiance):
	'''
	Solar heat absorbed per unit length.

	Parameters
	----------
	params : ConductorParams
		The conductor.

	irradiance : float
		Irradiance on the projected area, in W/m².

	Returns
	-------
	gain : float
		Absorbed power, in W/m.
	'''

	if irradiance < 0:
		raise InvalidThermalDataError('irradiance', irradiance)

	return params.absorptivity * irradiance * params.diameter
