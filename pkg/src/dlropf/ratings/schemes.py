#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import enum
import math
from typing import Optional

import numpy as np

from .errors import *
from ..network import toPerUnitCurrentSq
from ..thermal import ThermalError, linearizeConvection, maxSteadyCurrentSq

CONSERVATIVE_WIND = 0.6
CONSERVATIVE_ANGLE = math.pi / 2
STATIC_AMBIENT = {
	'summer': 313.15,
	'winter': 293.15
}

class RatingKind(enum.Enum):
	SLR = 'slr'
	AAR = 'aar'
	DLR_SS = 'dlr-ss'
	DLR_TRANS = 'dlr-trans'

@dataclasses.dataclass(frozen = True)
class RatingScheme():
	'''
	A line rating scheme.

	Parameters
	----------
	kind : RatingKind
		The scheme.

	season : str
		`summer` or `winter`; only for the static rating, which uses it to choose the ambient temperature.
	'''

	kind: RatingKind
	season: Optional[str] = None

	def __post_init__(self):
		if self.kind is RatingKind.SLR:
			if not(self.season in STATIC_AMBIENT):
				raise SeasonError(self.kind, self.season)

		elif not(self.season is None):
			raise SeasonError(self.kind, self.season)

	@classmethod
	def fromName(cls, name, season = 'summer'):
		'''
		Scheme from its command line spelling (`slr`, `aar`, `dlr-ss`, `dlr-trans`).

		Parameters
		----------
		name : str
			Name of the scheme.

		season : str
			Season of the static rating, ignored by the other schemes.

		Raises
		------
		UnknownSchemeError
			The name is not recognized.

		Returns
		-------
		scheme : RatingScheme
			The scheme.
		'''

		try:
			kind = RatingKind(name.lower().replace('_', '-'))

		except ValueError:
			raise UnknownSchemeError(name)

		return cls(kind, season if kind is RatingKind.SLR else None)

	@property
	def name(self):
		return self.kind.value

	@property
	def transient(self):
		'''
		Whether the scheme uses the transient temperature model on screened lines.
		'''

		return self.kind is RatingKind.DLR_TRANS

	def __str__(self):
		return self.name if self.season is None else f'{self.name} ({self.season})'

def effectiveWeather(scheme, actual):
	'''
	Weather the scheme rates a line with.

	Parameters
	----------
	scheme : RatingScheme
		The scheme.

	actual : WeatherSample
		Measured weather.

	Returns
	-------
	weather : WeatherSample
		Actual weather for the dynamic ratings; conservative wind for the ambient-adjusted rating; conservative wind and seasonal ambient temperature for the static rating. The solar gain is always the actual one.
	'''

	if scheme.kind is RatingKind.AAR:
		return actual.replace(wind_speed = CONSERVATIVE_WIND, wind_angle = CONSERVATIVE_ANGLE)

	if scheme.kind is RatingKind.SLR:
		return actual.replace(wind_speed = CONSERVATIVE_WIND, wind_angle = CONSERVATIVE_ANGLE, ambient_temp = STATIC_AMBIENT[scheme.season])

	return actual

def lineConvections(case, line, scheme):
	'''
	Effective weather and convection fit of each period of a thermal line.
	The fit covers the ambient temperature up to 10 K above the conductor limit.

	Parameters
	----------
	case : NetworkCase
		The case.

	line : int
		Branch index of a thermal line.

	scheme : RatingScheme
		The scheme.

	Raises
	------
	CapComputationError
		A fit failed.

	Returns
	-------
	weathers : list
		Effective weather of each period.

	lins : list
		Convection fit of each period.
	'''

	branch = case.branches[line]
	params = branch.thermal.conductor
	weathers = [effectiveWeather(scheme, sample) for sample in case.weather[branch.id]]
	lins = []

	for t, weather in enumerate(weathers):
		try:
			lins.append(linearizeConvection(params, weather, (weather.ambient_temp, params.max_temperature + 10)))

		except ThermalError as e:
			raise CapComputationError(branch.id, t, e)

	return weathers, lins

def currentCaps(case, scheme, *, lines = None):
	'''
	Steady-state current caps of thermal lines under the scheme's weather.

	Parameters
	----------
	case : NetworkCase
		The case.

	scheme : RatingScheme
		The scheme.

	lines : list
		Branch indices of the lines to rate. Default to every thermal line.

	Raises
	------
	CapComputationError
		The ampacity of a line cannot be computed for a period.

	Returns
	-------
	caps : numpy.ndarray
		Squared current caps in p.u.², of shape (lines, periods).

	lines : list
		The branch index of each row.
	'''

	lines = case.thermalLines() if lines is None else list(lines)
	caps = np.zeros((len(lines), case.horizon))

	for row, line in enumerate(lines):
		branch = case.branches[line]
		weathers, lins = lineConvections(case, line, scheme)

		for t, (weather, lin) in enumerate(zip(weathers, lins)):
			try:
				current_sq = maxSteadyCurrentSq(branch.thermal.conductor, weather, lin)

			except ThermalError as e:
				raise CapComputationError(branch.id, t, e)

			caps[row, t] = toPerUnitCurrentSq(current_sq, branch)

	return caps, lines

def branchCaps(case, scheme, *, exclude = ()):
	'''
	Caps of every branch and period, for the AC constraints.

	Parameters
	----------
	case : NetworkCase
		The case.

	scheme : RatingScheme
		The scheme.

	exclude : list
		Branch indices left uncapped (screened lines of the transient scheme).

	Returns
	-------
	caps : numpy.ndarray
		Array of shape (branches, periods), NaN for branches without thermal data or excluded.
	'''

	caps = np.full((len(case.branches), case.horizon), np.nan)
	lines = [line for line in case.thermalLines() if not(line in exclude)]

	if lines:
		values, _ = currentCaps(case, scheme, lines = lines)
		caps[lines] = values

	return caps
