#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from dlropf.admm import solveMonolithic
from dlropf.ratings import *
from dlropf.thermal import WeatherSample

def _constantWeather(case, sample):
	return case.withWeather({case.branches[line].id: [sample] * case.horizon for line in case.thermalLines()})

def test_fromName():
	assert RatingScheme.fromName('dlr-ss').kind is RatingKind.DLR_SS
	assert RatingScheme.fromName('DLR_TRANS').transient
	assert RatingScheme.fromName('slr', 'winter').season == 'winter'
	assert RatingScheme.fromName('aar', 'winter').season is None
	assert str(RatingScheme.fromName('slr')) == 'slr (summer)'

	with pytest.raises(UnknownSchemeError):
		RatingScheme.fromName('emergency')

def test_seasonRequiredForStaticRating():
	with pytest.raises(SeasonError):
		RatingScheme(RatingKind.SLR)

	with pytest.raises(SeasonError):
		RatingScheme(RatingKind.SLR, 'spring')

	with pytest.raises(SeasonError):
		RatingScheme(RatingKind.AAR, 'summer')

def test_effectiveWeather():
	actual = WeatherSample(8.0, 0.2, 300.0, 12.0)

	assert effectiveWeather(RatingScheme(RatingKind.DLR_SS), actual) == actual
	assert effectiveWeather(RatingScheme(RatingKind.DLR_TRANS), actual) == actual
	assert effectiveWeather(RatingScheme(RatingKind.AAR), actual) == WeatherSample(0.6, math.pi / 2, 300.0, 12.0)
	assert effectiveWeather(RatingScheme(RatingKind.SLR, 'summer'), actual) == WeatherSample(0.6, math.pi / 2, 313.15, 12.0)
	assert effectiveWeather(RatingScheme(RatingKind.SLR, 'winter'), actual).ambient_temp == 293.15

def test_capsOrdering(case9):
	slr, lines = currentCaps(case9, RatingScheme(RatingKind.SLR, 'summer'))
	aar, _ = currentCaps(case9, RatingScheme(RatingKind.AAR))
	dlr, _ = currentCaps(case9, RatingScheme(RatingKind.DLR_SS))

	assert lines == case9.thermalLines()
	assert slr.shape == (len(lines), case9.horizon)
	assert np.all(slr <= aar)
	assert np.all(aar <= dlr)

def test_constantWeatherConstantCaps(case9):
	case = _constantWeather(case9, WeatherSample(3.0, 1.0, 295.0, 15.0))
	caps, _ = currentCaps(case, RatingScheme(RatingKind.DLR_SS))
	assert np.allclose(caps, caps[:, :1])

def test_ambientAdjustedIgnoresWind(case9):
	calm = _constantWeather(case9, WeatherSample(0.5, 1.0, 295.0, 15.0))
	windy = _constantWeather(case9, WeatherSample(9.0, 0.3, 295.0, 15.0))
	scheme = RatingScheme(RatingKind.AAR)

	assert np.array_equal(currentCaps(calm, scheme)[0], currentCaps(windy, scheme)[0])

def test_lineConvections(case9):
	line = case9.thermalLines()[0]
	weathers, lins = lineConvections(case9, line, RatingScheme(RatingKind.AAR))

	assert len(weathers) == len(lins) == case9.horizon
	assert all(weather.wind_speed == CONSERVATIVE_WIND for weather in weathers)
	assert all(lin.fit_r2 >= 0.99 for lin in lins)

def test_capFailure(case2):
	case = _constantWeather(case2, WeatherSample(1.0, 1.0, 380.0, 0.0))

	with pytest.raises(CapComputationError):
		currentCaps(case, RatingScheme(RatingKind.DLR_SS))

def test_branchCaps(case9):
	scheme = RatingScheme(RatingKind.DLR_SS)
	screened = case9.branchIndex('5-6')
	caps = branchCaps(case9, scheme, exclude = [screened])

	assert caps.shape == (len(case9.branches), case9.horizon)
	assert np.all(np.isnan(caps[case9.branchIndex('1-4')]))
	assert np.all(np.isnan(caps[screened]))

	rated, lines = currentCaps(case9, scheme)
	row = lines.index(case9.branchIndex('4-5'))
	assert np.array_equal(caps[case9.branchIndex('4-5')], rated[row])

@pytest.mark.slow
def test_costOrdering(case9):
	objectives = [
		solveMonolithic(case9, scheme).objective
		for scheme in [RatingScheme(RatingKind.SLR, 'summer'), RatingScheme(RatingKind.AAR), RatingScheme(RatingKind.DLR_SS)]
	]

	tol = 1e-6 * objectives[0]
	assert objectives[0] >= objectives[1] - tol
	assert objectives[1] >= objectives[2] - tol
