#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import pytest

from dlropf.network import buildFixture, fixtureDocument
from dlropf.network.fixtures import CONDUCTOR
from dlropf.thermal import ConductorParams, WeatherSample, linearizeConvection, solarGain

@pytest.fixture
def conductor():
	return ConductorParams(**CONDUCTOR)

@pytest.fixture
def weather(conductor):
	return WeatherSample(2.0, math.pi / 2, 300.0, solarGain(conductor, 800.0))

@pytest.fixture
def lin(conductor, weather):
	return linearizeConvection(conductor, weather)

@pytest.fixture
def case2():
	return buildFixture('case2', 'windy-cool', horizon = 2)

@pytest.fixture
def case9():
	return buildFixture('case9', 'windy-cool', horizon = 3)

@pytest.fixture
def case2_document():
	return fixtureDocument('case2', 'windy-cool', horizon = 2)
