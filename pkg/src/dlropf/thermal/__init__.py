#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .conductor import ConductorParams, WeatherSample, LinearConvection, ThermalCoefficients, QuarticRoots, SmoothnessBounds, solarGain, STEFAN_BOLTZMANN, ZERO_CELSIUS, DEFAULT_MAX_TEMPERATURE
from .convection import exactConvection, linearizeConvection, registerConvectionProvider, convectionProvider
from .dynamics import computeCoefficients, quarticRoots, tauOfTemperature, advanceTemperature, stepTemperature, steadyStateTemperature, maxSteadyCurrentSq
from .schedule import simulateSchedule, integrateRK4, flowMapJacobian, flowMapGradient, smoothnessBounds
from .errors import *
