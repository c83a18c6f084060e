#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .case import Bus, Branch, Generator, ThermalData, NetworkCase, toPhysicalCurrentSq, toPerUnitCurrentSq
from .loader import loadCase, caseFromDict, dumpCase, writeCase, readWeatherCsv
from .fixtures import buildFixture, fixtureDocument, FIXTURES, REGIMES
from .errors import *
