#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .schemes import RatingKind, RatingScheme, effectiveWeather, lineConvections, currentCaps, branchCaps, CONSERVATIVE_WIND, CONSERVATIVE_ANGLE, STATIC_AMBIENT
from .errors import *
