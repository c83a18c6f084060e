#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .problem import NlpProblem, NlpOptions, NlpResult, NlpStatus
from .solver import InteriorPointSolver, minimize
from .derivatives import checkDerivatives, centralGradient, centralJacobian
from .errors import *
