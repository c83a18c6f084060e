#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .layout import AcLayout, AcPeriodVars
from .residuals import AcModel, AcResiduals, acResiduals, angleResidual, residualDump, EQUALITY_FAMILIES, INEQUALITY_FAMILIES
from .subproblem import AcSubproblemSpec, AcSolution, solveAcSubproblem
from .errors import *
