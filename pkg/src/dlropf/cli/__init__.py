#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .config import RunConfig
from .commands import cmdSolve, cmdCompare, cmdScreen, cmdThermalSim, cmdVerify, cmdFixture, thermalTrajectory, EXIT_OK, EXIT_ERROR, EXIT_NOT_CONVERGED
from .main import main, buildParser
from .errors import *
