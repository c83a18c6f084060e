#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .consensus import AdmmParams, SelectionMaps, ConsensusState, buildConsensus, updateSlack, nextPenalty
from .devices import RampProjector, LineThermal, TemperatureSolution, solveRampSubproblem, solveTemperatureSubproblem
from .screening import ScreenedLine, screeningTable, screenTransientLines, SCREENING_INITIAL_LIMIT, SCREENING_MARGIN
from .report import SolveReport, VerificationResult, buildReport, verifyReport, consensusResidual, configHash, METHOD_ADMM, METHOD_MONOLITHIC, STATUS_CONVERGED, STATUS_MAX_OUTER
from .admm import BilevelADMM, InnerOutcome
from .monolithic import solveMonolithic, MONOLITHIC_LIMIT
from .ui import TraceWriter, ProgressLogger
from .errors import *
