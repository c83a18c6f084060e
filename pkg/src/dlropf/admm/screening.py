#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import logging

import numpy as np

from .devices import LineThermal, AMPERES_SQ_PER_KA_SQ
from ..acopf import AcModel, AcSubproblemSpec, solveAcSubproblem
from ..ratings import RatingScheme, RatingKind, branchCaps
from ..thermal import steadyStateTemperature

logger = logging.getLogger(__name__)

SCREENING_INITIAL_LIMIT = 363.15
SCREENING_MARGIN = 0.1

@dataclasses.dataclass
class ScreenedLine():
	'''
	Screening outcome of a thermal line.

	Parameters
	----------
	line : int
		Branch index.

	id : str
		Branch id.

	initial_temp : float
		Temperature before the first period, in K.

	peak_temp : float
		Highest steady-state temperature of the dispatched current, in K.

	periods_at_limit : list
		Periods whose steady-state temperature reaches the limit.

	selected : bool
		Whether the line gets the transient model.
	'''

	line: int
	id: str
	initial_temp: float
	peak_temp: float
	periods_at_limit: list
	selected: bool

	def toDict(self):
		return dataclasses.asdict(self)

def screeningTable(case, weather = None, *, nlp_options = None):
	'''
	Solve one steady-state limited ACOPF per period and evaluate the steady-state temperature of every thermal line.
	A line is selected when it starts below 90 °C and reaches its limit in some period.

	Parameters
	----------
	case : NetworkCase
		The case.

	weather : dict
		Weather series replacing the case's, by line id.

	nlp_options : NlpOptions
		Solver knobs of the single-period problems.

	Raises
	------
	SubproblemFailure
		A single-period problem failed; the error names the period.

	Returns
	-------
	lines : list
		A `ScreenedLine` per thermal line.
	'''

	if weather:
		case = case.withWeather(weather)

	model = AcModel(case)
	caps = branchCaps(case, RatingScheme(RatingKind.DLR_SS))
	currents = np.empty((len(case.branches), case.horizon))

	for t in range(case.horizon):
		solution = solveAcSubproblem(AcSubproblemSpec(period = t, caps = caps[:, t]), case, model = model, options = nlp_options)
		currents[:, t] = np.maximum(solution.vars.current_sq, 0.0)

	table = []
	for line in case.thermalLines():
		thermal = LineThermal.fromCase(case, line)
		physical = thermal.physicalCurrents(currents[line]) * AMPERES_SQ_PER_KA_SQ

		temps = np.array([
			steadyStateTemperature(physical[t], thermal.params, thermal.weathers[t], thermal.lins[t])
			for t in range(case.horizon)
		])

		at_limit = [t for t in range(case.horizon) if temps[t] >= thermal.t_max - SCREENING_MARGIN]
		table.append(ScreenedLine(
			line = line,
			id = thermal.branch.id,
			initial_temp = thermal.initial_temp,
			peak_temp = float(np.max(temps)),
			periods_at_limit = at_limit,
			selected = thermal.initial_temp < SCREENING_INITIAL_LIMIT and len(at_limit) > 0
		))

	logger.info(f'screening selected {sum(entry.selected for entry in table)} of {len(table)} thermal lines')
	return table

def screenTransientLines(case, weather = None, *, nlp_options = None):
	'''
	Lines that get the transient temperature model.

	Returns
	-------
	lines : list
		Branch indices of the selected lines.
	'''

	return [entry.line for entry in screeningTable(case, weather, nlp_options = nlp_options) if entry.selected]
