#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
import sys

import numpy as np
import pandas as pd
import tabulate

from .errors import *
from ..admm import BilevelADMM, OuterMaxIterError, ProgressLogger, SolveReport, TraceWriter, screeningTable, solveMonolithic, verifyReport
from ..network import buildFixture, writeCase, dumpCase
from ..ratings import RatingKind, RatingScheme, currentCaps, lineConvections
from ..thermal import stepTemperature, steadyStateTemperature
from ..utils import jsonfiles

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2

def _emit(obj, filename):
	'''
	Write an object as JSON to a file, or to the standard output.
	'''

	if filename:
		jsonfiles.write(obj, filename, sort_keys = True)

	else:
		sys.stdout.write(jsonfiles.dumps(obj, sort_keys = True) + '\n')

def _solve(case, scheme, config):
	'''
	Solve a case with the configured method.

	Returns
	-------
	report : SolveReport
		The report, also when the outer loop did not converge.

	converged : bool
		Whether the run converged.
	'''

	canonical = dict(config.canonical(), scheme = scheme.name)

	if config.method == 'monolithic':
		return solveMonolithic(case, scheme, config = canonical), True

	with BilevelADMM(case, scheme, config.admmParams(), config = canonical) as admm:
		ProgressLogger(admm)
		if config.trace:
			TraceWriter(admm, config.trace)

		try:
			return admm.run(), True

		except OuterMaxIterError as e:
			logger.warning(str(e))
			return e.report, False

def cmdSolve(config):
	'''
	Solve a case and write its report.

	Parameters
	----------
	config : RunConfig
		The run.

	Returns
	-------
	code : int
		0 on convergence, 2 when the outer loop reached its cap.
	'''

	case = config.loadCase()
	report, converged = _solve(case, config.ratingScheme(), config)
	_emit(report.toDict(), config.out)

	return EXIT_OK if converged else EXIT_NOT_CONVERGED

def _meanCapacity(case, scheme):
	'''
	Mean steady-state ampacity of the thermal lines over the horizon, in A. The transient scheme is rated as the steady-state one.
	'''

	if not(case.thermalLines()):
		return 0.0

	if scheme.transient:
		scheme = RatingScheme(RatingKind.DLR_SS)

	caps, lines = currentCaps(case, scheme)
	bases = np.array([case.branches[line].thermal.current_base for line in lines])
	return float(np.mean(np.sqrt(caps) * bases[:, np.newaxis]))

def _change(value, baseline):
	return 0.0 if baseline == 0 else 100 * (value - baseline) / abs(baseline)

def cmdCompare(config, schemes):
	'''
	Solve a case under several rating schemes and compare them to the static rating, or to the first scheme when the static rating is not compared.

	Parameters
	----------
	config : RunConfig
		The run.

	schemes : list
		Names of the schemes.

	Raises
	------
	ConfigError
		Less than two schemes.

	Returns
	-------
	code : int
		0 when every solve converged, 2 otherwise.
	'''

	if len(schemes) < 2:
		raise ConfigError('schemes', 'at least two schemes are needed')

	case = config.loadCase()
	rows = []
	code = EXIT_OK

	for name in schemes:
		scheme = config.ratingScheme(name)
		report, converged = _solve(case, scheme, config)
		if not(converged):
			code = EXIT_NOT_CONVERGED

		rows.append({
			'scheme': str(scheme),
			'objective': report.objective,
			'capacity_A': _meanCapacity(case, scheme),
			'renewable_MWh': report.renewable_energy,
			'converged': converged
		})

	table = pd.DataFrame(rows)
	names = [RatingScheme.fromName(name, config.season).kind for name in schemes]
	baseline = table.iloc[names.index(RatingKind.SLR) if RatingKind.SLR in names else 0]

	table['capacity_change_pct'] = [_change(v, baseline['capacity_A']) for v in table['capacity_A']]
	table['cost_change_pct'] = [_change(v, baseline['objective']) for v in table['objective']]
	table['renewable_change_pct'] = [_change(v, baseline['renewable_MWh']) for v in table['renewable_MWh']]

	print(tabulate.tabulate(table, headers = 'keys', showindex = False, floatfmt = '.4g'))

	if config.csv:
		table.to_csv(config.csv, index = False)

	if config.out:
		jsonfiles.write({'baseline': baseline['scheme'], 'rows': table.to_dict('records')}, config.out, sort_keys = True)

	return code

def cmdScreen(config):
	'''
	List the lines selected for the transient model, with their initial and peak temperatures.

	Returns
	-------
	code : int
		0.
	'''

	case = config.loadCase()
	table = screeningTable(case)

	_emit([
		{'id': entry.id, 'initial_temp': entry.initial_temp, 'peak_temp': entry.peak_temp, 'periods_at_limit': entry.periods_at_limit}
		for entry in table if entry.selected
	], config.out)

	return EXIT_OK

def thermalTrajectory(case, line_id, currents, *, initial_temp = None, substeps = 1):
	'''
	Transient and steady-state temperatures of a line under a current schedule, with the case's weather.

	Parameters
	----------
	case : NetworkCase
		The case.

	line_id : str
		Id of a thermal line.

	currents : list
		Current of each period, in A.

	initial_temp : float
		Temperature before the first period, in K. Default to the case's.

	substeps : int
		Number of points per period.

	Raises
	------
	UnknownLineError
		The line is not a thermal line.

	ConfigError
		More currents than periods.

	Returns
	-------
	trajectory : pandas.DataFrame
		Columns `period`, `time_s`, `temp_K` and `temp_ss_K`.
	'''

	try:
		line = case.branchIndex(line_id)

	except KeyError:
		raise UnknownLineError(line_id)

	branch = case.branches[line]
	if not(branch.is_thermal_line):
		raise UnknownLineError(line_id)

	if len(currents) > case.horizon:
		raise ConfigError('current', f'{len(currents)} currents for {case.horizon} periods')

	if substeps < 1:
		raise ConfigError('substeps', f'{substeps} is lower than 1')

	params = branch.thermal.conductor
	weathers, lins = lineConvections(case, line, RatingScheme(RatingKind.DLR_TRANS))
	temp = branch.thermal.initial_temp if initial_temp is None else initial_temp
	step = case.dt / substeps

	rows = [{'period': 0, 'time_s': 0.0, 'temp_K': temp, 'temp_ss_K': np.nan}]
	for t, current in enumerate(currents):
		current_sq = float(current)**2
		temp_ss = steadyStateTemperature(current_sq, params, weathers[t], lins[t])

		for s in range(1, substeps + 1):
			temp = stepTemperature(temp, current_sq, params, weathers[t], lins[t], step)
			rows.append({'period': t + 1, 'time_s': t * case.dt + s * step, 'temp_K': temp, 'temp_ss_K': temp_ss})

	return pd.DataFrame(rows)

def cmdThermalSim(config, line_id, currents, *, initial_temp = None, substeps = 1):
	'''
	Write the temperature trajectory of a line as CSV.

	Returns
	-------
	code : int
		0.
	'''

	trajectory = thermalTrajectory(config.loadCase(), line_id, currents, initial_temp = initial_temp, substeps = substeps)
	trajectory.to_csv(config.out or sys.stdout, index = False)

	return EXIT_OK

def cmdVerify(config, report_file):
	'''
	Check a stored report against its case.

	Returns
	-------
	code : int
		0 when every check passes, 1 otherwise.
	'''

	report = SolveReport.read(report_file)
	result = verifyReport(report, config.loadCase())

	print(tabulate.tabulate(
		[[name, 'ok' if check['ok'] else 'FAILED', check['value'], check['limit']] for name, check in result.checks.items()],
		headers = ['check', 'status', 'value', 'limit'],
		floatfmt = '.3e'
	))

	return EXIT_OK if result.ok else EXIT_ERROR

def cmdFixture(name, regime, filename, *, horizon = None, load_factor = None, seed = 0):
	'''
	Write a bundled fixture as a case file, or to the standard output.

	Returns
	-------
	code : int
		0.
	'''

	case = buildFixture(name, regime, horizon = horizon, load_factor = load_factor, seed = seed)

	if filename:
		writeCase(case, filename)

	else:
		sys.stdout.write(jsonfiles.dumps(dumpCase(case), sort_keys = True) + '\n')

	return EXIT_OK
