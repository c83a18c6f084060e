#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import logging
import math
from typing import Optional

import numpy as np

from .devices import LineThermal
from .errors import *
from ..acopf import AcModel, AcPeriodVars
from ..network import dumpCase
from ..ratings import RatingScheme, branchCaps
from ..thermal import ThermalError
from ..utils import jsonfiles
from ..utils.string import hashObject

logger = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1

STATUS_CONVERGED = 'converged'
STATUS_MAX_OUTER = 'max-outer'

METHOD_ADMM = 'admm'
METHOD_MONOLITHIC = 'monolithic'

RAMP_TOL = 1e-6
TEMPERATURE_TOL = 1e-6
AC_TOL = 1e-5
PROTOCOL_TOL = 1e-10

@dataclasses.dataclass
class SolveReport():
	'''
	Outcome of a multi-period solve. Residuals are recomputed from the stored primal values.

	Parameters
	----------
	method : str
		`admm` or `monolithic`.

	status : str
		`converged` or `max-outer`.

	case_name, scheme, season : str
		What was solved.

	config_hash : str
		Digest of the run configuration and the case.

	objective : float
		Total generation cost over the horizon, in $/h summed over periods.

	dispatch, reactive : list
		Generator powers of each period (p.u.).

	voltages : list
		Bus voltage magnitudes of each period (p.u.).

	currents_sq : list
		Squared branch currents of each period (p.u.²).

	line_temperatures, line_currents : dict
		End-of-period temperatures (K) and squared currents ((kA)²) of each thermal line, by id.

	screened : list
		Ids of the lines under the transient model.

	headroom : dict
		For each screened line, periods in which its current exceeds the steady-state ampacity.

	renewable_energy : float
		Energy produced by renewable generators, in MWh.

	outer_iterations, inner_iterations : int
		Iteration counts.

	wall_time : float
		Duration of the solve, in s.

	d : int
		Number of consensus coordinates.

	eps : float
		Feasibility tolerance per coordinate.

	consensus_l2, consensus_inf : float
		Norms of Ax + By.

	trace : list
		One record per inner iteration.

	protocol : list
		One record per outer iteration, with the invariants of the inner loop.

	rho_diagnostic : dict
		Curvature bound of the temperature flow maps, multiplier estimate and the resulting penalty bound.

	primal : dict
		Flat AC vectors, y vector and consensus coordinates.
	'''

	method: str
	status: str
	case_name: str
	scheme: str
	season: Optional[str]
	config_hash: str
	objective: float
	dispatch: list
	reactive: list
	voltages: list
	currents_sq: list
	line_temperatures: dict
	line_currents: dict
	screened: list
	headroom: dict
	renewable_energy: float
	outer_iterations: int = 0
	inner_iterations: int = 0
	wall_time: float = 0.0
	d: int = 0
	eps: float = 0.0
	consensus_l2: float = 0.0
	consensus_inf: float = 0.0
	trace: list = dataclasses.field(default_factory = list)
	protocol: list = dataclasses.field(default_factory = list)
	rho_diagnostic: dict = dataclasses.field(default_factory = dict)
	primal: dict = dataclasses.field(default_factory = dict)
	schema_version: int = REPORT_SCHEMA_VERSION

	@property
	def converged(self):
		return self.status == STATUS_CONVERGED

	def toDict(self):
		return dataclasses.asdict(self)

	@classmethod
	def fromDict(cls, d):
		if d.get('schema_version') != REPORT_SCHEMA_VERSION:
			raise AdmmError(f'unsupported report schema version {d.get("schema_version")}')

		return cls(**d)

	def write(self, filename):
		jsonfiles.write(self.toDict(), filename, sort_keys = True)

	@classmethod
	def read(cls, filename):
		return cls.fromDict(jsonfiles.read(filename))

def configHash(config, case):
	'''
	Digest of a run configuration together with the canonical case document.
	'''

	return hashObject({'config': config, 'case': dumpCase(case)})

def consensusResidual(primal):
	'''
	Ax + By recomputed from the stored primal values.

	Parameters
	----------
	primal : dict
		The `primal` entry of a report.

	Returns
	-------
	residual : numpy.ndarray
		One value per consensus coordinate.
	'''

	xs = primal['x']
	y = primal.get('y', [])
	return np.array([
		-c['scale'] * xs[c['period']][c['x_index']] + y[c['y_index']]
		for c in primal.get('coordinates', [])
	])

def buildReport(case, scheme, xs, *, method, status, config = None, maps = None, y = None, screened = (), **extras):
	'''
	Assemble a report from the final AC vectors, and from the temporal variables of a decomposed solve.

	Parameters
	----------
	case : NetworkCase
		The case.

	scheme : RatingScheme
		The scheme.

	xs : list
		Flat AC vector of each period.

	method : str
		`admm` or `monolithic`.

	status : str
		Outcome.

	config : dict
		Run configuration, hashed with the case.

	maps : SelectionMaps
		Consensus maps of a decomposed solve.

	y : numpy.ndarray
		Temporal variables of a decomposed solve.

	screened : list
		Branch indices of the screened lines.

	extras : mixed
		Other report fields (iterations, trace...).

	Returns
	-------
	report : SolveReport
		The report.
	'''

	model = AcModel(case)
	layout = model.layout
	vars = [AcPeriodVars.fromVector(layout, x) for x in xs]
	screened = list(screened)

	line_temperatures = {}
	line_currents = {}
	headroom = {}

	for line in case.thermalLines():
		branch = case.branches[line]
		y_block = None
		if maps is not None and line in maps.lines:
			y_block = y[maps.lineBlock(maps.lines.index(line))]

		thermal = LineThermal.fromCase(case, line)
		if y_block is None:
			currents = thermal.physicalCurrents([x[layout.index('current_sq', line)] for x in xs])

		else:
			currents = np.asarray(y_block, dtype = float)

		line_currents[branch.id] = currents.tolist()

		try:
			line_temperatures[branch.id] = thermal.temperatures(currents).tolist()

		except ThermalError as e:
			logger.warning(f'cannot simulate the temperature of {branch.id}: {e}')

		if line in screened:
			caps = thermal.steadyCaps()
			headroom[branch.id] = [t for t in range(case.horizon) if currents[t] > caps[t] * (1 + 1e-9)]

	renewable = [g for g, gen in enumerate(case.generators) if gen.renewable]
	renewable_energy = sum(float(v.p_g[g]) for v in vars for g in renewable) * case.base_mva * case.dt / 3600

	primal = {'x': [np.asarray(x).tolist() for x in xs]}
	d = 0
	consensus = np.zeros(0)
	if maps is not None:
		primal['y'] = np.asarray(y).tolist()
		primal['coordinates'] = maps.describe()
		d = maps.d
		consensus = consensusResidual(primal)

	config = config if config is not None else {'method': method, 'scheme': scheme.name, 'season': scheme.season}

	return SolveReport(
		method = method,
		status = status,
		case_name = case.name,
		scheme = scheme.name,
		season = scheme.season,
		config_hash = configHash(config, case),
		objective = float(sum(model.cost(x) for x in xs)),
		dispatch = [v.p_g.tolist() for v in vars],
		reactive = [v.q_g.tolist() for v in vars],
		voltages = [np.sqrt(v.voltage_sq).tolist() for v in vars],
		currents_sq = [v.current_sq.tolist() for v in vars],
		line_temperatures = line_temperatures,
		line_currents = line_currents,
		screened = [case.branches[line].id for line in screened],
		headroom = headroom,
		renewable_energy = renewable_energy,
		d = d,
		consensus_l2 = float(np.linalg.norm(consensus)),
		consensus_inf = float(np.max(np.abs(consensus), initial = 0.0)),
		primal = primal,
		**extras
	)

@dataclasses.dataclass
class VerificationResult():
	'''
	Outcome of `verifyReport()`: for each check, whether it passed and the measured value.
	'''

	checks: dict

	@property
	def ok(self):
		return all(check['ok'] for check in self.checks.values())

	@property
	def failures(self):
		return [name for name, check in self.checks.items() if not(check['ok'])]

def _check(checks, name, value, limit):
	checks[name] = {'ok': bool(value <= limit), 'value': float(value), 'limit': float(limit)}

def verifyReport(report, case, *, strict = False):
	'''
	Check the claims of a report against the case, from its raw primal values.

	Parameters
	----------
	report : SolveReport
		The report.

	case : NetworkCase
		The case it was computed on.

	strict : bool
		`True` to raise when a check fails.

	Raises
	------
	ReportVerificationError
		A check failed and `strict` is set.

	Returns
	-------
	result : VerificationResult
		Every check with its value.
	'''

	checks = {}
	model = AcModel(case)
	layout = model.layout
	xs = [np.asarray(x, dtype = float) for x in report.primal['x']]
	scheme = RatingScheme.fromName(report.scheme, report.season or 'summer')
	screened = [case.branchIndex(line_id) for line_id in report.screened]

	objective = sum(model.cost(x) for x in xs)
	_check(checks, 'objective', abs(objective - report.objective) / max(1.0, abs(report.objective)), 1e-9)

	caps = branchCaps(case, scheme, exclude = screened)
	violation = max(float(np.max(np.abs(model.equalities(x, t)), initial = 0.0)) for t, x in enumerate(xs))
	violation = max(violation, max(float(np.max(model.inequalities(x, caps[:, t]), initial = 0.0)) for t, x in enumerate(xs)))
	_check(checks, 'ac_feasibility', violation, AC_TOL)

	y = np.asarray(report.primal.get('y', []), dtype = float)
	decomposed = report.method == METHOD_ADMM

	if decomposed:
		residual = consensusResidual(report.primal)
		l2 = float(np.linalg.norm(residual))
		_check(checks, 'consensus_recorded', abs(l2 - report.consensus_l2), 1e-12 * max(1.0, l2))
		if report.converged:
			_check(checks, 'consensus', l2, math.sqrt(report.d) * report.eps)

	ramp_violation = 0.0
	horizon = case.horizon
	for g, gen in enumerate(case.generators):
		if decomposed:
			profile = y[g * horizon:(g + 1) * horizon]

		else:
			profile = np.array([x[layout.index('p_g', g)] for x in xs])

		ramp_violation = max(ramp_violation, float(np.max(gen.p_min - profile, initial = 0.0)), float(np.max(profile - gen.p_max, initial = 0.0)))
		if not(gen.renewable) and horizon > 1:
			ramps = np.diff(profile)
			ramp_violation = max(ramp_violation, float(np.max(ramps - gen.ramp_up)), float(np.max(-gen.ramp_down - ramps)))

	_check(checks, 'ramps', ramp_violation, RAMP_TOL)

	temperature_excess = 0.0
	for line in screened:
		thermal = LineThermal.fromCase(case, line)
		currents = np.asarray(report.line_currents[case.branches[line].id], dtype = float)
		temperature_excess = max(temperature_excess, float(np.max(thermal.temperatures(currents) - thermal.t_max)))

	_check(checks, 'temperatures', temperature_excess, TEMPERATURE_TOL)

	for name in ['entry_invariant', 'slack_stationarity', 'dual_ascent']:
		values = [record[name] / record['scale'] for record in report.protocol]
		if values:
			_check(checks, name, max(values), PROTOCOL_TOL)

	result = VerificationResult(checks)
	if strict and not(result.ok):
		raise ReportVerificationError(result.failures)

	return result
