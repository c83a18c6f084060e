#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
import time

import numpy as np
import scipy.linalg

from .devices import LineThermal, AMPERES_SQ_PER_KA_SQ
from .errors import *
from .report import buildReport, METHOD_MONOLITHIC, STATUS_CONVERGED
from .screening import screenTransientLines
from ..acopf import AcModel, AcPeriodVars, SubproblemFailure
from ..nlp import NlpProblem, NlpOptions, minimize
from ..ratings import branchCaps
from ..thermal import ThermalError

logger = logging.getLogger(__name__)

MONOLITHIC_LIMIT = 720

def _rampRows(case, layout):
	'''
	Linear ramp constraints R·z ≤ b of the stacked vector.
	'''

	n = layout.size
	rows = []
	bounds = []

	for g, gen in enumerate(case.generators):
		if gen.renewable:
			continue

		for t in range(1, case.horizon):
			row = np.zeros(n * case.horizon)
			row[t * n + layout.index('p_g', g)] = 1.0
			row[(t - 1) * n + layout.index('p_g', g)] = -1.0
			rows += [row, -row]
			bounds += [gen.ramp_up, gen.ramp_down]

	if not(rows):
		return np.zeros((0, n * case.horizon)), np.zeros(0)

	return np.array(rows), np.array(bounds)

def solveMonolithic(case, scheme, *, screened = None, nlp_options = None, config = None):
	'''
	Solve the undecomposed multi-period problem: all periods at once, ramp rows between periods, and for the transient scheme the temperature of each screened line in each period.

	Parameters
	----------
	case : NetworkCase
		The case.

	scheme : RatingScheme
		The rating scheme.

	screened : list
		Branch indices of the lines with the transient model. Default to the result of the screening, for the transient scheme.

	nlp_options : NlpOptions
		Solver knobs.

	config : dict
		Run configuration to hash in the report.

	Raises
	------
	ProblemTooLargeError
		More than 720 bus-periods.

	SubproblemFailure
		The solver did not converge.

	Returns
	-------
	report : SolveReport
		The report.
	'''

	n_buses = len(case.buses)
	if n_buses * case.horizon > MONOLITHIC_LIMIT:
		raise ProblemTooLargeError(n_buses, case.horizon, MONOLITHIC_LIMIT)

	start_time = time.perf_counter()

	if scheme.transient and screened is None:
		screened = screenTransientLines(case, nlp_options = nlp_options)

	screened = list(screened or []) if scheme.transient else []
	thermals = [LineThermal.fromCase(case, line) for line in screened]

	model = AcModel(case)
	layout = model.layout
	n = layout.size
	horizon = case.horizon
	caps = branchCaps(case, scheme, exclude = screened)

	x0 = np.tile(AcPeriodVars.flatStart(case).toVector(layout), horizon)
	blocks = [slice(t * n, (t + 1) * n) for t in range(horizon)]

	n_eq = [len(model.equalities(x0[blocks[t]], t)) for t in range(horizon)]
	n_ineq = [len(model.inequalities(x0[blocks[t]], caps[:, t])) for t in range(horizon)]
	eq_offsets = np.concatenate([[0], np.cumsum(n_eq)])
	ineq_offsets = np.concatenate([[0], np.cumsum(n_ineq)])

	ramp_matrix, ramp_bounds = _rampRows(case, layout)
	kappas = [thermal.branch.thermal.current_base**2 / AMPERES_SQ_PER_KA_SQ for thermal in thermals]
	columns = [[t * n + layout.index('current_sq', line) for t in range(horizon)] for line in screened]

	def objective(z):
		return sum(model.cost(z[b]) for b in blocks)

	def gradient(z):
		return np.concatenate([model.costGradient(z[b]) for b in blocks])

	def equalities(z):
		return np.concatenate([model.equalities(z[b], t) for t, b in enumerate(blocks)])

	def equalityJacobian(z):
		return scipy.linalg.block_diag(*[model.equalityJacobian(z[b]) for b in blocks])

	def inequalities(z):
		values = [model.inequalities(z[b], caps[:, t]) for t, b in enumerate(blocks)]
		values.append(ramp_matrix @ z - ramp_bounds)

		for thermal, kappa, cols in zip(thermals, kappas, columns):
			values.append(thermal.temperatures(kappa * z[cols]) - thermal.t_max)

		return np.concatenate(values)

	def inequalityJacobian(z):
		jacobian = [scipy.linalg.block_diag(*[model.inequalityJacobian(z[b], caps[:, t]) for t, b in enumerate(blocks)]), ramp_matrix]

		for thermal, kappa, cols in zip(thermals, kappas, columns):
			rows = np.zeros((horizon, len(z)))
			rows[:, cols] = thermal.jacobian(kappa * z[cols])[1] * kappa
			jacobian.append(rows)

		return np.vstack(jacobian)

	cost_hessian = model.costHessian()

	def hessian(z, sigma, y_eq, y_ineq):
		return scipy.linalg.block_diag(*[
			model.constraintHessian(y_eq[eq_offsets[t]:eq_offsets[t + 1]], y_ineq[ineq_offsets[t]:ineq_offsets[t + 1]], caps[:, t]) + sigma * cost_hessian
			for t in range(horizon)
		])

	problem = NlpProblem(
		x0,
		objective = objective,
		gradient = gradient,
		equalities = equalities,
		equality_jacobian = equalityJacobian,
		inequalities = inequalities,
		inequality_jacobian = inequalityJacobian,
		hessian = hessian,
		evaluation_errors = (ArithmeticError, ValueError, ThermalError)
	)

	logger.info(f'monolithic solve of {case.name or "case"}: {len(x0)} variables, {sum(n_eq)} equalities, {sum(n_ineq) + len(ramp_bounds) + horizon * len(screened)} inequalities')

	result = minimize(problem, options = nlp_options or NlpOptions())
	if not(result.converged):
		raise SubproblemFailure('monolithic', result.iterations, result.kkt_residual, result.status.value)

	xs = [result.point[b].copy() for b in blocks]
	return buildReport(
		case, scheme, xs,
		method = METHOD_MONOLITHIC,
		status = STATUS_CONVERGED,
		config = config,
		screened = screened,
		outer_iterations = 1,
		inner_iterations = result.iterations,
		wall_time = time.perf_counter() - start_time
	)
