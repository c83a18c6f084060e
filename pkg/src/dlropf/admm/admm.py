#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import concurrent.futures
import dataclasses
import logging
import math
import time

import numpy as np

from .consensus import AdmmParams, buildConsensus, updateSlack, nextPenalty
from .devices import RampProjector, LineThermal, solveRampSubproblem, solveTemperatureSubproblem, AMPERES_SQ_PER_KA_SQ
from .errors import *
from .report import buildReport, METHOD_ADMM, STATUS_CONVERGED, STATUS_MAX_OUTER
from .screening import screenTransientLines
from ..acopf import AcModel, AcPeriodVars, AcSubproblemSpec, SubproblemFailure, solveAcSubproblem
from ..ratings import branchCaps
from ..thermal import smoothnessBounds
from ..utils import Events

logger = logging.getLogger(__name__)

@dataclasses.dataclass
class InnerOutcome():
	'''
	Summary of an inner loop, kept in the protocol records.
	'''

	iterations: int
	residual: float
	threshold: float
	stalled: bool
	entry_invariant: float
	slack_stationarity: float
	dual_ascent: float
	scale: float

class BilevelADMM():
	'''
	Bi-level decomposition of the multi-period problem. The inner loop alternates the period subproblems, the device subproblems, the slack and the inner duals; the outer loop drives the slack to zero.

	Parameters
	----------
	case : NetworkCase
		The case.

	scheme : RatingScheme
		The rating scheme.

	params : AdmmParams
		Decomposition parameters.

	screened : list
		Branch indices of the lines with the transient model. Default to the result of the screening, for the transient scheme.

	nlp_options : NlpOptions
		Solver knobs of the subproblems.

	config : dict
		Run configuration to hash in the report.

	strict : bool
		`True` to raise `InnerStalledError` when an inner loop reaches its cap.
	'''

	def __init__(self, case, scheme, params = None, *, screened = None, nlp_options = None, config = None, strict = False):
		self._case = case
		self._scheme = scheme
		self._params = params or AdmmParams()
		self._nlp_options = nlp_options
		self._strict = strict

		if scheme.transient and screened is None:
			screened = screenTransientLines(case, nlp_options = nlp_options)

		self._screened = list(screened or []) if scheme.transient else []
		self._config = config

		self._model = AcModel(case)
		self._caps = branchCaps(case, scheme, exclude = self._screened)
		self.maps, self.state = buildConsensus(case, scheme, screened = self._screened, theta0 = self._params.theta0)

		self._projectors = [RampProjector(gen, case.horizon) for gen in case.generators]
		self._thermals = [LineThermal.fromCase(case, line) for line in self._screened]
		self._tasks = [('gen', g) for g in range(len(case.generators))] + [('line', row) for row in range(len(self._screened))]

		self._c_delta = max([
			smoothnessBounds(thermal.params, weather, lin, case.dt, current_scale = AMPERES_SQ_PER_KA_SQ).hessian_op_bound
			for thermal in self._thermals
			for weather, lin in zip(thermal.weathers, thermal.lins)
		], default = 0.0)
		self._lambda = 0.0

		self._warm = False
		self._executor = None
		self._start_time = None

		self.trace = []
		self.protocol = []

		self.events = Events([
			'run-start', 'run-end',
			'outer-start', 'outer-end',
			'inner-iteration',
			'penalty-increase',
			'subproblem-retry'
		])

	def __enter__(self):
		'''
		Context manager to call `close()` at the end.
		'''

		return self

	def __exit__(self, type, value, traceback):
		self.close()

	def close(self):
		'''
		Stop the worker threads.
		'''

		if not(self._executor is None):
			self._executor.shutdown()
			self._executor = None

	@property
	def params(self):
		return self._params

	@property
	def screened(self):
		'''
		Branch indices of the lines with the transient model.
		'''

		return list(self._screened)

	@property
	def rho_diagnostic(self):
		'''
		Penalty lower bound 2·C_Δ·Λ of the temperature updates, and whether the current penalty satisfies it.

		Returns
		-------
		diagnostic : dict
			`c_delta`, `lambda`, `bound`, `rho` and `satisfied`.
		'''

		bound = 2 * self._c_delta * self._lambda
		return {
			'c_delta': self._c_delta,
			'lambda': self._lambda,
			'bound': bound,
			'rho': self.state.rho,
			'satisfied': bool(self.state.rho >= bound)
		}

	def _map(self, f, items):
		'''
		Apply a function to every item, in parallel when there are several workers. Results keep the order of the items.
		'''

		if self._params.workers == 1:
			return [f(item) for item in items]

		if self._executor is None:
			self._executor = concurrent.futures.ThreadPoolExecutor(max_workers = self._params.workers)

		return list(self._executor.map(f, items))

	def _xUpdate(self, t, gathered_y):
		'''
		Period subproblem, retried from flat start when it fails from its warm start.
		'''

		maps = self.maps
		state = self.state
		s = maps.periodCoordinates(t)

		spec = AcSubproblemSpec(
			period = t,
			rho = state.rho,
			indices = maps.x_index[s],
			scales = maps.scales[s],
			targets = gathered_y[s] + state.u[s],
			duals = state.v[s],
			caps = self._caps[:, t],
			warm_start = AcPeriodVars.fromVector(maps.layout, state.xs[t]) if self._warm else None
		)

		try:
			return solveAcSubproblem(spec, self._case, model = self._model, options = self._nlp_options)

		except SubproblemFailure as e:
			if spec.warm_start is None:
				raise

			self.events.trigger('subproblem-retry', t, e)
			spec.warm_start = None
			return solveAcSubproblem(spec, self._case, model = self._model, options = self._nlp_options)

	def _deviceUpdate(self, task):
		'''
		Ramp or temperature subproblem of a device.
		'''

		kind, index = task
		if kind == 'gen':
			return solveRampSubproblem(index, self.state, self.maps, self._projectors[index])

		coordinates = self.maps.yCoordinates(self.maps.lineBlock(index))
		target = self.maps.couplingTarget(self.state, coordinates)
		return solveTemperatureSubproblem(self._thermals[index], target, self.state.rho, options = self._nlp_options)

	def innerADMM(self):
		'''
		Inner loop of the current outer iteration, until ‖Ax + By + u‖₂ ≤ max(ε, √(d/θ)/k) or the iteration cap.
		Entering resets ρ = 2θ, u = 0 and v = −w, which establishes w + θu + v = 0. The residual of that relation is recorded in the outcome for `verifyReport()`.

		Raises
		------
		InnerStalledError
			The cap was reached and stalls are not tolerated.

		SubproblemFailure
			A subproblem failed.

		Returns
		-------
		outcome : InnerOutcome
			Iterations, residual and invariants.
		'''

		state = self.state
		maps = self.maps
		params = self._params
		k = max(state.k, 1)

		state.rho = 2 * state.theta
		state.u = np.zeros(maps.d)
		state.v = -state.w.copy()

		scale = max(1.0, float(np.max(np.abs(state.w), initial = 0.0)))
		entry = state.entryInvariant()

		threshold = max(params.eps, math.sqrt(maps.d / state.theta) / k)
		stationarity = 0.0
		ascent = 0.0
		residual_norm = math.inf

		for r in range(1, params.inner_cap + 1):
			state.r = r
			start = time.perf_counter()

			gathered_y = maps.gatherY(state.y)
			solutions = self._map(lambda t: self._xUpdate(t, gathered_y), range(self._case.horizon))
			state.xs = [solution.vars.toVector(maps.layout) for solution in solutions]
			self._warm = True

			outcomes = self._map(self._deviceUpdate, self._tasks)
			y = state.y.copy()
			multipliers = []
			for (kind, index), outcome in zip(self._tasks, outcomes):
				if kind == 'gen':
					y[maps.generatorBlock(index)] = outcome

				else:
					y[maps.lineBlock(index)] = outcome.current_sq
					state.temps[maps.lines[index]] = outcome.temps
					multipliers.append(outcome.multiplier_norm)

			state.y = y
			if multipliers:
				self._lambda = 2 * max(multipliers)

			feasibility = maps.residual(state.xs, state.y)
			state.u = updateSlack(state, maps)
			p = feasibility + state.u

			scale = max(scale, float(np.max(np.abs(state.v))), state.rho * float(np.max(np.abs(feasibility))))
			stationarity = max(stationarity, float(np.max(np.abs(state.w + state.theta * state.u + state.v + state.rho * p))))

			v_old = state.v
			state.v = v_old + state.rho * p
			ascent = max(ascent, float(np.max(np.abs((state.v - v_old) - state.rho * p))))

			residual_norm = float(np.linalg.norm(p))
			record = {
				'k': state.k,
				'r': r,
				'consensus_l2': residual_norm,
				'feas_l2': float(np.linalg.norm(feasibility)),
				'feas_inf': float(np.max(np.abs(feasibility))),
				'theta': state.theta,
				'rho': state.rho,
				'wall_ms': 1e3 * (time.perf_counter() - start)
			}

			self.trace.append(record)
			self.events.trigger('inner-iteration', record)

			if residual_norm <= threshold:
				stalled = False
				break

		else:
			stalled = True

		if stalled:
			if self._strict:
				raise InnerStalledError(state.k, params.inner_cap, residual_norm, threshold)

			logger.warning(f'inner loop {state.k} reached {params.inner_cap} iterations (residual {residual_norm:.3e} > {threshold:.3e})')

		return InnerOutcome(
			iterations = state.r,
			residual = residual_norm,
			threshold = threshold,
			stalled = stalled,
			entry_invariant = entry,
			slack_stationarity = stationarity,
			dual_ascent = ascent,
			scale = scale
		)

	def outerLoop(self):
		'''
		Outer iterations until ‖Ax + By‖₂ ≤ √d·ε: inner loop, projected ascent on w, then penalty increase when the slack did not decrease enough.

		Returns
		-------
		converged : bool
			Whether the tolerance was reached within the cap.
		'''

		state = self.state
		maps = self.maps
		params = self._params
		tolerance = math.sqrt(maps.d) * params.eps
		previous_u_norm = None

		for k in range(1, params.outer_cap + 1):
			state.k = k
			self.events.trigger('outer-start', k, state.theta)

			outcome = self.innerADMM()
			feasibility = float(np.linalg.norm(maps.residual(state.xs, state.y)))
			u_norm = float(np.linalg.norm(state.u))

			diagnostic = self.rho_diagnostic
			if not(diagnostic['satisfied']):
				logger.warning(f'penalty {state.rho:.3e} below the descent bound {diagnostic["bound"]:.3e} of the temperature updates')

			record = {
				'k': k,
				'theta': state.theta,
				'rho': state.rho,
				'inner_iterations': outcome.iterations,
				'inner_residual': outcome.residual,
				'inner_threshold': outcome.threshold,
				'stalled': outcome.stalled,
				'entry_invariant': outcome.entry_invariant,
				'slack_stationarity': outcome.slack_stationarity,
				'dual_ascent': outcome.dual_ascent,
				'scale': outcome.scale,
				'u_norm': u_norm,
				'feas_l2': feasibility,
				'rho_bound': diagnostic['bound']
			}

			self.protocol.append(record)
			self.events.trigger('outer-end', record)

			if feasibility <= tolerance:
				return True

			state.w = np.clip(state.w + state.theta * state.u, -params.w_bound, params.w_bound)

			theta = nextPenalty(state.theta, u_norm, previous_u_norm, params.gamma, params.omega)
			if theta != state.theta:
				self.events.trigger('penalty-increase', state.theta, theta)
				state.theta = theta

			previous_u_norm = u_norm

		return False

	def report(self, status):
		'''
		Report of the current state.
		'''

		return buildReport(
			self._case, self._scheme, self.state.xs,
			method = METHOD_ADMM,
			status = status,
			config = self._config,
			maps = self.maps,
			y = self.state.y,
			screened = self._screened,
			outer_iterations = self.state.k,
			inner_iterations = len(self.trace),
			wall_time = time.perf_counter() - self._start_time if self._start_time else 0.0,
			eps = self._params.eps,
			trace = list(self.trace),
			protocol = list(self.protocol),
			rho_diagnostic = self.rho_diagnostic
		)

	def run(self):
		'''
		Solve the problem.

		Raises
		------
		OuterMaxIterError
			The outer cap was reached; the error carries the report of the last state.

		SubproblemFailure
			A subproblem failed.

		Returns
		-------
		report : SolveReport
			The report.
		'''

		self._start_time = time.perf_counter()
		self.events.trigger('run-start', self._case.name, str(self._scheme), self.maps.d)

		try:
			converged = self.outerLoop()

		finally:
			self.close()

		report = self.report(STATUS_CONVERGED if converged else STATUS_MAX_OUTER)
		self.events.trigger('run-end', report)

		if not(converged):
			raise OuterMaxIterError(self.state.k, report)

		return report
