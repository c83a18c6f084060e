#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import math
from typing import Optional

import numpy as np

from .errors import *
from .layout import AcPeriodVars
from .residuals import AcModel
from ..nlp import NlpProblem, NlpOptions, NlpResult, minimize

WARM_MU = 1e-3
WARM_SLACK_FLOOR = 1e-4

@dataclasses.dataclass
class AcSubproblemSpec():
	'''
	Data of the x-update of one period.
	Each consensus coordinate k of the period adds v_k·p_k + (ρ/2)·p_k² to the cost, with p_k = −κ_k·x[index_k] + target_k and target_k = y_k + u_k.

	Parameters
	----------
	period : int
		Period index.

	rho : float
		Inner penalty.

	indices : numpy.ndarray
		Positions, in the flat vector of the period, of the coupled variables.

	scales : numpy.ndarray
		Scale κ of each consensus coordinate.

	targets : numpy.ndarray
		y + u of each consensus coordinate.

	duals : numpy.ndarray
		Inner duals v of each consensus coordinate.

	caps : numpy.ndarray
		Current caps (p.u.²) of each branch, NaN where there is none.

	warm_start : AcPeriodVars
		Starting point. Default to a flat start.
	'''

	period: int
	rho: float = 0.0
	indices: np.ndarray = dataclasses.field(default_factory = lambda: np.zeros(0, dtype = int))
	scales: np.ndarray = dataclasses.field(default_factory = lambda: np.zeros(0))
	targets: np.ndarray = dataclasses.field(default_factory = lambda: np.zeros(0))
	duals: np.ndarray = dataclasses.field(default_factory = lambda: np.zeros(0))
	caps: Optional[np.ndarray] = None
	warm_start: Optional[AcPeriodVars] = None

	def __post_init__(self):
		self.indices = np.asarray(self.indices, dtype = int)
		self.scales = np.asarray(self.scales, dtype = float)
		self.targets = np.asarray(self.targets, dtype = float)
		self.duals = np.asarray(self.duals, dtype = float)

		k = len(self.indices)
		for name in ['scales', 'targets', 'duals']:
			if len(getattr(self, name)) != k:
				raise DimensionMismatchError(name, k, len(getattr(self, name)))

		if self.rho < 0:
			raise AcopfError(f'negative penalty {self.rho}')

	def residual(self, x):
		'''
		Consensus residuals p = −κ·x_sel + y + u.
		'''

		return -self.scales * x[self.indices] + self.targets

	def coupling(self, x):
		'''
		Value of the coupling terms.
		'''

		p = self.residual(x)
		return float(self.duals @ p + 0.5 * self.rho * p @ p)

	def couplingGradient(self, x, size):
		gradient = np.zeros(size)
		np.add.at(gradient, self.indices, -self.scales * (self.duals + self.rho * self.residual(x)))
		return gradient

	def couplingHessianDiagonal(self, size):
		diagonal = np.zeros(size)
		np.add.at(diagonal, self.indices, self.rho * self.scales**2)
		return diagonal

@dataclasses.dataclass
class AcSolution():
	'''
	Stationary point of an x-update.

	Parameters
	----------
	period : int
		Period index.

	vars : AcPeriodVars
		The variables.

	cost : float
		Generation cost, in $/h.

	coupling : float
		Value of the coupling terms.

	result : NlpResult
		Raw solver outcome.
	'''

	period: int
	vars: AcPeriodVars
	cost: float
	coupling: float
	result: NlpResult

	@property
	def multiplier_norm(self):
		'''
		1-norm of the inequality multipliers.
		'''

		return float(np.sum(np.abs(self.result.ineq_multipliers)))

def solveAcSubproblem(spec, case, *, model = None, options = None):
	'''
	Minimize the generation cost of one period plus the consensus coupling terms over the AC constraints.

	Parameters
	----------
	spec : AcSubproblemSpec
		The subproblem.

	case : NetworkCase
		The case.

	model : AcModel
		Prebuilt model of the case.

	options : NlpOptions
		Solver knobs. The barrier and slacks start smaller from a warm start.

	Raises
	------
	SubproblemFailure
		The demand exceeds the generation capacity or the solver did not converge.

	Returns
	-------
	solution : AcSolution
		The stationary point.
	'''

	model = model or AcModel(case)
	layout = model.layout
	t = spec.period

	if not(0 <= t < case.horizon):
		raise PeriodOutOfRangeError(t, case.horizon)

	demand = float(np.sum(case.demand_p[:, t]))
	capacity = sum(gen.p_max for gen in case.generators)
	if demand > capacity:
		raise SubproblemFailure(f'period {t}', 0, math.inf, f'demand {demand:.4f} exceeds generation capacity {capacity:.4f}')

	options = options or NlpOptions()
	if spec.warm_start is None:
		x0 = AcPeriodVars.flatStart(case).toVector(layout)

	else:
		x0 = spec.warm_start.toVector(layout)
		options = options.replace(mu_init = min(options.mu_init, WARM_MU), slack_floor = min(options.slack_floor, WARM_SLACK_FLOOR))

	caps = spec.caps
	size = layout.size
	cost_hessian = model.costHessian()
	coupling_diagonal = spec.couplingHessianDiagonal(size)

	def hessian(x, sigma, y_eq, y_ineq):
		h = model.constraintHessian(y_eq, y_ineq, caps)
		h += sigma * cost_hessian
		h[np.arange(size), np.arange(size)] += sigma * coupling_diagonal
		return h

	problem = NlpProblem(
		x0,
		objective = lambda x: model.cost(x) + spec.coupling(x),
		gradient = lambda x: model.costGradient(x) + spec.couplingGradient(x, size),
		equalities = lambda x: model.equalities(x, t),
		equality_jacobian = model.equalityJacobian,
		inequalities = lambda x: model.inequalities(x, caps),
		inequality_jacobian = lambda x: model.inequalityJacobian(x, caps),
		hessian = hessian
	)

	result = minimize(problem, options = options)
	if not(result.converged):
		raise SubproblemFailure(f'period {t}', result.iterations, result.kkt_residual, result.status.value)

	x = result.point
	return AcSolution(
		period = t,
		vars = AcPeriodVars.fromVector(layout, x),
		cost = model.cost(x),
		coupling = spec.coupling(x),
		result = result
	)
