#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import enum
from typing import Optional

import numpy as np

from .errors import *

class NlpStatus(enum.Enum):
	'''
	Outcome of a solve.
	'''

	CONVERGED = 'Converged'
	MAX_ITER = 'MaxIter'
	DIVERGED = 'Diverged'

@dataclasses.dataclass
class NlpOptions():
	'''
	Knobs of the interior point solver.

	Parameters
	----------
	tol : float
		Tolerance on the scaled KKT error.

	max_iter : int
		Maximum number of Newton iterations.

	mu_init : float
		Initial barrier parameter.

	mu_factor : float
		Barrier reduction factor.

	tau : float
		Minimal fraction-to-boundary parameter.

	slack_floor : float
		Minimal initial slack.

	s_max : float
		Threshold of the multiplier scaling of the stationarity and complementarity errors.

	gradient_target : float
		The objective is scaled so that its initial gradient ∞-norm does not exceed this value.

	max_backtracks : int
		Maximum number of halvings in the line search.

	divergence_threshold : float
		Iterates with a larger ∞-norm are considered divergent.

	dual_inf_tol, constr_viol_tol, compl_inf_tol : float
		Bounds on the unscaled stationarity, constraint violation and complementarity, required along with `tol` to declare convergence.
	'''

	tol: float = 1e-6
	max_iter: int = 300
	mu_init: float = 0.1
	mu_factor: float = 0.2
	tau: float = 0.995
	slack_floor: float = 1e-2
	s_max: float = 100.0
	gradient_target: float = 100.0
	max_backtracks: int = 40
	divergence_threshold: float = 1e20
	dual_inf_tol: float = 1.0
	constr_viol_tol: float = 1e-4
	compl_inf_tol: float = 1e-4

	def replace(self, **changes):
		return dataclasses.replace(self, **changes)

class NlpProblem():
	'''
	Smooth nonlinear program: minimize f(z) subject to c_E(z) = 0, c_I(z) ≤ 0 and lower ≤ z ≤ upper.

	Parameters
	----------
	x0 : numpy.ndarray
		Initial point.

	objective : callable
		f(z), a float.

	gradient : callable
		∇f(z), an array of length n.

	equalities, equality_jacobian : callable
		c_E(z) and its Jacobian, of shape (m_E, n). Omit both when there is no equality.

	inequalities, inequality_jacobian : callable
		c_I(z) and its Jacobian, of shape (m_I, n). Omit both when there is no inequality.

	lower, upper : numpy.ndarray
		Variable bounds, infinite entries allowed.

	hessian : callable
		hessian(z, sigma, y_eq, y_ineq), the Hessian of σ·f + y_eqᵀc_E + y_ineqᵀc_I. Omit to use a quasi-Newton approximation.

	initial_hessian : numpy.ndarray
		Initial quasi-Newton matrix, for the unscaled objective. Default to the identity.

	evaluation_errors : tuple
		Exception classes meaning "the problem is not defined at this trial point"; the line search backtracks on them.
	'''

	def __init__(self, x0, objective, gradient, *, equalities = None, equality_jacobian = None, inequalities = None, inequality_jacobian = None, lower = None, upper = None, hessian = None, initial_hessian = None, evaluation_errors = (ArithmeticError, ValueError)):
		self.x0 = np.array(x0, dtype = float)
		self.n = len(self.x0)

		self._objective = objective
		self._gradient = gradient
		self._equalities = equalities
		self._equality_jacobian = equality_jacobian
		self._inequalities = inequalities
		self._inequality_jacobian = inequality_jacobian
		self._hessian = hessian

		self.lower = np.full(self.n, -np.inf) if lower is None else np.array(lower, dtype = float)
		self.upper = np.full(self.n, np.inf) if upper is None else np.array(upper, dtype = float)
		self.initial_hessian = None if initial_hessian is None else np.array(initial_hessian, dtype = float)
		self.evaluation_errors = tuple(evaluation_errors)

		for name, bound in [('lower', self.lower), ('upper', self.upper)]:
			if bound.shape != (self.n,):
				raise ProblemDimensionError(name, (self.n,), bound.shape)

		empty = np.flatnonzero(self.lower > self.upper)
		if len(empty) > 0:
			raise InvalidBoundsError(int(empty[0]))

		if not(self.initial_hessian is None) and self.initial_hessian.shape != (self.n, self.n):
			raise ProblemDimensionError('initial_hessian', (self.n, self.n), self.initial_hessian.shape)

		if (equalities is None) != (equality_jacobian is None):
			raise ProblemDimensionError('equality evaluators', 'both or none', 'one')

		if (inequalities is None) != (inequality_jacobian is None):
			raise ProblemDimensionError('inequality evaluators', 'both or none', 'one')

	@property
	def has_hessian(self):
		return not(self._hessian is None)

	def objective(self, z):
		return float(self._objective(z))

	def gradient(self, z):
		return np.asarray(self._gradient(z), dtype = float).reshape(self.n)

	def equalities(self, z):
		if self._equalities is None:
			return np.zeros(0)

		return np.atleast_1d(np.asarray(self._equalities(z), dtype = float))

	def equalityJacobian(self, z):
		if self._equality_jacobian is None:
			return np.zeros((0, self.n))

		return np.asarray(self._equality_jacobian(z), dtype = float).reshape(-1, self.n)

	def inequalities(self, z):
		if self._inequalities is None:
			return np.zeros(0)

		return np.atleast_1d(np.asarray(self._inequalities(z), dtype = float))

	def inequalityJacobian(self, z):
		if self._inequality_jacobian is None:
			return np.zeros((0, self.n))

		return np.asarray(self._inequality_jacobian(z), dtype = float).reshape(-1, self.n)

	def hessian(self, z, sigma, y_eq, y_ineq):
		'''
		Hessian of the Lagrangian σ·f + y_eqᵀc_E + y_ineqᵀc_I.

		Raises
		------
		NlpError
			The problem has no Hessian evaluator.
		'''

		if self._hessian is None:
			raise NlpError('no Hessian evaluator')

		return np.asarray(self._hessian(z, sigma, y_eq, y_ineq), dtype = float).reshape(self.n, self.n)

@dataclasses.dataclass
class NlpResult():
	'''
	Outcome of a solve. Multipliers refer to the unscaled objective; inequality and bound multipliers are nonnegative.

	Parameters
	----------
	point : numpy.ndarray
		Final (or best) iterate.

	objective : float
		Objective value at `point`.

	eq_multipliers : numpy.ndarray
		Multipliers of the equalities.

	ineq_multipliers : numpy.ndarray
		Multipliers of the inequalities.

	lower_multipliers, upper_multipliers : numpy.ndarray
		Multipliers of the variable bounds, zero where the bound is infinite.

	kkt_residual : float
		Scaled KKT error at `point` (barrier parameter 0).

	stationarity, feasibility, complementarity : float
		The three unscaled components of the KKT error, in ∞-norm.

	iterations : int
		Number of Newton iterations.

	status : NlpStatus
		Outcome.

	objective_scale : float
		Factor applied to the objective inside the solver.
	'''

	point: np.ndarray
	objective: float
	eq_multipliers: np.ndarray
	ineq_multipliers: np.ndarray
	lower_multipliers: np.ndarray
	upper_multipliers: np.ndarray
	kkt_residual: float
	stationarity: float
	feasibility: float
	complementarity: float
	iterations: int
	status: NlpStatus
	objective_scale: float = 1.0
	message: Optional[str] = None

	@property
	def converged(self):
		return self.status is NlpStatus.CONVERGED
