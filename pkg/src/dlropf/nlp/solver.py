#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import logging

import numpy as np
import scipy.linalg

from .errors import *
from .problem import NlpOptions, NlpResult, NlpStatus

logger = logging.getLogger(__name__)

ARMIJO_ETA = 1e-4
PENALTY_RHO = 0.1
BARRIER_KAPPA = 10.0
MULTIPLIER_SAFEGUARD = 1e10
LEAST_SQUARES_MAX = 1e3

# Inertia correction, as in IPOPT
DELTA_W_FIRST = 1e-4
DELTA_W_MIN = 1e-20
DELTA_W_MAX = 1e40
DELTA_W_DECREASE = 1 / 3
DELTA_W_INCREASE = 8.0
DELTA_W_FIRST_INCREASE = 100.0
DELTA_C = 1e-8

@dataclasses.dataclass
class _Evaluation():
	f: float
	grad: np.ndarray
	c_eq: np.ndarray
	j_eq: np.ndarray
	g: np.ndarray
	j_g: np.ndarray

	@property
	def finite(self):
		return all(np.all(np.isfinite(a)) for a in [self.f, self.grad, self.c_eq, self.j_eq, self.g, self.j_g])

@dataclasses.dataclass
class _Snapshot():
	z: np.ndarray
	s: np.ndarray
	y: np.ndarray
	lam: np.ndarray
	evaluation: _Evaluation
	error: float

class InteriorPointSolver():
	'''
	Primal-dual interior point method for dense, desk-scale problems.
	Inequalities and finite variable bounds get slack variables; the barrier subproblems are solved by damped Newton steps on the condensed KKT system, globalized by an ℓ1 merit function.
	An instance solves one problem once.

	Parameters
	----------
	problem : NlpProblem
		The problem to solve.

	options : NlpOptions
		Solver knobs.
	'''

	def __init__(self, problem, options = None):
		self._problem = problem
		self._options = options or NlpOptions()

		self._lower_rows = np.flatnonzero(np.isfinite(problem.lower))
		self._upper_rows = np.flatnonzero(np.isfinite(problem.upper))

		self._sigma = 1.0
		self._mu = self._options.mu_init
		self._nu = 1.0
		self._delta_w_last = 0.0
		self._bfgs = None
		self._n_user_ineq = 0

		self._used = False

	def _evaluate(self, z):
		'''
		Evaluate every function at a point, bound rows included.
		'''

		p = self._problem

		c_i = p.inequalities(z)
		j_i = p.inequalityJacobian(z)
		identity = np.eye(p.n)

		g = np.concatenate([c_i, p.lower[self._lower_rows] - z[self._lower_rows], z[self._upper_rows] - p.upper[self._upper_rows]])
		j_g = np.vstack([j_i, -identity[self._lower_rows], identity[self._upper_rows]])

		return _Evaluation(
			f = p.objective(z),
			grad = p.gradient(z),
			c_eq = p.equalities(z),
			j_eq = p.equalityJacobian(z),
			g = g,
			j_g = j_g
		)

	def _tryEvaluate(self, z):
		try:
			evaluation = self._evaluate(z)

		except self._problem.evaluation_errors as e:
			logger.debug('evaluation failed at trial point: %s', e)
			return None

		else:
			return evaluation if evaluation.finite else None

	def _lagrangianGradient(self, ev, y, lam):
		return self._sigma * ev.grad + ev.j_eq.T @ y + ev.j_g.T @ lam

	def _error(self, ev, s, y, lam, mu):
		'''
		Scaled KKT error of the barrier problem with parameter `mu`.
		'''

		s_max = self._options.s_max
		m_eq, m_g = len(y), len(lam)

		s_d = max(s_max, (np.sum(np.abs(y)) + np.sum(np.abs(lam))) / max(1, m_eq + m_g)) / s_max
		s_c = max(s_max, np.sum(np.abs(lam)) / max(1, m_g)) / s_max

		stationarity = _infNorm(self._lagrangianGradient(ev, y, lam)) / s_d
		feasibility = max(_infNorm(ev.c_eq), _infNorm(ev.g + s))
		complementarity = _infNorm(s * lam - mu) / s_c

		return max(stationarity, feasibility, complementarity)

	def _unscaledErrors(self, ev, s, y, lam):
		'''
		Stationarity, constraint violation and complementarity of the original problem, before the objective and multiplier scalings.
		'''

		sigma = self._sigma
		stationarity = _infNorm(self._lagrangianGradient(ev, y, lam)) / sigma
		feasibility = max(_infNorm(ev.c_eq), _infNorm(np.maximum(ev.g, 0.0)))
		complementarity = _infNorm(lam * s) / sigma

		return stationarity, feasibility, complementarity

	def _converged(self, ev, s, y, lam, error):
		options = self._options
		if error > options.tol:
			return False

		stationarity, feasibility, complementarity = self._unscaledErrors(ev, s, y, lam)
		return stationarity <= options.dual_inf_tol and feasibility <= options.constr_viol_tol and complementarity <= options.compl_inf_tol

	def _hessian(self, z, ev, y, lam):
		if self._problem.has_hessian:
			return self._problem.hessian(z, self._sigma, y, lam[:self._n_user_ineq])

		return self._bfgs

	def _inertia(self, matrix):
		'''
		Numbers of positive, negative and zero eigenvalues of a symmetric matrix, from its LDLᵀ factorization.
		'''

		_, d, _ = scipy.linalg.ldl(matrix)
		eigenvalues = np.linalg.eigvalsh(d)
		threshold = 1e-13 * max(1.0, np.max(np.abs(eigenvalues), initial = 0.0))

		return int(np.sum(eigenvalues > threshold)), int(np.sum(eigenvalues < -threshold)), int(np.sum(np.abs(eigenvalues) <= threshold))

	def _solveKKT(self, h, j_eq, rhs_z, rhs_y):
		'''
		Solve the condensed system [[H + δw·I, J_Eᵀ], [J_E, −δc·I]]·(dz, dy) = (rhs_z, rhs_y), correcting the inertia to (n, m_E, 0).

		Returns
		-------
		solution : tuple
			(dz, dy, δw), or `None` when no regularization gives the right inertia.
		'''

		n, m = h.shape[0], j_eq.shape[0]
		rhs = np.concatenate([rhs_z, rhs_y])

		delta_w = 0.0
		delta_c = 0.0

		while True:
			k = np.zeros((n + m, n + m))
			k[:n, :n] = h + delta_w * np.eye(n)
			k[:n, n:] = j_eq.T
			k[n:, :n] = j_eq
			k[n:, n:] = -delta_c * np.eye(m)

			positive, negative, zero = self._inertia(k)

			if positive == n and negative == m:
				try:
					solution = scipy.linalg.solve(k, rhs, assume_a = 'sym')

				except (scipy.linalg.LinAlgError, ValueError):
					solution = None

				if not(solution is None) and np.all(np.isfinite(solution)):
					if delta_w > 0:
						self._delta_w_last = delta_w

					return solution[:n], solution[n:], delta_w

			if zero > 0 and m > 0 and delta_c == 0:
				delta_c = DELTA_C * self._mu**0.25
				continue

			if delta_w == 0:
				delta_w = DELTA_W_FIRST if self._delta_w_last == 0 else max(DELTA_W_MIN, DELTA_W_DECREASE * self._delta_w_last)

			else:
				delta_w *= DELTA_W_FIRST_INCREASE if self._delta_w_last == 0 else DELTA_W_INCREASE

			if delta_w > DELTA_W_MAX:
				return None

	def _merit(self, ev, s, mu):
		return self._sigma * ev.f - mu * np.sum(np.log(s)) + self._nu * (np.sum(np.abs(ev.c_eq)) + np.sum(np.abs(ev.g + s)))

	def _fractionToBoundary(self, values, steps, tau):
		negative = steps < 0
		if not(np.any(negative)):
			return 1.0

		return float(min(1.0, np.min(-tau * values[negative] / steps[negative])))

	def _updateBFGS(self, z, z_new, ev, ev_new, y, lam):
		'''
		Damped (Powell) BFGS update of the Lagrangian Hessian approximation.
		'''

		step = z_new - z
		change = self._lagrangianGradient(ev_new, y, lam) - self._lagrangianGradient(ev, y, lam)

		b_step = self._bfgs @ step
		curvature = float(step @ b_step)
		if curvature <= 1e-16 * max(1.0, float(step @ step)):
			return

		product = float(step @ change)
		theta = 1.0 if product >= 0.2 * curvature else 0.8 * curvature / (curvature - product)
		r = theta * change + (1 - theta) * b_step

		self._bfgs = self._bfgs + np.outer(r, r) / float(step @ r) - np.outer(b_step, b_step) / curvature
		self._bfgs = 0.5 * (self._bfgs + self._bfgs.T)

	def _result(self, snapshot, iterations, status, message = None):
		ev = snapshot.evaluation
		sigma = self._sigma
		n_ineq = self._n_user_ineq
		n_lower = len(self._lower_rows)

		lam = snapshot.lam / sigma
		lower = np.zeros(self._problem.n)
		upper = np.zeros(self._problem.n)
		lower[self._lower_rows] = lam[n_ineq:n_ineq + n_lower]
		upper[self._upper_rows] = lam[n_ineq + n_lower:]

		stationarity, feasibility, complementarity = self._unscaledErrors(ev, snapshot.s, snapshot.y, snapshot.lam)

		return NlpResult(
			point = snapshot.z.copy(),
			objective = ev.f,
			eq_multipliers = snapshot.y / sigma,
			ineq_multipliers = lam[:n_ineq],
			lower_multipliers = lower,
			upper_multipliers = upper,
			kkt_residual = snapshot.error,
			stationarity = stationarity,
			feasibility = feasibility,
			complementarity = complementarity,
			iterations = iterations,
			status = status,
			objective_scale = sigma,
			message = message
		)

	def solve(self):
		'''
		Run the solver.

		Raises
		------
		SolverReusedError
			The instance has already been run.

		EvaluationError
			The problem cannot be evaluated at its initial point.

		Returns
		-------
		result : NlpResult
			Final iterate and multipliers, or the best iterate found when the solver did not converge.
		'''

		if self._used:
			raise SolverReusedError()

		self._used = True

		options = self._options
		problem = self._problem
		n = problem.n

		z = problem.x0.copy()
		if z.shape != (n,):
			raise ProblemDimensionError('x0', (n,), z.shape)

		try:
			ev = self._evaluate(z)

		except problem.evaluation_errors as e:
			raise EvaluationError('the problem', e)

		if not(ev.finite):
			raise EvaluationError('the problem')

		if ev.j_eq.shape != (len(ev.c_eq), n):
			raise ProblemDimensionError('equality Jacobian', (len(ev.c_eq), n), ev.j_eq.shape)

		self._n_user_ineq = len(problem.inequalities(z))
		if ev.j_g.shape != (len(ev.g), n):
			raise ProblemDimensionError('inequality Jacobian', (len(ev.g), n), ev.j_g.shape)

		gradient_norm = _infNorm(ev.grad)
		self._sigma = min(1.0, options.gradient_target / gradient_norm) if gradient_norm > 0 else 1.0

		if not(problem.has_hessian):
			initial = np.eye(n) if problem.initial_hessian is None else problem.initial_hessian
			self._bfgs = self._sigma * initial.copy()

		s = np.maximum(-ev.g, options.slack_floor)
		lam = self._mu / s
		y = np.zeros(len(ev.c_eq))

		if len(y) > 0:
			y = np.linalg.lstsq(ev.j_eq.T, -(self._sigma * ev.grad + ev.j_g.T @ lam), rcond = None)[0]
			if _infNorm(y) > LEAST_SQUARES_MAX:
				y = np.zeros(len(ev.c_eq))

		best = None

		for iteration in range(options.max_iter + 1):
			error = self._error(ev, s, y, lam, 0.0)

			if best is None or error < best.error:
				best = _Snapshot(z.copy(), s.copy(), y.copy(), lam.copy(), ev, error)

			logger.debug('iteration %d: error %.3e, mu %.1e, f %.6e', iteration, error, self._mu, ev.f)

			if self._converged(ev, s, y, lam, error):
				return self._result(_Snapshot(z, s, y, lam, ev, error), iteration, NlpStatus.CONVERGED)

			if iteration == options.max_iter:
				break

			floor = min(options.tol, options.compl_inf_tol * self._sigma) / 10
			while self._mu > floor and self._error(ev, s, y, lam, self._mu) <= BARRIER_KAPPA * self._mu:
				self._mu = max(floor, options.mu_factor * self._mu)

			mu = self._mu
			sigma_diag = lam / s
			r_p = ev.g + s

			h = self._hessian(z, ev, y, lam)
			h_condensed = h + ev.j_g.T @ (sigma_diag[:, None] * ev.j_g)
			rhs_z = -self._lagrangianGradient(ev, y, lam) - ev.j_g.T @ ((mu / s - lam) + sigma_diag * r_p)

			solution = self._solveKKT(h_condensed, ev.j_eq, rhs_z, -ev.c_eq)
			if solution is None:
				return self._result(best, iteration, NlpStatus.DIVERGED, 'inertia correction failed')

			dz, dy, delta_w = solution
			ds = -r_p - ev.j_g @ dz
			dlam = (mu / s - lam) + sigma_diag * r_p + sigma_diag * (ev.j_g @ dz)

			tau = max(options.tau, 1 - mu)
			alpha_primal = self._fractionToBoundary(s, ds, tau)
			alpha_dual = self._fractionToBoundary(lam, dlam, tau)

			infeasibility = np.sum(np.abs(ev.c_eq)) + np.sum(np.abs(r_p))
			barrier_slope = self._sigma * float(ev.grad @ dz) - mu * float(np.sum(ds / s))

			if infeasibility > 0:
				curvature = max(0.0, float(dz @ (h + delta_w * np.eye(n)) @ dz) + float(ds @ (sigma_diag * ds)))
				required = (barrier_slope + 0.5 * curvature) / ((1 - PENALTY_RHO) * infeasibility)
				if self._nu < required:
					self._nu = required + 1.0

			slope = barrier_slope - self._nu * infeasibility
			merit = self._merit(ev, s, mu)

			alpha = alpha_primal
			accepted = None
			last_trial = None

			for _ in range(options.max_backtracks):
				z_trial = z + alpha * dz
				s_trial = s + alpha * ds
				ev_trial = self._tryEvaluate(z_trial)

				if not(ev_trial is None):
					last_trial = (alpha, z_trial, s_trial, ev_trial)
					if self._merit(ev_trial, s_trial, mu) <= merit + ARMIJO_ETA * alpha * min(slope, 0.0):
						accepted = last_trial
						break

				alpha /= 2

			if accepted is None:
				if last_trial is None:
					return self._result(best, iteration + 1, NlpStatus.DIVERGED, 'line search failed')

				accepted = last_trial

			alpha, z_new, s_new, ev_new = accepted

			y_new = y + alpha * dy
			lam_new = lam + alpha_dual * dlam

			s_new = np.maximum(s_new, -ev_new.g)
			lam_new = np.clip(lam_new, mu / (MULTIPLIER_SAFEGUARD * s_new), MULTIPLIER_SAFEGUARD * mu / s_new)

			if not(problem.has_hessian):
				self._updateBFGS(z, z_new, ev, ev_new, y_new, lam_new)

			z, s, y, lam, ev = z_new, s_new, y_new, lam_new, ev_new

			if not(np.all(np.isfinite(z))) or _infNorm(z) > options.divergence_threshold:
				return self._result(best, iteration + 1, NlpStatus.DIVERGED, 'iterates diverged')

		return self._result(best, options.max_iter, NlpStatus.MAX_ITER, 'maximum number of iterations reached')

def _infNorm(a):
	a = np.asarray(a)
	return float(np.max(np.abs(a))) if a.size > 0 else 0.0

def minimize(problem, tol = None, max_iter = None, *, options = None):
	'''
	Find a first-order stationary point of a nonlinear program.

	Parameters
	----------
	problem : NlpProblem
		The problem.

	tol : float
		Tolerance on the KKT error, overriding the one of `options`.

	max_iter : int
		Maximum number of iterations, overriding the one of `options`.

	options : NlpOptions
		Other solver knobs.

	Returns
	-------
	result : NlpResult
		The outcome. A non-converged solve is reported through its status, not an exception.
	'''

	options = options or NlpOptions()

	changes = {}
	if not(tol is None):
		changes['tol'] = tol

	if not(max_iter is None):
		changes['max_iter'] = max_iter

	return InteriorPointSolver(problem, options.replace(**changes) if changes else options).solve()
