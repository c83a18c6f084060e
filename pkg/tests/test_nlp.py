#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import itertools
import math

import numpy as np
import pytest

from dlropf.nlp import *

def _circle(x0 = (-0.9, -0.3)):
	return NlpProblem(
		x0,
		lambda z: z[0] + z[1],
		lambda z: np.ones(2),
		equalities = lambda z: [z[0]**2 + z[1]**2 - 1],
		equality_jacobian = lambda z: [[2 * z[0], 2 * z[1]]]
	)

def _activeSetOptimum(q, c, a, b):
	'''
	Optimum of min ½zᵀQz + cᵀz s.t. Az ≤ b, by enumeration of the active sets.
	'''

	n, m = len(c), len(b)
	best = math.inf

	for size in range(m + 1):
		for active in itertools.combinations(range(m), size):
			active = list(active)
			kkt = np.block([[q, a[active].T], [a[active], np.zeros((size, size))]])
			try:
				solution = np.linalg.solve(kkt, np.concatenate([-c, b[active]]))

			except np.linalg.LinAlgError:
				continue

			z, lam = solution[:n], solution[n:]
			if np.all(a @ z <= b + 1e-9) and np.all(lam >= -1e-9):
				best = min(best, 0.5 * z @ q @ z + c @ z)

	return best

def test_unconstrainedQuadratic():
	problem = NlpProblem([0.0], lambda z: (z[0] - 3)**2, lambda z: [2 * (z[0] - 3)])
	result = minimize(problem, tol = 1e-8)

	assert result.converged
	assert result.point[0] == pytest.approx(3.0, abs = 1e-6)
	assert result.kkt_residual <= 1e-8

def test_circle():
	result = minimize(_circle())

	assert result.status is NlpStatus.CONVERGED
	assert np.allclose(result.point, [-math.sqrt(2) / 2] * 2, atol = 1e-5)
	assert result.eq_multipliers[0] == pytest.approx(math.sqrt(2) / 2, abs = 1e-4)

def test_activeBound():
	problem = NlpProblem([1.0], lambda z: (z[0] + 1)**2, lambda z: [2 * (z[0] + 1)], lower = [0.0])
	result = minimize(problem, tol = 1e-8)

	assert result.converged
	assert result.point[0] == pytest.approx(0.0, abs = 1e-6)
	assert result.lower_multipliers[0] == pytest.approx(2.0, abs = 1e-4)

def test_badlyScaledBound():
	problem = NlpProblem([3.0], lambda z: 1e5 * z[0]**2, lambda z: [2e5 * z[0]], lower = [1.0])
	result = minimize(problem)

	assert result.converged
	assert result.objective_scale < 1e-3
	assert result.point[0] == pytest.approx(1.0, abs = 1e-6)
	assert result.lower_multipliers[0] == pytest.approx(2e5, rel = 1e-4)
	assert result.stationarity <= NlpOptions().dual_inf_tol
	assert result.complementarity <= NlpOptions().compl_inf_tol

	strict = minimize(problem, options = NlpOptions(compl_inf_tol = 0.0, max_iter = 20))
	assert strict.status is NlpStatus.MAX_ITER

def test_randomConvexQPs():
	rng = np.random.default_rng(0)

	for _ in range(10):
		n = int(rng.integers(2, 7))
		m = int(rng.integers(1, 5))

		root = rng.normal(size = (n, n))
		q = root @ root.T + 0.1 * np.eye(n)
		c = rng.normal(size = n)
		a = rng.normal(size = (m, n))
		b = a @ rng.normal(size = n) + rng.uniform(0.1, 1.0, m)

		problem = NlpProblem(
			np.zeros(n),
			lambda z: 0.5 * z @ q @ z + c @ z,
			lambda z: q @ z + c,
			inequalities = lambda z: a @ z - b,
			inequality_jacobian = lambda z: a
		)

		result = minimize(problem, tol = 1e-9)
		expected = _activeSetOptimum(q, c, a, b)

		assert result.converged
		assert result.objective == pytest.approx(expected, abs = 1e-6 * max(1.0, abs(expected)))

def test_iterationCap():
	result = minimize(_circle(), max_iter = 1)
	assert result.status is NlpStatus.MAX_ITER
	assert result.iterations == 1

def test_exactHessian():
	problem = NlpProblem(
		[2.0, -1.0],
		lambda z: z[0]**4 + z[1]**2,
		lambda z: [4 * z[0]**3, 2 * z[1]],
		hessian = lambda z, sigma, y_eq, y_ineq: sigma * np.diag([12 * z[0]**2, 2.0])
	)

	assert problem.has_hessian
	result = minimize(problem, tol = 1e-8)
	assert result.converged
	assert np.allclose(result.point, 0, atol = 1e-2)

def test_evaluationErrorsBacktrack():
	problem = NlpProblem(
		[4.0],
		lambda z: z[0] - 2 * math.log(z[0]),
		lambda z: [1 - 2 / z[0]],
		evaluation_errors = (ValueError,)
	)

	result = minimize(problem, tol = 1e-8)
	assert result.converged
	assert result.point[0] == pytest.approx(2.0, abs = 1e-5)

def test_solverSingleUse():
	solver = InteriorPointSolver(_circle())
	solver.solve()

	with pytest.raises(SolverReusedError):
		solver.solve()

def test_invalidProblems():
	with pytest.raises(InvalidBoundsError):
		NlpProblem([0.0, 0.0], sum, np.ones_like, lower = [0.0, 1.0], upper = [1.0, 0.0])

	with pytest.raises(ProblemDimensionError):
		NlpProblem([0.0], sum, np.ones_like, equalities = lambda z: z)

	with pytest.raises(ProblemDimensionError):
		NlpProblem([0.0], sum, np.ones_like, lower = [0.0, 0.0])

def test_checkDerivatives():
	problem = NlpProblem(
		[0.5, -0.3],
		lambda z: z[0]**2 + 3 * z[0] * z[1],
		lambda z: [2 * z[0] + 3 * z[1], 3 * z[0]],
		inequalities = lambda z: [z[0]**2 - z[1]],
		inequality_jacobian = lambda z: [[2 * z[0], -1.0]]
	)

	assert checkDerivatives(problem, h = 1e-4) <= 1e-9

	corrupted = NlpProblem(problem.x0, problem.objective, lambda z: [2 * z[0] + 3 * z[1] + 0.1, 3 * z[0]])
	assert checkDerivatives(corrupted) > 1e-2
