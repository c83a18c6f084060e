#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from dlropf.acopf import *
from dlropf.network import buildFixture, caseFromDict
from dlropf.nlp import centralJacobian

def _transferCase(p = 0.0, q = 0.0):
	return caseFromDict({
		'base_mva': 100.0,
		'dt_seconds': 300.0,
		'horizon': 1,
		'buses': [{'id': 'a', 'reference': True}, {'id': 'b'}],
		'branches': [{'id': 'ab', 'from_bus': 'a', 'to_bus': 'b', 'series_resistance': 0.0, 'series_reactance': 0.1}],
		'generators': [{'id': 'g', 'bus': 'a', 'c1': 10.0, 'p_min': 0.0, 'p_max': 2.0, 'q_min': -2.0, 'q_max': 2.0, 'ramp_up': 2.0, 'ramp_down': 2.0}],
		'demand': {'b': [{'p': p, 'q': q}]}
	})

def _randomPoint(model, rng):
	return rng.uniform(-1.0, 1.0, model.layout.size)

def test_layout(case9):
	layout = AcLayout.fromCase(case9)
	assert layout.size == 2 * 9 + 2 * 4 + 3 * 9
	assert layout.index('p_g', 0) == 18
	assert layout.voltages == slice(0, 18)

def test_varsVectorRoundTrip(case9):
	layout = AcLayout.fromCase(case9)
	vars = AcPeriodVars.flatStart(case9)
	assert np.array_equal(AcPeriodVars.fromVector(layout, vars.toVector(layout)).toVector(layout), vars.toVector(layout))

	with pytest.raises(DimensionMismatchError):
		AcPeriodVars.fromVector(layout, np.zeros(3))

def test_zeroInjection():
	case = _transferCase()
	vars = AcPeriodVars.flatStart(case)
	vars.p_g[:] = 0
	vars.q_g[:] = 0

	assert np.allclose(acResiduals(vars, case, 0).equalities, 0)

def test_analyticTransfer():
	delta = math.asin(0.1)
	case = _transferCase(p = 1.0, q = -10 * (1 - math.cos(delta)))

	e = np.array([1.0, math.cos(delta)])
	f = np.array([0.0, -math.sin(delta)])
	current = -10j * (complex(e[0], f[0]) - complex(e[1], f[1]))

	vars = AcPeriodVars(
		e = e, f = f,
		p_g = np.array([1.0]), q_g = np.array([10 * (1 - math.cos(delta))]),
		i_re = np.array([current.real]), i_im = np.array([current.imag]),
		current_sq = np.array([abs(current)**2])
	)

	residuals = acResiduals(vars, case, 0)
	assert np.max(np.abs(residuals.equalities)) <= 1e-12
	assert residuals.max_violation <= 1e-12

def test_jacobians(case9):
	rng = np.random.default_rng(0)
	model = AcModel(case9)
	caps = np.full(len(case9.branches), 2.0)

	for _ in range(5):
		x = _randomPoint(model, rng)

		eq = centralJacobian(lambda z: model.equalities(z, 1), x)
		assert np.max(np.abs(model.equalityJacobian(x) - eq)) <= 1e-6 * max(1.0, np.max(np.abs(eq)))

		ineq = centralJacobian(lambda z: model.inequalities(z, caps), x)
		assert np.max(np.abs(model.inequalityJacobian(x, caps) - ineq)) <= 1e-6 * max(1.0, np.max(np.abs(ineq)))

def test_constraintHessian(case9):
	rng = np.random.default_rng(1)
	model = AcModel(case9)
	x = _randomPoint(model, rng)

	y_eq = rng.normal(size = len(model.equalities(x, 0)))
	y_ineq = rng.uniform(0, 1, len(model.inequalities(x)))

	def gradient(z):
		return model.equalityJacobian(z).T @ y_eq + model.inequalityJacobian(z).T @ y_ineq

	reference = centralJacobian(gradient, x)
	assert np.max(np.abs(model.constraintHessian(y_eq, y_ineq) - reference)) <= 1e-6 * max(1.0, np.max(np.abs(reference)))

def test_families(case9):
	model = AcModel(case9)
	x = AcPeriodVars.flatStart(case9).toVector(model.layout)
	caps = np.full(len(case9.branches), np.nan)
	caps[1] = 1.0

	assert model.eqFamilies()[-1][1].stop == len(model.equalities(x, 0))
	assert model.ineqFamilies(caps)[-1][1].stop == len(model.inequalities(x, caps))
	assert model.ineqFamilies(caps)[-1][1].stop == model.ineqFamilies()[-1][1].stop + 1

def test_periodOutOfRange(case2):
	model = AcModel(case2)
	with pytest.raises(PeriodOutOfRangeError):
		model.equalities(np.zeros(model.layout.size), 2)

def test_flatAngle(case2):
	vars = AcPeriodVars.flatStart(case2)
	assert np.all(angleResidual(vars, case2.branches[0], case2) <= 0)

def test_angleAtLimit():
	case = _transferCase()
	branch = case.branches[0]
	vars = AcPeriodVars.flatStart(case)
	vars.e[0], vars.f[0] = math.cos(branch.angle_max), math.sin(branch.angle_max)

	assert angleResidual(vars, branch, case)[2] == pytest.approx(0.0, abs = 1e-12)

def test_singlePeriodDispatch(case2):
	solution = solveAcSubproblem(AcSubproblemSpec(period = 0), case2)
	g1, g2 = solution.vars.p_g

	assert g2 == pytest.approx(0.0, abs = 1e-4)
	assert case2.demand_p[1, 0] <= g1 <= case2.demand_p[1, 0] + 0.02
	assert solution.cost == pytest.approx(0.01 * (100 * g1)**2 + 10 * 100 * g1 + 40 * 100 * g2)
	assert solution.coupling == 0.0
	assert acResiduals(solution.vars, case2, 0).max_violation <= 1e-5

def test_capForcesLocalGeneration(case2):
	free = solveAcSubproblem(AcSubproblemSpec(period = 0), case2)
	capped = solveAcSubproblem(AcSubproblemSpec(period = 0, caps = np.array([0.3])), case2)

	assert capped.vars.current_sq[0] <= 0.3 + 1e-6
	assert capped.vars.p_g[1] > 0.1
	assert capped.cost > free.cost

def test_penaltyPinsTarget(case2):
	layout = AcLayout.fromCase(case2)
	previous = solveAcSubproblem(AcSubproblemSpec(period = 0), case2)

	spec = AcSubproblemSpec(
		period = 0,
		rho = 1e6,
		indices = [layout.index('p_g', 0), layout.index('p_g', 1)],
		scales = [1.0, 1.0],
		targets = previous.vars.p_g,
		duals = [0.0, 0.0],
		warm_start = previous.vars
	)

	solution = solveAcSubproblem(spec, case2)
	assert np.allclose(solution.vars.p_g, previous.vars.p_g, atol = 1e-4)

def test_infeasibleDemand():
	case = buildFixture('case2', 'windy-cool', horizon = 1, load_factor = 10.0)
	with pytest.raises(SubproblemFailure):
		solveAcSubproblem(AcSubproblemSpec(period = 0), case)

def test_specDimensions():
	with pytest.raises(DimensionMismatchError):
		AcSubproblemSpec(period = 0, indices = [0, 1], scales = [1.0], targets = [0.0, 0.0], duals = [0.0, 0.0])

def test_residualDump(case2):
	solution = solveAcSubproblem(AcSubproblemSpec(period = 0), case2)
	dump = residualDump(solution.vars, case2, 0)

	assert set(EQUALITY_FAMILIES) | set(INEQUALITY_FAMILIES) == set(dump)
	assert all(entry['max_violation'] <= 1e-5 for entry in dump.values())
