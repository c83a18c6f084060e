#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import math
from typing import List, Tuple

import numpy as np

from .errors import *
from .layout import AcLayout, AcPeriodVars

EQUALITY_FAMILIES = ['p_balance', 'q_balance', 'current_re', 'current_im', 'current_sq', 'reference_angle']
INEQUALITY_FAMILIES = ['voltage_min', 'voltage_max', 'angle_cos', 'angle_min', 'angle_max', 'p_min', 'p_max', 'q_min', 'q_max', 'reference_sign', 'current_cap']

def _quadratic(tensor, v):
	return np.einsum('kij,i,j->k', tensor, v, v)

def _quadraticJacobian(tensor, v):
	return 2 * np.einsum('kij,j->ki', tensor, v)

@dataclasses.dataclass
class AcResiduals():
	'''
	Constraint residuals of one period and their Jacobians. Inequalities are violated where positive.

	Parameters
	----------
	equalities : numpy.ndarray
		Equality residuals.

	inequalities : numpy.ndarray
		Inequality residuals.

	eq_jacobian, ineq_jacobian : numpy.ndarray
		Jacobians with respect to the flat vector of the period.

	eq_families, ineq_families : list
		(name, slice) of each constraint family in the residual vectors.
	'''

	equalities: np.ndarray
	inequalities: np.ndarray
	eq_jacobian: np.ndarray
	ineq_jacobian: np.ndarray
	eq_families: List[Tuple[str, slice]]
	ineq_families: List[Tuple[str, slice]]

	@property
	def max_violation(self):
		'''
		Largest equality residual or positive inequality residual.
		'''

		values = [np.max(np.abs(self.equalities), initial = 0.0), np.max(self.inequalities, initial = 0.0)]
		return float(max(values))

class AcModel():
	'''
	AC constraints of a case in rectangular coordinates.
	Power injections, the angle terms C_ij = e_i·e_j + f_i·f_j and S_ij = f_i·e_j − e_i·f_j, and the squared voltages are quadratic forms of v = (e, f); values, Jacobians and Hessians follow from constant symmetric matrices.

	Parameters
	----------
	case : NetworkCase
		The case.
	'''

	def __init__(self, case):
		self._case = case
		self.layout = AcLayout.fromCase(case)

		n = len(case.buses)
		n_branches = len(case.branches)
		n_gens = len(case.generators)
		self._n = n

		ybus = case.admittanceMatrix()
		g, b = ybus.real, ybus.imag

		self._m_p = np.zeros((n, 2 * n, 2 * n))
		self._m_q = np.zeros((n, 2 * n, 2 * n))

		for i in range(n):
			a_p = np.zeros((2 * n, 2 * n))
			a_p[i, :n] = g[i]
			a_p[i, n:] = -b[i]
			a_p[n + i, n:] = g[i]
			a_p[n + i, :n] = b[i]
			self._m_p[i] = 0.5 * (a_p + a_p.T)

			a_q = np.zeros((2 * n, 2 * n))
			a_q[n + i, :n] = g[i]
			a_q[n + i, n:] = -b[i]
			a_q[i, n:] = -g[i]
			a_q[i, :n] = -b[i]
			self._m_q[i] = 0.5 * (a_q + a_q.T)

		self._m_c = np.zeros((n_branches, 2 * n, 2 * n))
		self._m_s = np.zeros((n_branches, 2 * n, 2 * n))
		self._l_re = np.zeros((n_branches, 2 * n))
		self._l_im = np.zeros((n_branches, 2 * n))

		for k, branch in enumerate(case.branches):
			i = case.busIndex(branch.from_bus)
			j = case.busIndex(branch.to_bus)

			for p, q in [(i, j), (n + i, n + j)]:
				self._m_c[k, p, q] += 0.5
				self._m_c[k, q, p] += 0.5

			self._m_s[k, n + i, j] += 0.5
			self._m_s[k, j, n + i] += 0.5
			self._m_s[k, i, n + j] -= 0.5
			self._m_s[k, n + j, i] -= 0.5

			conductance, susceptance = branch.conductance, branch.susceptance
			self._l_re[k, [i, j, n + i, n + j]] = [conductance, -conductance, -susceptance, susceptance]
			self._l_im[k, [n + i, n + j, i, j]] = [conductance, -conductance, susceptance, -susceptance]

		self._gen_incidence = np.zeros((n, n_gens))
		for k, gen in enumerate(case.generators):
			self._gen_incidence[case.busIndex(gen.bus), k] = 1.0

		self._tan_min = np.array([math.tan(branch.angle_min) for branch in case.branches])
		self._tan_max = np.array([math.tan(branch.angle_max) for branch in case.branches])
		self._v_min_sq = np.array([bus.v_min**2 for bus in case.buses])
		self._v_max_sq = np.array([bus.v_max**2 for bus in case.buses])

		gens = case.generators
		self._p_min = np.array([gen.p_min for gen in gens])
		self._p_max = np.array([gen.p_max for gen in gens])
		self._q_min = np.array([gen.q_min for gen in gens])
		self._q_max = np.array([gen.q_max for gen in gens])
		self._c2 = np.array([gen.c2 for gen in gens])
		self._c1 = np.array([gen.c1 for gen in gens])
		self._c0 = np.array([gen.c0 for gen in gens])

		self._static_caps = np.array([np.nan if branch.current_limit_sq is None else branch.current_limit_sq for branch in case.branches])
		self.reference_bus = case.reference_bus

	@property
	def case(self):
		return self._case

	def effectiveCaps(self, caps = None):
		'''
		Current caps (p.u.²) of every branch: the smaller of the static limit and the given cap, NaN when neither exists.

		Parameters
		----------
		caps : numpy.ndarray
			Caps of each branch for the period, NaN where there is none.

		Returns
		-------
		caps : numpy.ndarray
			The effective caps.
		'''

		if caps is None:
			return self._static_caps.copy()

		caps = np.asarray(caps, dtype = float)
		if caps.shape != self._static_caps.shape:
			raise DimensionMismatchError('caps', len(self._static_caps), len(caps))

		return np.fmin(caps, self._static_caps)

	def _checkPeriod(self, t):
		if not(0 <= t < self._case.horizon):
			raise PeriodOutOfRangeError(t, self._case.horizon)

	def _split(self, x):
		layout = self.layout
		return x[layout.voltages], x[layout['p_g']], x[layout['q_g']], x[layout['i_re']], x[layout['i_im']], x[layout['current_sq']]

	def cost(self, x):
		'''
		Generation cost, in $/h.
		'''

		p_mw = self._case.base_mva * x[self.layout['p_g']]
		return float(np.sum(self._c2 * p_mw**2 + self._c1 * p_mw + self._c0))

	def costGradient(self, x):
		base = self._case.base_mva
		gradient = np.zeros(self.layout.size)
		gradient[self.layout['p_g']] = 2 * self._c2 * base**2 * x[self.layout['p_g']] + self._c1 * base
		return gradient

	def costHessian(self):
		base = self._case.base_mva
		hessian = np.zeros((self.layout.size, self.layout.size))
		rows = np.arange(self.layout['p_g'].start, self.layout['p_g'].stop)
		hessian[rows, rows] = 2 * self._c2 * base**2
		return hessian

	def eqFamilies(self):
		n, nb = self._n, len(self._case.branches)
		sizes = [n, n, nb, nb, nb, 1]
		return _families(EQUALITY_FAMILIES, sizes)

	def ineqFamilies(self, caps = None):
		n, nb, ng = self._n, len(self._case.branches), len(self._case.generators)
		n_caps = int(np.sum(np.isfinite(self.effectiveCaps(caps))))
		sizes = [n, n, nb, nb, nb, ng, ng, ng, ng, 1, n_caps]
		return _families(INEQUALITY_FAMILIES, sizes)

	def equalities(self, x, t):
		'''
		Power balances, current definitions and the reference angle of period `t`.
		'''

		self._checkPeriod(t)
		v, p_g, q_g, i_re, i_im, current_sq = self._split(x)

		return np.concatenate([
			self._gen_incidence @ p_g - self._case.demand_p[:, t] - _quadratic(self._m_p, v),
			self._gen_incidence @ q_g - self._case.demand_q[:, t] - _quadratic(self._m_q, v),
			i_re - self._l_re @ v,
			i_im - self._l_im @ v,
			current_sq - i_re**2 - i_im**2,
			[v[self._n + self.reference_bus]]
		])

	def equalityJacobian(self, x):
		layout = self.layout
		n, nb = self._n, len(self._case.branches)
		v, _, _, i_re, i_im, _ = self._split(x)

		jacobian = np.zeros((2 * n + 3 * nb + 1, layout.size))
		voltages = layout.voltages
		rows = _families(EQUALITY_FAMILIES, [n, n, nb, nb, nb, 1])
		r = dict(rows)

		jacobian[r['p_balance'], voltages] = -_quadraticJacobian(self._m_p, v)
		jacobian[r['p_balance'], layout['p_g']] = self._gen_incidence
		jacobian[r['q_balance'], voltages] = -_quadraticJacobian(self._m_q, v)
		jacobian[r['q_balance'], layout['q_g']] = self._gen_incidence

		jacobian[r['current_re'], voltages] = -self._l_re
		jacobian[r['current_re'], layout['i_re']] = np.eye(nb)
		jacobian[r['current_im'], voltages] = -self._l_im
		jacobian[r['current_im'], layout['i_im']] = np.eye(nb)

		jacobian[r['current_sq'], layout['current_sq']] = np.eye(nb)
		jacobian[r['current_sq'], layout['i_re']] = np.diag(-2 * i_re)
		jacobian[r['current_sq'], layout['i_im']] = np.diag(-2 * i_im)

		jacobian[r['reference_angle'].start, layout.index('f', self.reference_bus)] = 1.0

		return jacobian

	def inequalities(self, x, caps = None):
		'''
		Voltage, angle, generation and current limits, nonpositive when satisfied.
		'''

		v, p_g, q_g, _, _, current_sq = self._split(x)
		n = self._n
		voltage_sq = v[:n]**2 + v[n:]**2
		c = _quadratic(self._m_c, v)
		s = _quadratic(self._m_s, v)

		caps = self.effectiveCaps(caps)
		capped = np.flatnonzero(np.isfinite(caps))

		return np.concatenate([
			self._v_min_sq - voltage_sq,
			voltage_sq - self._v_max_sq,
			-c,
			self._tan_min * c - s,
			s - self._tan_max * c,
			self._p_min - p_g,
			p_g - self._p_max,
			self._q_min - q_g,
			q_g - self._q_max,
			[-v[self.reference_bus]],
			current_sq[capped] - caps[capped]
		])

	def inequalityJacobian(self, x, caps = None):
		layout = self.layout
		n, nb, ng = self._n, len(self._case.branches), len(self._case.generators)
		v = x[layout.voltages]

		families = self.ineqFamilies(caps)
		r = dict(families)
		jacobian = np.zeros((families[-1][1].stop, layout.size))
		voltages = layout.voltages

		voltage_gradient = np.zeros((n, 2 * n))
		voltage_gradient[np.arange(n), np.arange(n)] = 2 * v[:n]
		voltage_gradient[np.arange(n), n + np.arange(n)] = 2 * v[n:]

		jacobian[r['voltage_min'], voltages] = -voltage_gradient
		jacobian[r['voltage_max'], voltages] = voltage_gradient

		c_jacobian = _quadraticJacobian(self._m_c, v)
		s_jacobian = _quadraticJacobian(self._m_s, v)
		jacobian[r['angle_cos'], voltages] = -c_jacobian
		jacobian[r['angle_min'], voltages] = self._tan_min[:, None] * c_jacobian - s_jacobian
		jacobian[r['angle_max'], voltages] = s_jacobian - self._tan_max[:, None] * c_jacobian

		jacobian[r['p_min'], layout['p_g']] = -np.eye(ng)
		jacobian[r['p_max'], layout['p_g']] = np.eye(ng)
		jacobian[r['q_min'], layout['q_g']] = -np.eye(ng)
		jacobian[r['q_max'], layout['q_g']] = np.eye(ng)

		jacobian[r['reference_sign'].start, layout.index('e', self.reference_bus)] = -1.0

		capped = np.flatnonzero(np.isfinite(self.effectiveCaps(caps)))
		jacobian[r['current_cap'].start + np.arange(len(capped)), layout['current_sq'].start + capped] = 1.0

		return jacobian

	def constraintHessian(self, y_eq, y_ineq, caps = None):
		'''
		Hessian of y_eqᵀ·c_E + y_ineqᵀ·c_I. Every constraint is at most quadratic, so the result does not depend on the point.

		Parameters
		----------
		y_eq : numpy.ndarray
			Weights of the equalities.

		y_ineq : numpy.ndarray
			Weights of the inequalities.

		caps : numpy.ndarray
			Current caps, as given to `inequalities()`.

		Returns
		-------
		hessian : numpy.ndarray
			The Hessian with respect to the flat vector of the period.
		'''

		layout = self.layout
		n = self._n
		eq = {name: y_eq[s] for name, s in self.eqFamilies()}
		ineq = {name: y_ineq[s] for name, s in self.ineqFamilies(caps)}

		voltage_block = -2 * np.einsum('k,kij->ij', eq['p_balance'], self._m_p)
		voltage_block -= 2 * np.einsum('k,kij->ij', eq['q_balance'], self._m_q)
		voltage_block -= 2 * np.einsum('k,kij->ij', ineq['angle_cos'], self._m_c)
		voltage_block += 2 * np.einsum('k,kij->ij', ineq['angle_min'] * self._tan_min - ineq['angle_max'] * self._tan_max, self._m_c)
		voltage_block += 2 * np.einsum('k,kij->ij', ineq['angle_max'] - ineq['angle_min'], self._m_s)

		voltage_weights = 2 * (ineq['voltage_max'] - ineq['voltage_min'])
		voltage_block[np.arange(2 * n), np.arange(2 * n)] += np.concatenate([voltage_weights, voltage_weights])

		hessian = np.zeros((layout.size, layout.size))
		hessian[layout.voltages, layout.voltages] = voltage_block

		for name in ['i_re', 'i_im']:
			rows = np.arange(layout[name].start, layout[name].stop)
			hessian[rows, rows] = -2 * eq['current_sq']

		return hessian

def _families(names, sizes):
	offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
	return [(name, slice(int(offsets[k]), int(offsets[k + 1]))) for k, name in enumerate(names)]

def acResiduals(vars, case, t, *, caps = None, model = None):
	'''
	Residuals of the AC constraints of one period and their Jacobians.

	Parameters
	----------
	vars : AcPeriodVars
		The variables.

	case : NetworkCase
		The case.

	t : int
		Period index.

	caps : numpy.ndarray
		Current caps of each branch (p.u.²), NaN where there is none.

	model : AcModel
		Prebuilt model of the case.

	Raises
	------
	DimensionMismatchError
		The variables do not match the case.

	Returns
	-------
	residuals : AcResiduals
		Residuals and Jacobians.
	'''

	model = model or AcModel(case)
	x = vars.toVector(model.layout)

	return AcResiduals(
		equalities = model.equalities(x, t),
		inequalities = model.inequalities(x, caps),
		eq_jacobian = model.equalityJacobian(x),
		ineq_jacobian = model.inequalityJacobian(x, caps),
		eq_families = model.eqFamilies(),
		ineq_families = model.ineqFamilies(caps)
	)

def angleResidual(vars, branch, case):
	'''
	Angle difference limit of a branch as θ_min ≤ φ_i − φ_j ≤ θ_max with C_ij ≥ 0, written with tangents.

	Parameters
	----------
	vars : AcPeriodVars
		The variables.

	branch : Branch
		The branch.

	case : NetworkCase
		The case the branch belongs to.

	Returns
	-------
	residuals : numpy.ndarray
		(−C_ij, tan(θ_min)·C_ij − S_ij, S_ij − tan(θ_max)·C_ij), positive where violated.
	'''

	i = case.busIndex(branch.from_bus)
	j = case.busIndex(branch.to_bus)

	c = vars.e[i] * vars.e[j] + vars.f[i] * vars.f[j]
	s = vars.f[i] * vars.e[j] - vars.e[i] * vars.f[j]

	return np.array([-c, math.tan(branch.angle_min) * c - s, s - math.tan(branch.angle_max) * c])

def residualDump(vars, case, t, *, caps = None, model = None):
	'''
	Residuals grouped by constraint family, for diagnostics.

	Returns
	-------
	dump : dict
		For each family, its kind, largest violation and residual values.
	'''

	residuals = acResiduals(vars, case, t, caps = caps, model = model)
	dump = {}

	for name, rows in residuals.eq_families:
		values = residuals.equalities[rows]
		dump[name] = {'kind': 'equality', 'max_violation': float(np.max(np.abs(values), initial = 0.0)), 'values': values.tolist()}

	for name, rows in residuals.ineq_families:
		values = residuals.inequalities[rows]
		dump[name] = {'kind': 'inequality', 'max_violation': float(np.max(values, initial = 0.0)), 'values': values.tolist()}

	return dump
