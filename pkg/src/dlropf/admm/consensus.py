#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
from typing import List

import numpy as np

from .errors import *
from ..acopf import AcLayout, AcPeriodVars

KIND_GENERATOR = 'gen'
KIND_LINE = 'line'

@dataclasses.dataclass
class AdmmParams():
	'''
	Parameters of the bi-level decomposition.

	Parameters
	----------
	theta0 : float
		Initial outer penalty.

	gamma : float
		Penalty growth factor.

	omega : float
		Required decrease ratio of the slack norm between two outer iterations.

	eps : float
		Feasibility tolerance, per scaled coordinate.

	inner_cap : int
		Maximum number of inner iterations per outer iteration.

	outer_cap : int
		Maximum number of outer iterations.

	w_bound : float
		Bound of the outer duals, per scaled coordinate.

	workers : int
		Number of threads used by the parallel phases.
	'''

	theta0: float = 100.0
	gamma: float = 6.0
	omega: float = 0.6
	eps: float = 1e-4
	inner_cap: int = 200
	outer_cap: int = 25
	w_bound: float = 1e6
	workers: int = 1

	def __post_init__(self):
		for name in ['theta0', 'eps', 'w_bound']:
			if not(getattr(self, name) > 0):
				raise AdmmError(f'{name} must be positive, got {getattr(self, name)}')

		if not(self.gamma > 1):
			raise AdmmError(f'gamma must be greater than 1, got {self.gamma}')

		if not(0 < self.omega < 1):
			raise AdmmError(f'omega must be within (0, 1), got {self.omega}')

		for name in ['inner_cap', 'outer_cap', 'workers']:
			if getattr(self, name) < 1:
				raise AdmmError(f'{name} must be at least 1, got {getattr(self, name)}')

	def replace(self, **changes):
		return dataclasses.replace(self, **changes)

	def toDict(self):
		return dataclasses.asdict(self)

class SelectionMaps():
	'''
	Index maps of the consensus constraints Ax + By = 0, with A = −diag(κ)·(selection of x) and B = (selection of y).
	Coordinates are ordered by period, then generators, then screened lines.

	The y vector holds the generator dispatch block (generator-major, p.u.) followed by the screened line current block (line-major, (kA)²).

	Parameters
	----------
	case : NetworkCase
		The case.

	screened : list
		Branch indices of the lines whose current enters the consensus.
	'''

	def __init__(self, case, screened = ()):
		self.layout = AcLayout.fromCase(case)
		self.horizon = case.horizon
		self.generators = list(range(len(case.generators)))
		self.lines = list(screened)

		n_gens = len(self.generators)
		n_lines = len(self.lines)
		self.size = self.horizon * (n_gens + n_lines)

		kinds = []
		devices = []
		periods = []
		x_index = []
		y_index = []
		scales = []

		for t in range(self.horizon):
			for g in self.generators:
				kinds.append(KIND_GENERATOR)
				devices.append(g)
				periods.append(t)
				x_index.append(self.layout.index('p_g', g))
				y_index.append(g * self.horizon + t)
				scales.append(1.0)

			for row, line in enumerate(self.lines):
				kinds.append(KIND_LINE)
				devices.append(line)
				periods.append(t)
				x_index.append(self.layout.index('current_sq', line))
				y_index.append(n_gens * self.horizon + row * self.horizon + t)
				scales.append((case.branches[line].thermal.current_base / 1e3)**2)

		self.kinds = kinds
		self.devices = np.array(devices, dtype = int)
		self.periods = np.array(periods, dtype = int)
		self.x_index = np.array(x_index, dtype = int)
		self.y_index = np.array(y_index, dtype = int)
		self.scales = np.array(scales, dtype = float)

		self._period_slices = [slice(t * (n_gens + n_lines), (t + 1) * (n_gens + n_lines)) for t in range(self.horizon)]
		self._y_order = self.y_index.argsort()

	@property
	def d(self):
		'''
		Number of consensus coordinates.
		'''

		return self.size

	def periodCoordinates(self, t):
		'''
		Slice of the coordinates of a period.
		'''

		return self._period_slices[t]

	def generatorBlock(self, g):
		'''
		Slice of the y vector holding the dispatch of a generator.
		'''

		return slice(g * self.horizon, (g + 1) * self.horizon)

	def lineBlock(self, row):
		'''
		Slice of the y vector holding the currents of the `row`-th screened line.
		'''

		start = len(self.generators) * self.horizon + row * self.horizon
		return slice(start, start + self.horizon)

	def yCoordinates(self, block):
		'''
		Consensus coordinates of a block of the y vector, in the order of the block.
		'''

		return self._y_order[block]

	def couplingTarget(self, state, coordinates):
		'''
		Unconstrained minimizer κx − u − v/ρ of the coupling terms over the y entries of some coordinates.
		'''

		x_values = np.array([state.xs[self.periods[k]][self.x_index[k]] for k in coordinates])
		return self.scales[coordinates] * x_values - state.u[coordinates] - state.v[coordinates] / state.rho

	def gatherX(self, xs):
		'''
		Scaled values κ·x of the coupled AC variables.

		Parameters
		----------
		xs : list
			Flat vector of each period.

		Returns
		-------
		values : numpy.ndarray
			One value per consensus coordinate.
		'''

		values = np.empty(self.size)
		for t in range(self.horizon):
			s = self._period_slices[t]
			values[s] = self.scales[s] * np.asarray(xs[t])[self.x_index[s]]

		return values

	def gatherY(self, y):
		'''
		Values of the y vector in consensus order.
		'''

		return np.asarray(y)[self.y_index]

	def scatterY(self, values):
		'''
		Inverse of `gatherY()`.
		'''

		y = np.empty(self.size)
		y[self.y_index] = values
		return y

	def residual(self, xs, y):
		'''
		Consensus residual Ax + By.
		'''

		return -self.gatherX(xs) + self.gatherY(y)

	def describe(self):
		'''
		Coordinate table, stored in reports to recompute residuals.

		Returns
		-------
		coordinates : list
			One dict per coordinate.
		'''

		return [
			{
				'kind': self.kinds[k],
				'device': int(self.devices[k]),
				'period': int(self.periods[k]),
				'x_index': int(self.x_index[k]),
				'y_index': int(self.y_index[k]),
				'scale': float(self.scales[k])
			}
			for k in range(self.size)
		]

@dataclasses.dataclass
class ConsensusState():
	'''
	Iterate of the decomposition.

	Parameters
	----------
	xs : list
		Flat AC vector of each period.

	y : numpy.ndarray
		Temporal variables: dispatch (p.u.) and screened line currents ((kA)²).

	temps : dict
		End-of-period temperatures of each screened line, indexed by branch index.

	u, v, w : numpy.ndarray
		Slacks, inner duals and outer duals.

	theta, rho : float
		Outer and inner penalties.

	k, r : int
		Outer and inner iteration indices.
	'''

	xs: List[np.ndarray]
	y: np.ndarray
	temps: dict
	u: np.ndarray
	v: np.ndarray
	w: np.ndarray
	theta: float
	rho: float
	k: int = 0
	r: int = 0

	def entryInvariant(self):
		'''
		Violation of w + θu + v = 0 and ρ = 2θ.
		'''

		return max(
			float(np.max(np.abs(self.w + self.theta * self.u + self.v), initial = 0.0)),
			abs(self.rho - 2 * self.theta)
		)

def buildConsensus(case, scheme, *, screened = None, theta0 = 100.0):
	'''
	Selection maps and initial state. The AC variables start flat and the temporal variables copy them, so that the initial residual is zero.

	Parameters
	----------
	case : NetworkCase
		The case.

	scheme : RatingScheme
		The rating scheme. Only the transient scheme couples line currents.

	screened : list
		Branch indices of the screened lines.

	theta0 : float
		Initial outer penalty.

	Returns
	-------
	maps : SelectionMaps
		The maps.

	state : ConsensusState
		The state.
	'''

	lines = list(screened or []) if scheme.transient else []
	maps = SelectionMaps(case, lines)

	x0 = AcPeriodVars.flatStart(case).toVector(maps.layout)
	xs = [x0.copy() for t in range(case.horizon)]
	y = maps.scatterY(maps.gatherX(xs))

	return maps, ConsensusState(
		xs = xs,
		y = y,
		temps = {},
		u = np.zeros(maps.d),
		v = np.zeros(maps.d),
		w = np.zeros(maps.d),
		theta = theta0,
		rho = 2 * theta0
	)

def updateSlack(state, maps):
	'''
	Slack minimizing the augmented Lagrangian, u = (−v − w − ρ(Ax + By))/(ρ + θ).

	Returns
	-------
	u : numpy.ndarray
		The slack.
	'''

	residual = maps.residual(state.xs, state.y)
	return (-state.v - state.w - state.rho * residual) / (state.rho + state.theta)

def nextPenalty(theta, u_norm, previous_u_norm, gamma, omega):
	'''
	Outer penalty of the next iteration: multiplied by γ when the slack norm did not decrease by the factor ω.

	Parameters
	----------
	theta : float
		Current penalty.

	u_norm : float
		Slack norm at the end of this outer iteration.

	previous_u_norm : float
		Slack norm at the end of the previous one, None on the first iteration.

	Returns
	-------
	theta : float
		The new penalty.
	'''

	if previous_u_norm is None:
		return theta

	return gamma * theta if u_norm >= omega * previous_u_norm else theta
