#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import logging

import cvxpy as cp
import numpy as np
import scipy.optimize

from .errors import *
from ..acopf import SubproblemFailure
from ..network import toPhysicalCurrentSq
from ..nlp import NlpProblem, NlpOptions, minimize
from ..ratings import RatingScheme, RatingKind, lineConvections
from ..thermal import ThermalError, simulateSchedule, flowMapJacobian, maxSteadyCurrentSq

logger = logging.getLogger(__name__)

AMPERES_SQ_PER_KA_SQ = 1e6

class RampProjector():
	'''
	Euclidean projection of a dispatch profile onto the box and ramp bands of a generator.
	The quadratic program is built once and solved again for each new target.

	Parameters
	----------
	generator : Generator
		The generator.

	horizon : int
		Number of periods.
	'''

	def __init__(self, generator, horizon):
		self.generator = generator
		self.horizon = horizon

		self._p = cp.Variable(horizon)
		self._target = cp.Parameter(horizon)

		constraints = [self._p >= generator.p_min, self._p <= generator.p_max]
		if horizon > 1 and not(generator.renewable):
			ramp = self._p[1:] - self._p[:-1]
			constraints += [ramp <= generator.ramp_up, ramp >= -generator.ramp_down]

		self._problem = cp.Problem(cp.Minimize(cp.sum_squares(self._p - self._target)), constraints)

	def isFeasible(self, profile, tol = 1e-9):
		'''
		Whether a profile already satisfies the box and ramp bands.
		'''

		g = self.generator
		if np.any(profile < g.p_min - tol) or np.any(profile > g.p_max + tol):
			return False

		if g.renewable or self.horizon == 1:
			return True

		ramps = np.diff(profile)
		return bool(np.all(ramps <= g.ramp_up + tol) and np.all(ramps >= -g.ramp_down - tol))

	def project(self, target):
		'''
		Nearest feasible profile.

		Parameters
		----------
		target : numpy.ndarray
			Profile to project, p.u.

		Returns
		-------
		profile : numpy.ndarray
			The projection.
		'''

		target = np.asarray(target, dtype = float)
		if self.isFeasible(target):
			return target.copy()

		if self.generator.renewable or self.horizon == 1:
			return np.clip(target, self.generator.p_min, self.generator.p_max)

		self._target.value = target
		self._problem.solve(solver = cp.CLARABEL)

		if self._p.value is None:
			raise AdmmError(f'ramp projection of {self.generator.id} failed ({self._problem.status})')

		return np.clip(np.asarray(self._p.value, dtype = float), self.generator.p_min, self.generator.p_max)

def solveRampSubproblem(g, state, maps, projector):
	'''
	y-update of a generator: the profile minimizing the coupling terms, i.e. the projection of κx − u − v/ρ.

	Parameters
	----------
	g : int
		Generator index.

	state : ConsensusState
		Current iterate, with the x-update of this inner iteration done.

	maps : SelectionMaps
		Selection maps.

	projector : RampProjector
		Projector of the generator.

	Returns
	-------
	profile : numpy.ndarray
		The new dispatch block of y.
	'''

	return projector.project(maps.couplingTarget(state, maps.yCoordinates(maps.generatorBlock(g))))

@dataclasses.dataclass
class LineThermal():
	'''
	What the temperature subproblem of a screened line needs.

	Parameters
	----------
	line : int
		Branch index.

	branch : Branch
		The line.

	weathers : list
		Actual weather of each period.

	lins : list
		Convection fit of each period.

	dt : float
		Length of a period, in s.
	'''

	line: int
	branch: object
	weathers: list
	lins: list
	dt: float

	@classmethod
	def fromCase(cls, case, line):
		weathers, lins = lineConvections(case, line, RatingScheme(RatingKind.DLR_TRANS))
		return cls(line = line, branch = case.branches[line], weathers = weathers, lins = lins, dt = case.dt)

	@property
	def params(self):
		return self.branch.thermal.conductor

	@property
	def initial_temp(self):
		return self.branch.thermal.initial_temp

	@property
	def t_max(self):
		return self.params.max_temperature

	def temperatures(self, current_sq_ka):
		'''
		End-of-period temperatures for currents in (kA)².
		'''

		currents = np.maximum(np.asarray(current_sq_ka, dtype = float), 0.0) * AMPERES_SQ_PER_KA_SQ
		return simulateSchedule(self.initial_temp, currents, self.weathers, self.params, self.lins, self.dt)

	def jacobian(self, current_sq_ka):
		'''
		Temperatures and their Jacobian with respect to the currents in (kA)².
		'''

		currents = np.maximum(np.asarray(current_sq_ka, dtype = float), 0.0) * AMPERES_SQ_PER_KA_SQ
		temps, jacobian = flowMapJacobian(self.initial_temp, currents, self.weathers, self.params, self.lins, self.dt)
		return temps, jacobian[:, 1:] * AMPERES_SQ_PER_KA_SQ

	def steadyCaps(self):
		'''
		Steady-state ampacity of each period, in (kA)².
		'''

		return np.array([maxSteadyCurrentSq(self.params, w, l) for w, l in zip(self.weathers, self.lins)]) / AMPERES_SQ_PER_KA_SQ

	def physicalCurrents(self, current_sq_pu):
		'''
		Squared currents in (kA)² from p.u.².
		'''

		return toPhysicalCurrentSq(np.asarray(current_sq_pu, dtype = float), self.branch) / AMPERES_SQ_PER_KA_SQ

@dataclasses.dataclass
class TemperatureSolution():
	'''
	Outcome of a temperature subproblem.

	Parameters
	----------
	current_sq : numpy.ndarray
		Squared currents, in (kA)².

	temps : numpy.ndarray
		Re-simulated end-of-period temperatures, in K.

	multiplier_norm : float
		1-norm of the multipliers of the temperature constraints.

	iterations : int
		Solver iterations, 0 when the target was feasible.
	'''

	current_sq: np.ndarray
	temps: np.ndarray
	multiplier_norm: float = 0.0
	iterations: int = 0

def _pullBelowLimit(thermal, current_sq):
	'''
	Scale a current profile down until no temperature exceeds the limit.
	The solver only meets the constraints up to its tolerance.
	'''

	excess = lambda alpha: float(np.max(thermal.temperatures(alpha * current_sq)) - thermal.t_max)

	if excess(1.0) <= 0:
		return current_sq

	if excess(0.0) > 0:
		raise SubproblemFailure(f'line {thermal.branch.id}', 0, excess(0.0), 'temperature limit exceeded without current')

	alpha = scipy.optimize.brentq(excess, 0.0, 1.0, xtol = 1e-14)
	while excess(alpha) > 0:
		alpha *= 1 - 1e-9

	return alpha * current_sq

def solveTemperatureSubproblem(thermal, target, rho, *, options = None):
	'''
	y-update of a screened line: the currents closest to the target whose temperature stays below the limit in every period.

	Parameters
	----------
	thermal : LineThermal
		The line.

	target : numpy.ndarray
		Minimizer of the coupling terms without the thermal constraints, in (kA)².

	rho : float
		Inner penalty.

	options : NlpOptions
		Solver knobs.

	Raises
	------
	SubproblemFailure
		The solver did not converge.

	Returns
	-------
	solution : TemperatureSolution
		The currents and their temperatures.
	'''

	target = np.asarray(target, dtype = float)
	t_max = thermal.t_max

	if np.all(target >= 0):
		try:
			temps = thermal.temperatures(target)

		except ThermalError:
			temps = None

		if temps is not None and np.all(temps <= t_max):
			return TemperatureSolution(current_sq = target.copy(), temps = temps)

	n = len(target)
	x0 = np.clip(target, 0.0, thermal.steadyCaps())

	problem = NlpProblem(
		x0,
		objective = lambda z: 0.5 * rho * float((z - target) @ (z - target)),
		gradient = lambda z: rho * (z - target),
		inequalities = lambda z: thermal.temperatures(z) - t_max,
		inequality_jacobian = lambda z: thermal.jacobian(z)[1],
		lower = np.zeros(n),
		initial_hessian = rho * np.eye(n),
		evaluation_errors = (ArithmeticError, ValueError, ThermalError)
	)

	result = minimize(problem, options = options or NlpOptions())
	if not(result.converged):
		raise SubproblemFailure(f'line {thermal.branch.id}', result.iterations, result.kkt_residual, result.status.value)

	current_sq = _pullBelowLimit(thermal, np.maximum(result.point, 0.0))
	return TemperatureSolution(
		current_sq = current_sq,
		temps = thermal.temperatures(current_sq),
		multiplier_norm = float(np.sum(np.abs(result.ineq_multipliers))),
		iterations = result.iterations
	)
