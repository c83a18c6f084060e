#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import math
from typing import Optional

import numpy as np

from .errors import *
from ..thermal import ConductorParams

@dataclasses.dataclass(frozen = True)
class Bus():
	'''
	A bus, with its shunt admittance and voltage magnitude limits (p.u.).
	'''

	id: str
	shunt_conductance: float = 0.0
	shunt_susceptance: float = 0.0
	v_min: float = 0.9
	v_max: float = 1.1
	reference: bool = False

@dataclasses.dataclass(frozen = True)
class ThermalData():
	'''
	Conductor data of a thermal line and what is needed to convert its per-unit current.

	Parameters
	----------
	conductor : ConductorParams
		Physical parameters.

	base_kv : float
		Base line-to-line voltage, in kV.

	initial_temp : float
		Conductor temperature before the first period, in K.

	base_mva : float
		System base power, in MVA.
	'''

	conductor: ConductorParams
	base_kv: float
	initial_temp: float
	base_mva: float

	@property
	def current_base(self):
		'''
		Base current, in A.
		'''

		return self.base_mva * 1e6 / (math.sqrt(3) * self.base_kv * 1e3)

@dataclasses.dataclass(frozen = True)
class Branch():
	'''
	A branch between two buses, with series impedance and optional line charging (p.u.).
	Lines with conductor data form the thermal set; other branches may carry a static limit on their squared current.
	'''

	id: str
	from_bus: str
	to_bus: str
	series_resistance: float
	series_reactance: float
	charging_susceptance: float = 0.0
	angle_min: float = -math.pi / 3
	angle_max: float = math.pi / 3
	thermal: Optional[ThermalData] = None
	current_limit_sq: Optional[float] = None

	@property
	def admittance(self):
		'''
		Series admittance G + jB = 1/(r + jx).
		'''

		return 1 / complex(self.series_resistance, self.series_reactance)

	@property
	def conductance(self):
		return self.admittance.real

	@property
	def susceptance(self):
		return self.admittance.imag

	@property
	def is_thermal_line(self):
		return self.thermal is not None

@dataclasses.dataclass(frozen = True)
class Generator():
	'''
	A generator with a convex quadratic cost, in $/h for a dispatch in MW.
	Limits and ramp bands are in p.u. (ramp bands per period).
	'''

	id: str
	bus: str
	c2: float
	c1: float
	c0: float
	p_min: float
	p_max: float
	q_min: float
	q_max: float
	ramp_up: float
	ramp_down: float
	renewable: bool = False

	def cost(self, p_mw):
		'''
		Generation cost.

		Parameters
		----------
		p_mw : float|numpy.ndarray
			Active power, in MW.

		Returns
		-------
		cost : float|numpy.ndarray
			Cost, in $/h.
		'''

		return self.c2 * p_mw**2 + self.c1 * p_mw + self.c0

class NetworkCase():
	'''
	A validated, read-only grid case over a dispatch horizon.

	Parameters
	----------
	buses : list
		The `Bus` records.

	branches : list
		The `Branch` records.

	generators : list
		The `Generator` records.

	demand_p : numpy.ndarray
		Active demand, p.u., shape (buses, horizon).

	demand_q : numpy.ndarray
		Reactive demand, p.u., shape (buses, horizon).

	weather : dict
		Weather samples of each thermal line, indexed by branch id.

	base_mva : float
		System base power.

	dt : float
		Length of a period, in s.

	name : str
		Name of the case.
	'''

	def __init__(self, buses, branches, generators, demand_p, demand_q, weather, *, base_mva, dt, name = ''):
		self._buses = tuple(buses)
		self._branches = tuple(branches)
		self._generators = tuple(generators)

		self._demand_p = np.array(demand_p, dtype = float)
		self._demand_q = np.array(demand_q, dtype = float)
		self._demand_p.setflags(write = False)
		self._demand_q.setflags(write = False)

		self._weather = {line: tuple(samples) for line, samples in weather.items()}

		self._base_mva = base_mva
		self._dt = dt
		self._name = name

		self._bus_index = {bus.id: k for k, bus in enumerate(self._buses)}
		self._branch_index = {branch.id: k for k, branch in enumerate(self._branches)}
		self._generator_index = {gen.id: k for k, gen in enumerate(self._generators)}

	@property
	def name(self):
		return self._name

	@property
	def buses(self):
		return self._buses

	@property
	def branches(self):
		return self._branches

	@property
	def generators(self):
		return self._generators

	@property
	def base_mva(self):
		return self._base_mva

	@property
	def dt(self):
		'''
		Length of a period, in s.
		'''

		return self._dt

	@property
	def horizon(self):
		'''
		Number of periods.
		'''

		return self._demand_p.shape[1]

	@property
	def demand_p(self):
		return self._demand_p

	@property
	def demand_q(self):
		return self._demand_q

	@property
	def weather(self):
		'''
		Weather samples indexed by thermal line id, one per period.
		'''

		return self._weather

	@property
	def reference_bus(self):
		'''
		Index of the bus whose imaginary voltage is fixed to 0.
		Default to the bus of the first generator.
		'''

		for k, bus in enumerate(self._buses):
			if bus.reference:
				return k

		return self._bus_index[self._generators[0].bus] if self._generators else 0

	def busIndex(self, bus_id):
		return self._bus_index[bus_id]

	def branchIndex(self, branch_id):
		return self._branch_index[branch_id]

	def generatorIndex(self, gen_id):
		return self._generator_index[gen_id]

	def thermalLines(self):
		'''
		Indices of the branches with conductor data.

		Returns
		-------
		lines : list
			Branch indices, in case order.
		'''

		return [k for k, branch in enumerate(self._branches) if branch.is_thermal_line]

	def generatorsAt(self, bus_index):
		'''
		Indices of the generators connected to a bus.
		'''

		bus_id = self._buses[bus_index].id
		return [k for k, gen in enumerate(self._generators) if gen.bus == bus_id]

	def admittanceMatrix(self):
		'''
		Bus admittance matrix with series admittances, half line charging at both ends and bus shunts.
		Parallel branches add up.

		Returns
		-------
		ybus : numpy.ndarray
			Complex matrix of shape (buses, buses).
		'''

		n = len(self._buses)
		ybus = np.zeros((n, n), dtype = complex)

		for branch in self._branches:
			i = self._bus_index[branch.from_bus]
			j = self._bus_index[branch.to_bus]
			y = branch.admittance
			half_charging = 0.5j * branch.charging_susceptance

			ybus[i, i] += y + half_charging
			ybus[j, j] += y + half_charging
			ybus[i, j] -= y
			ybus[j, i] -= y

		for k, bus in enumerate(self._buses):
			ybus[k, k] += complex(bus.shunt_conductance, bus.shunt_susceptance)

		return ybus

	def restrict(self, *, horizon = None, dt = None):
		'''
		Copy of the case over fewer periods or with another period length.

		Parameters
		----------
		horizon : int
			Number of leading periods to keep.

		dt : float
			New period length, in s.

		Raises
		------
		CaseValidationError
			The horizon is not between 1 and the current horizon.

		Returns
		-------
		case : NetworkCase
			The restricted case.
		'''

		horizon = self.horizon if horizon is None else horizon
		if not(1 <= horizon <= self.horizon):
			raise CaseValidationError('horizon', f'{horizon} is not within [1, {self.horizon}]')

		if dt is not None and not(dt > 0):
			raise CaseValidationError('dt_seconds', f'{dt} is not positive')

		return NetworkCase(
			self._buses, self._branches, self._generators,
			self._demand_p[:, :horizon], self._demand_q[:, :horizon],
			{line: samples[:horizon] for line, samples in self._weather.items()},
			base_mva = self._base_mva, dt = self._dt if dt is None else dt, name = self._name
		)

	def withWeather(self, weather):
		'''
		Copy of the case with other weather series for some thermal lines.

		Parameters
		----------
		weather : dict
			Samples indexed by line id; lines not listed keep their series.

		Raises
		------
		CaseValidationError
			A line is not a thermal line or its series does not cover the horizon.

		Returns
		-------
		case : NetworkCase
			The new case.
		'''

		merged = dict(self._weather)
		for line, samples in weather.items():
			if not(line in merged):
				raise CaseValidationError(line, 'weather given for a branch without thermal data')

			if len(samples) != self.horizon:
				raise CaseValidationError(line, f'weather series has {len(samples)} periods instead of {self.horizon}')

			merged[line] = samples

		return NetworkCase(
			self._buses, self._branches, self._generators, self._demand_p, self._demand_q, merged,
			base_mva = self._base_mva, dt = self._dt, name = self._name
		)

def toPhysicalCurrentSq(current_sq_pu, branch):
	'''
	Convert a squared per-unit current into A².

	Parameters
	----------
	current_sq_pu : float|numpy.ndarray
		Squared current, in p.u.².

	branch : Branch
		A thermal line.

	Raises
	------
	MissingThermalDataError
		The branch has no thermal data.

	Returns
	-------
	current_sq : float|numpy.ndarray
		Squared current, in A².
	'''

	if not(branch.is_thermal_line):
		raise MissingThermalDataError(branch.id)

	return current_sq_pu * branch.thermal.current_base**2

def toPerUnitCurrentSq(current_sq, branch):
	'''
	Convert a squared current in A² into p.u.², inverse of `toPhysicalCurrentSq()`.
	'''

	if not(branch.is_thermal_line):
		raise MissingThermalDataError(branch.id)

	return current_sq / branch.thermal.current_base**2
