#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses

import numpy as np

from .errors import *

class AcLayout():
	'''
	Position of each block of variables in the flat vector of one period: e, f (per bus), p_g, q_g (per generator), I^re, I^im and ι (per branch).

	Parameters
	----------
	n_buses : int
		Number of buses.

	n_generators : int
		Number of generators.

	n_branches : int
		Number of branches.
	'''

	FIELDS = ['e', 'f', 'p_g', 'q_g', 'i_re', 'i_im', 'current_sq']

	def __init__(self, n_buses, n_generators, n_branches):
		self.n_buses = n_buses
		self.n_generators = n_generators
		self.n_branches = n_branches

		sizes = [n_buses, n_buses, n_generators, n_generators, n_branches, n_branches, n_branches]
		offsets = np.concatenate([[0], np.cumsum(sizes)])

		self._slices = {name: slice(int(offsets[k]), int(offsets[k + 1])) for k, name in enumerate(self.FIELDS)}
		self.size = int(offsets[-1])

	@classmethod
	def fromCase(cls, case):
		return cls(len(case.buses), len(case.generators), len(case.branches))

	def __getitem__(self, name):
		return self._slices[name]

	@property
	def voltages(self):
		'''
		Slice of the (e, f) block.
		'''

		return slice(0, 2 * self.n_buses)

	def index(self, name, k):
		'''
		Position of the `k`-th entry of a block.
		'''

		return self._slices[name].start + k

@dataclasses.dataclass
class AcPeriodVars():
	'''
	AC variables of one period, in rectangular coordinates and p.u.

	Parameters
	----------
	e, f : numpy.ndarray
		Real and imaginary parts of the bus voltages.

	p_g, q_g : numpy.ndarray
		Generator active and reactive powers.

	i_re, i_im : numpy.ndarray
		Real and imaginary parts of the branch currents (series admittance, from end).

	current_sq : numpy.ndarray
		Squared magnitude of the branch currents.
	'''

	e: np.ndarray
	f: np.ndarray
	p_g: np.ndarray
	q_g: np.ndarray
	i_re: np.ndarray
	i_im: np.ndarray
	current_sq: np.ndarray

	@classmethod
	def flatStart(cls, case):
		'''
		Flat voltages (e = 1, f = 0), generation at the middle of its range and no current.
		'''

		n_branches = len(case.branches)
		return cls(
			e = np.ones(len(case.buses)),
			f = np.zeros(len(case.buses)),
			p_g = np.array([(g.p_min + g.p_max) / 2 for g in case.generators]),
			q_g = np.array([(g.q_min + g.q_max) / 2 for g in case.generators]),
			i_re = np.zeros(n_branches),
			i_im = np.zeros(n_branches),
			current_sq = np.zeros(n_branches)
		)

	@classmethod
	def fromVector(cls, layout, x):
		'''
		Split a flat vector.
		'''

		x = np.asarray(x, dtype = float)
		if len(x) != layout.size:
			raise DimensionMismatchError('x', layout.size, len(x))

		return cls(**{name: x[layout[name]].copy() for name in AcLayout.FIELDS})

	def toVector(self, layout):
		'''
		Concatenate the blocks according to a layout.

		Raises
		------
		DimensionMismatchError
			A block does not have the size of the layout.
		'''

		for name in AcLayout.FIELDS:
			expected = layout[name].stop - layout[name].start
			if len(getattr(self, name)) != expected:
				raise DimensionMismatchError(name, expected, len(getattr(self, name)))

		return np.concatenate([np.asarray(getattr(self, name), dtype = float) for name in AcLayout.FIELDS])

	@property
	def voltage_sq(self):
		'''
		Squared voltage magnitudes ν = e² + f².
		'''

		return self.e**2 + self.f**2

	def copy(self):
		return AcPeriodVars(**{name: np.array(getattr(self, name), dtype = float) for name in AcLayout.FIELDS})

	def toDict(self):
		return {name: np.asarray(getattr(self, name)).tolist() for name in AcLayout.FIELDS}

	@classmethod
	def fromDict(cls, d):
		return cls(**{name: np.array(d[name], dtype = float) for name in AcLayout.FIELDS})
