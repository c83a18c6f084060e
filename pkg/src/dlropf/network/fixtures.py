#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np

from .errors import *
from .loader import caseFromDict
from ..thermal import ConductorParams, solarGain

BASE_MVA = 100.0
DT_SECONDS = 300.0
DEFAULT_HORIZON = 6

# Drake-like ACSR conductor
CONDUCTOR = {
	'resistance_per_length': 9.4e-5,
	'mass_per_length': 1.628,
	'specific_heat': 805.0,
	'diameter': 0.02814,
	'emissivity': 0.8,
	'absorptivity': 0.8,
	'max_temperature': 373.15
}

RAMP_SHARE = 0.2
RENEWABLE_Q_RATIO = 0.329

REGIMES = {
	'calm-hot': {
		'wind': (0.7, 1.2),
		'ambient': (305.0, 312.0),
		'irradiance': 1000.0,
		'initial_temp': 338.0,
		'load_factor': 0.75,
		'step': None,
		'horizon': DEFAULT_HORIZON
	},
	'windy-cool': {
		'wind': (4.0, 8.0),
		'ambient': (283.0, 288.0),
		'irradiance': 300.0,
		'initial_temp': 313.0,
		'load_factor': 0.75,
		'step': None,
		'horizon': DEFAULT_HORIZON
	},
	'step-change': {
		'wind': (1.2, 1.2),
		'ambient': (298.0, 298.0),
		'irradiance': 700.0,
		'initial_temp': 318.0,
		'load_factor': 0.85,
		'step': 0.5 / 0.85,
		'horizon': 12
	}
}

def _bus(bus_id, **fields):
	return {'id': bus_id, **fields}

def _line(branch_id, from_bus, to_bus, r, x, b = 0.0, *, thermal = True, base_kv = 34.5):
	branch = {
		'id': branch_id,
		'from_bus': from_bus,
		'to_bus': to_bus,
		'series_resistance': r,
		'series_reactance': x,
		'charging_susceptance': b
	}

	if thermal:
		branch['thermal'] = {'conductor': dict(CONDUCTOR), 'base_kv': base_kv, 'initial_temp': None}

	return branch

def _generator(gen_id, bus, c2, c1, c0, p_min, p_max, q_min, q_max, *, renewable = False):
	ramp = p_max if renewable else RAMP_SHARE * p_max
	return {
		'id': gen_id, 'bus': bus,
		'c2': c2, 'c1': c1, 'c0': c0,
		'p_min': p_min, 'p_max': p_max, 'q_min': q_min, 'q_max': q_max,
		'ramp_up': ramp, 'ramp_down': ramp,
		'renewable': renewable
	}

def _renewable(gen_id, bus, p_max):
	return _generator(gen_id, bus, 0.0, 0.0, 0.0, 0.0, p_max, -RENEWABLE_Q_RATIO * p_max, RENEWABLE_Q_RATIO * p_max, renewable = True)

def _case2(rng):
	buses = [_bus('b1', reference = True), _bus('b2')]
	branches = [_line('l1', 'b1', 'b2', 0.01, 0.1)]
	generators = [
		_generator('g1', 'b1', 0.01, 10.0, 0.0, 0.0, 2.0, -2.0, 2.0),
		_generator('g2', 'b2', 0.0, 40.0, 0.0, 0.0, 1.0, -1.0, 1.0)
	]
	loads = {'b2': (0.8, 0.2)}
	return buses, branches, generators, loads

def _case9(rng):
	buses = [_bus(str(k), reference = (k == 1)) for k in range(1, 10)]
	branches = [
		_line('1-4', '1', '4', 0.0, 0.0576, thermal = False),
		_line('4-5', '4', '5', 0.017, 0.092, 0.158),
		_line('5-6', '5', '6', 0.039, 0.17, 0.358),
		_line('3-6', '3', '6', 0.0, 0.0586, thermal = False),
		_line('6-7', '6', '7', 0.0119, 0.1008, 0.209),
		_line('7-8', '7', '8', 0.0085, 0.072, 0.149),
		_line('8-2', '8', '2', 0.0, 0.0625, thermal = False),
		_line('8-9', '8', '9', 0.032, 0.161, 0.306),
		_line('9-4', '9', '4', 0.01, 0.085, 0.176)
	]
	generators = [
		_generator('g1', '1', 0.11, 5.0, 150.0, 0.1, 2.5, -3.0, 3.0),
		_generator('g2', '2', 0.085, 1.2, 600.0, 0.1, 3.0, -3.0, 3.0),
		_generator('g3', '3', 0.1225, 1.0, 335.0, 0.1, 2.7, -3.0, 3.0),
		_renewable('w8', '8', 0.6)
	]
	loads = {'5': (0.9, 0.3), '7': (1.0, 0.35), '9': (1.25, 0.5)}
	return buses, branches, generators, loads

def _case30(rng):
	n = 30
	gen_buses = [0, 5, 10, 15, 20, 25]
	renewable_bus = 12

	buses = [_bus(f'n{k}') for k in range(n)]

	pairs = [(k, (k + 1) % n) for k in range(n)] + [(k, k + 7) for k in range(0, n - 7, 3)]
	branches = []
	for m, (i, j) in enumerate(pairs):
		x = float(rng.uniform(0.05, 0.2))
		r = x * float(rng.uniform(0.1, 0.3))
		b = float(rng.uniform(0.0, 0.05))
		branches.append(_line(f'n{i}-n{j}', f'n{i}', f'n{j}', r, x, b, thermal = (m % 5 != 4), base_kv = 69.0))

	generators = []
	for k in gen_buses:
		p_max = float(rng.uniform(1.5, 2.5))
		generators.append(_generator(f'g{k}', f'n{k}', float(rng.uniform(0.005, 0.02)), float(rng.uniform(10, 40)), 0.0, 0.0, p_max, -p_max, p_max))

	generators.append(_renewable(f'w{renewable_bus}', f'n{renewable_bus}', 0.8))

	loads = {}
	for k in range(n):
		if not(k in gen_buses):
			p = float(rng.uniform(0.1, 0.35))
			loads[f'n{k}'] = (p, 0.3 * p)

	return buses, branches, generators, loads

FIXTURES = {
	'case2': _case2,
	'case9': _case9,
	'case30': _case30
}

def _profile(regime, horizon, load_factor):
	'''
	Demand multiplier of each period.
	'''

	if regime['step'] is None:
		if horizon == 1:
			return np.array([load_factor])

		return load_factor * (0.95 + 0.1 * np.arange(horizon) / (horizon - 1))

	profile = np.full(horizon, load_factor)
	profile[:max(1, horizon // 3)] *= regime['step']
	return profile

def _series(low, high, phase, horizon):
	'''
	Smooth periodic series between `low` and `high`.
	'''

	t = np.arange(horizon)
	return low + (high - low) * 0.5 * (1 + np.sin(2 * math.pi * t / max(horizon, 2) + phase))

def fixtureDocument(name, regime = 'calm-hot', *, horizon = None, load_factor = None, seed = 0):
	'''
	Case document of a bundled fixture.

	Parameters
	----------
	name : str
		Name of the fixture: `case2`, `case9` or `case30`.

	regime : str
		Weather regime: `calm-hot`, `windy-cool` or `step-change`.

	horizon : int
		Number of periods. Default to the regime's.

	load_factor : float
		Multiplier applied to the nominal loads. Default to the regime's; `case2` loads are nominal at 0.75.

	seed : int
		Seed of the random draws (network data of `case30`, phases of the weather series).

	Raises
	------
	UnknownFixtureError
		The fixture or the regime does not exist.

	Returns
	-------
	document : dict
		The case document.
	'''

	if not(name in FIXTURES):
		raise UnknownFixtureError(name)

	if not(regime in REGIMES):
		raise UnknownFixtureError(regime)

	settings = REGIMES[regime]
	rng = np.random.default_rng(seed)

	horizon = settings['horizon'] if horizon is None else horizon
	if load_factor is None:
		load_factor = settings['load_factor'] if name != 'case2' else settings['load_factor'] / 0.75

	buses, branches, generators, loads = FIXTURES[name](rng)

	profile = _profile(settings, horizon, load_factor)
	demand = {
		bus: [{'p': float(p * m), 'q': float(q * m)} for m in profile]
		for bus, (p, q) in loads.items()
	}

	conductor = ConductorParams(**CONDUCTOR)
	solar = solarGain(conductor, settings['irradiance'])

	weather = {}
	for branch in branches:
		if not('thermal' in branch):
			continue

		branch['thermal']['initial_temp'] = settings['initial_temp']

		phase = float(rng.uniform(0, 2 * math.pi))
		angle = float(rng.uniform(math.pi / 6, math.pi / 2))
		winds = _series(*settings['wind'], phase, horizon)
		ambients = _series(*settings['ambient'], phase + math.pi, horizon)

		weather[branch['id']] = [
			{'wind_mps': float(wind), 'angle_rad': angle, 'ambient_K': float(ambient), 'solar_wpm': solar}
			for wind, ambient in zip(winds, ambients)
		]

	return {
		'name': f'{name}-{regime}',
		'base_mva': BASE_MVA,
		'dt_seconds': DT_SECONDS,
		'horizon': horizon,
		'buses': buses,
		'branches': branches,
		'generators': generators,
		'demand': demand,
		'weather': weather
	}

def buildFixture(name, regime = 'calm-hot', *, horizon = None, load_factor = None, seed = 0):
	'''
	Validated case of a bundled fixture, see `fixtureDocument()` for the parameters.

	Returns
	-------
	case : NetworkCase
		The case.
	'''

	return caseFromDict(fixtureDocument(name, regime, horizon = horizon, load_factor = load_factor, seed = seed))
