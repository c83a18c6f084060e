#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import logging
import math

import networkx as nx
import numpy as np
import pandas as pd
import pydantic

from .case import Bus, Branch, Generator, ThermalData, NetworkCase
from .errors import *
from .schema import SCHEMA_VERSION, CaseSchema, WeatherRowSchema
from ..thermal import ConductorParams, WeatherSample, ThermalError
from ..utils import jsonfiles

logger = logging.getLogger(__name__)

WEATHER_COLUMNS = ['line_id', 'period', 'wind_mps', 'angle_rad', 'ambient_K', 'solar_wpm']

def _schemaError(error):
	'''
	Turn the first error of a pydantic validation into a `SchemaError`.
	'''

	first = error.errors()[0]
	path = '.'.join(str(part) for part in first['loc']) or '<root>'
	return SchemaError(path, first['msg'])

def _parse(document):
	'''
	Validate a raw case document against the schema.
	'''

	if isinstance(document, dict) and document.get('schema_version', SCHEMA_VERSION) != SCHEMA_VERSION:
		raise SchemaError('schema_version', f'unsupported version {document["schema_version"]}, expected {SCHEMA_VERSION}')

	try:
		return CaseSchema.model_validate(document)

	except pydantic.ValidationError as e:
		raise _schemaError(e)

def _checkUnique(items, kind):
	seen = set()
	for item in items:
		if item.id in seen:
			raise CaseValidationError(item.id, f'duplicate {kind} id')

		seen.add(item.id)

def _buildBuses(schema):
	_checkUnique(schema.buses, 'bus')

	buses = []
	for bus in schema.buses:
		if not(0 < bus.v_min <= bus.v_max):
			raise CaseValidationError(bus.id, f'voltage limits [{bus.v_min}, {bus.v_max}] are not ordered and positive')

		buses.append(Bus(**bus.model_dump()))

	if sum(bus.reference for bus in buses) > 1:
		raise CaseValidationError('buses', 'more than one reference bus')

	return buses

def _buildBranches(schema, bus_ids):
	_checkUnique(schema.branches, 'branch')

	branches = []
	for branch in schema.branches:
		for end in [branch.from_bus, branch.to_bus]:
			if not(end in bus_ids):
				raise CaseValidationError(branch.id, f'unknown bus {end}')

		if branch.from_bus == branch.to_bus:
			raise CaseValidationError(branch.id, 'both ends on the same bus')

		if branch.series_resistance == 0 and branch.series_reactance == 0:
			raise CaseValidationError(branch.id, 'zero series impedance')

		if not(branch.angle_min <= 0 <= branch.angle_max) or max(abs(branch.angle_min), abs(branch.angle_max)) >= math.pi / 2:
			raise CaseValidationError(branch.id, f'angle limits [{branch.angle_min}, {branch.angle_max}] must contain 0 and stay within (-π/2, π/2)')

		if not(branch.current_limit_sq is None) and branch.current_limit_sq < 0:
			raise CaseValidationError(branch.id, 'negative static current limit')

		thermal = None
		if not(branch.thermal is None):
			if not(branch.thermal.base_kv > 0):
				raise CaseValidationError(branch.id, f'base voltage {branch.thermal.base_kv} kV is not positive')

			try:
				conductor = ConductorParams(**branch.thermal.conductor.model_dump())

			except ThermalError as e:
				raise CaseValidationError(branch.id, str(e))

			if not(branch.thermal.initial_temp > 0):
				raise CaseValidationError(branch.id, f'initial temperature {branch.thermal.initial_temp} K is not positive')

			thermal = ThermalData(
				conductor = conductor,
				base_kv = branch.thermal.base_kv,
				initial_temp = branch.thermal.initial_temp,
				base_mva = schema.base_mva
			)

		fields = branch.model_dump(exclude = {'thermal'})
		branches.append(Branch(**fields, thermal = thermal))

	return branches

def _buildGenerators(schema, bus_ids):
	_checkUnique(schema.generators, 'generator')

	generators = []
	for gen in schema.generators:
		if not(gen.bus in bus_ids):
			raise CaseValidationError(gen.id, f'unknown bus {gen.bus}')

		if not(gen.p_min <= gen.p_max):
			raise CaseValidationError(gen.id, f'p_min {gen.p_min} > p_max {gen.p_max}')

		if not(gen.q_min <= gen.q_max):
			raise CaseValidationError(gen.id, f'q_min {gen.q_min} > q_max {gen.q_max}')

		if gen.ramp_up < 0 or gen.ramp_down < 0:
			raise CaseValidationError(gen.id, 'negative ramp band')

		if gen.c2 < 0:
			raise CaseValidationError(gen.id, f'non-convex cost (c2 = {gen.c2})')

		generators.append(Generator(**gen.model_dump()))

	return generators

def _buildDemand(schema, buses):
	horizon = schema.horizon
	demand_p = np.zeros((len(buses), horizon))
	demand_q = np.zeros((len(buses), horizon))
	index = {bus.id: k for k, bus in enumerate(buses)}

	for bus_id, rows in schema.demand.items():
		if not(bus_id in index):
			raise CaseValidationError(bus_id, 'demand given for an unknown bus')

		if len(rows) != horizon:
			raise CaseValidationError(bus_id, f'demand series has {len(rows)} periods instead of {horizon}')

		demand_p[index[bus_id]] = [row.p for row in rows]
		demand_q[index[bus_id]] = [row.q for row in rows]

	return demand_p, demand_q

def _buildWeather(rows_by_line, branches, horizon):
	thermal_ids = {branch.id for branch in branches if branch.is_thermal_line}

	for line in rows_by_line:
		if not(line in thermal_ids):
			raise CaseValidationError(line, 'weather given for a branch without thermal data')

	weather = {}
	for line in sorted(thermal_ids, key = [branch.id for branch in branches].index):
		rows = rows_by_line.get(line, [])
		for t in range(horizon):
			if t >= len(rows) or rows[t] is None:
				raise CaseValidationError(line, f'missing weather for period {t}')

		if len(rows) > horizon:
			raise CaseValidationError(line, f'weather series has {len(rows)} periods instead of {horizon}')

		samples = []
		for t, row in enumerate(rows):
			try:
				samples.append(WeatherSample(wind_speed = row.wind_mps, wind_angle = row.angle_rad, ambient_temp = row.ambient_K, solar_gain = row.solar_wpm))

			except ThermalError as e:
				raise CaseValidationError(line, f'period {t}: {e}')

		weather[line] = samples

	return weather

def _checkConnectivity(buses, branches, name):
	graph = nx.MultiGraph()
	graph.add_nodes_from(bus.id for bus in buses)
	graph.add_edges_from((branch.from_bus, branch.to_bus) for branch in branches)

	if graph.number_of_nodes() > 0 and not(nx.is_connected(graph)):
		components = nx.number_connected_components(graph)
		logger.warning('case %s is not connected (%d components)', name or '<unnamed>', components)

def readWeatherCsv(filename):
	'''
	Read a weather sidecar file.

	Parameters
	----------
	filename : str
		Path to a CSV file with the columns `line_id`, `period`, `wind_mps`, `angle_rad`, `ambient_K` and `solar_wpm`.

	Raises
	------
	SchemaError
		A column is missing or a row is invalid.

	Returns
	-------
	rows : dict
		Weather rows indexed by line id, then ordered by period. A missing period is represented by `None`.
	'''

	table = pd.read_csv(filename, dtype = {'line_id': str})

	missing = [column for column in WEATHER_COLUMNS if not(column in table.columns)]
	if missing:
		raise SchemaError(f'weather.{missing[0]}', 'missing column')

	rows = {}
	for line, group in table.groupby('line_id', sort = False):
		periods = group['period'].astype(int)
		if (periods < 0).any() or periods.duplicated().any():
			raise SchemaError(f'weather.{line}.period', 'negative or duplicated period')

		series = [None] * (int(periods.max()) + 1)
		for record in group.to_dict('records'):
			try:
				series[int(record['period'])] = WeatherRowSchema(**{column: float(record[column]) for column in WEATHER_COLUMNS[2:]})

			except pydantic.ValidationError as e:
				raise SchemaError(f'weather.{line}.{record["period"]}', _schemaError(e).message)

		rows[str(line)] = series

	return rows

def caseFromDict(document, *, weather = None):
	'''
	Build a validated case from a JSON-like document.

	Parameters
	----------
	document : dict
		The case document.

	weather : dict
		Weather rows indexed by line id, replacing the embedded ones (see `readWeatherCsv()`).

	Raises
	------
	SchemaError
		The document does not follow the schema.

	CaseValidationError
		An invariant is violated.

	Returns
	-------
	case : NetworkCase
		The case.
	'''

	schema = _parse(document)

	if not(schema.base_mva > 0):
		raise CaseValidationError('base_mva', f'{schema.base_mva} is not positive')

	if not(schema.dt_seconds > 0):
		raise CaseValidationError('dt_seconds', f'{schema.dt_seconds} is not positive')

	if schema.horizon < 1:
		raise CaseValidationError('horizon', f'{schema.horizon} is not positive')

	if not(schema.generators):
		raise CaseValidationError('generators', 'no generator')

	buses = _buildBuses(schema)
	bus_ids = {bus.id for bus in buses}
	branches = _buildBranches(schema, bus_ids)
	generators = _buildGenerators(schema, bus_ids)
	demand_p, demand_q = _buildDemand(schema, buses)

	weather_rows = schema.weather if weather is None else weather
	weather_samples = _buildWeather(weather_rows, branches, schema.horizon)

	_checkConnectivity(buses, branches, schema.name)

	return NetworkCase(buses, branches, generators, demand_p, demand_q, weather_samples, base_mva = schema.base_mva, dt = schema.dt_seconds, name = schema.name)

def loadCase(filename, *, weather = None):
	'''
	Load a case file.

	Parameters
	----------
	filename : str
		Path to the JSON case.

	weather : str
		Path to a CSV weather sidecar, replacing the embedded weather.

	Returns
	-------
	case : NetworkCase
		The validated case.
	'''

	try:
		document = jsonfiles.read(filename)

	except ValueError as e:
		raise SchemaError('<root>', f'invalid JSON ({e})')

	return caseFromDict(document, weather = None if weather is None else readWeatherCsv(weather))

def dumpCase(case):
	'''
	Canonical document of a case: every field written, defaults included.

	Parameters
	----------
	case : NetworkCase
		The case to serialize.

	Returns
	-------
	document : dict
		A document that `caseFromDict()` turns back into an identical case.
	'''

	branches = []
	for branch in case.branches:
		entry = {
			'id': branch.id,
			'from_bus': branch.from_bus,
			'to_bus': branch.to_bus,
			'series_resistance': branch.series_resistance,
			'series_reactance': branch.series_reactance,
			'charging_susceptance': branch.charging_susceptance,
			'angle_min': branch.angle_min,
			'angle_max': branch.angle_max,
			'thermal': None,
			'current_limit_sq': branch.current_limit_sq
		}

		if branch.is_thermal_line:
			entry['thermal'] = {
				'conductor': {field: getattr(branch.thermal.conductor, field) for field in ['resistance_per_length', 'mass_per_length', 'specific_heat', 'diameter', 'emissivity', 'absorptivity', 'max_temperature']},
				'base_kv': branch.thermal.base_kv,
				'initial_temp': branch.thermal.initial_temp
			}

		branches.append(entry)

	demand = {}
	for k, bus in enumerate(case.buses):
		if np.any(case.demand_p[k]) or np.any(case.demand_q[k]):
			demand[bus.id] = [{'p': float(p), 'q': float(q)} for p, q in zip(case.demand_p[k], case.demand_q[k])]

	weather = {
		line: [{'wind_mps': s.wind_speed, 'angle_rad': s.wind_angle, 'ambient_K': s.ambient_temp, 'solar_wpm': s.solar_gain} for s in samples]
		for line, samples in case.weather.items()
	}

	return {
		'schema_version': SCHEMA_VERSION,
		'name': case.name,
		'base_mva': case.base_mva,
		'dt_seconds': case.dt,
		'horizon': case.horizon,
		'buses': [dataclasses.asdict(bus) for bus in case.buses],
		'branches': branches,
		'generators': [dataclasses.asdict(gen) for gen in case.generators],
		'demand': demand,
		'weather': weather
	}

def writeCase(case, filename):
	'''
	Write a case in canonical form (sorted keys).

	Parameters
	----------
	case : NetworkCase
		The case to write.

	filename : str
		Path of the JSON file.
	'''

	jsonfiles.write(dumpCase(case), filename, sort_keys = True)
