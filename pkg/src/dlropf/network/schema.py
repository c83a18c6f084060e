#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict

SCHEMA_VERSION = 1

class _Strict(BaseModel):
	model_config = ConfigDict(extra = 'forbid')

class ConductorSchema(_Strict):
	resistance_per_length: float
	mass_per_length: float
	specific_heat: float
	diameter: float
	emissivity: float
	absorptivity: float
	max_temperature: float = 373.15

class ThermalSchema(_Strict):
	conductor: ConductorSchema
	base_kv: float
	initial_temp: float

class BusSchema(_Strict):
	id: str
	shunt_conductance: float = 0.0
	shunt_susceptance: float = 0.0
	v_min: float = 0.9
	v_max: float = 1.1
	reference: bool = False

class BranchSchema(_Strict):
	id: str
	from_bus: str
	to_bus: str
	series_resistance: float
	series_reactance: float
	charging_susceptance: float = 0.0
	angle_min: float = -math.pi / 3
	angle_max: float = math.pi / 3
	thermal: Optional[ThermalSchema] = None
	current_limit_sq: Optional[float] = None

class GeneratorSchema(_Strict):
	id: str
	bus: str
	c2: float = 0.0
	c1: float = 0.0
	c0: float = 0.0
	p_min: float
	p_max: float
	q_min: float
	q_max: float
	ramp_up: float
	ramp_down: float
	renewable: bool = False

class LoadSchema(_Strict):
	p: float
	q: float

class WeatherRowSchema(_Strict):
	wind_mps: float
	angle_rad: float
	ambient_K: float
	solar_wpm: float

class CaseSchema(_Strict):
	'''
	JSON case document. Powers in p.u. of `base_mva`, one demand and weather row per period.
	'''

	schema_version: int = SCHEMA_VERSION
	name: str = ''
	base_mva: float
	dt_seconds: float
	horizon: int
	buses: List[BusSchema]
	branches: List[BranchSchema]
	generators: List[GeneratorSchema]
	demand: Dict[str, List[LoadSchema]] = {}
	weather: Dict[str, List[WeatherRowSchema]] = {}
