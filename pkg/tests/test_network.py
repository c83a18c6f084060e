#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import copy
import math

import numpy as np
import pytest

from dlropf.network import *
from dlropf.network.fixtures import CONDUCTOR
from dlropf.thermal import ConductorParams, WeatherSample
from dlropf.utils import jsonfiles

def _minimal():
	return {
		'base_mva': 100.0,
		'dt_seconds': 300.0,
		'horizon': 1,
		'buses': [{'id': 'a', 'reference': True}, {'id': 'b'}],
		'branches': [{'id': 'ab', 'from_bus': 'a', 'to_bus': 'b', 'series_resistance': 0.01, 'series_reactance': 0.1}],
		'generators': [{'id': 'g', 'bus': 'a', 'p_min': 0.0, 'p_max': 1.0, 'q_min': -1.0, 'q_max': 1.0, 'ramp_up': 1.0, 'ramp_down': 1.0}],
		'demand': {'b': [{'p': 0.5, 'q': 0.1}]}
	}

def _thermalBranch(base_kv = 138.0):
	thermal = ThermalData(conductor = ConductorParams(**CONDUCTOR), base_kv = base_kv, initial_temp = 320.0, base_mva = 100.0)
	return Branch('l', 'a', 'b', 0.01, 0.1, thermal = thermal)

def test_minimalCase():
	case = caseFromDict(_minimal())
	assert len(case.branches) == 1
	assert len(case.generators) == 1
	assert case.horizon == 1
	assert case.thermalLines() == []
	assert case.reference_bus == 0

def test_admittance():
	case = caseFromDict(_minimal())
	branch = case.branches[0]
	assert round(branch.conductance, 4) == 0.9901
	assert round(branch.susceptance, 4) == -9.9010
	assert abs(branch.admittance * complex(branch.series_resistance, branch.series_reactance) - 1) <= 1e-12

def test_admittanceMatrix(case9):
	ybus = case9.admittanceMatrix()
	assert ybus.shape == (9, 9)
	assert np.allclose(ybus, ybus.T)
	# without shunts, rows sum to the line charging
	charging = np.zeros(9)
	for branch in case9.branches:
		charging[case9.busIndex(branch.from_bus)] += branch.charging_susceptance / 2
		charging[case9.busIndex(branch.to_bus)] += branch.charging_susceptance / 2

	assert np.allclose(ybus.sum(axis = 1), 1j * charging)

def test_parallelBranchesAdd():
	document = _minimal()
	document['branches'].append(dict(document['branches'][0], id = 'ab2'))
	ybus = caseFromDict(document).admittanceMatrix()
	assert ybus[0, 1] == pytest.approx(-2 / complex(0.01, 0.1))

def test_schemaErrorPath():
	document = _minimal()
	del document['generators'][0]['p_max']

	with pytest.raises(SchemaError) as info:
		caseFromDict(document)

	assert info.value.path == 'generators.0.p_max'

def test_unknownField():
	document = _minimal()
	document['buses'][1]['voltage'] = 1.0

	with pytest.raises(SchemaError):
		caseFromDict(document)

def test_unsupportedVersion():
	with pytest.raises(SchemaError) as info:
		caseFromDict(dict(_minimal(), schema_version = 2))

	assert info.value.path == 'schema_version'

@pytest.mark.parametrize('change, entity', [
	(lambda d: d['branches'][0].update(to_bus = 'c'), 'ab'),
	(lambda d: d['branches'][0].update(to_bus = 'a'), 'ab'),
	(lambda d: d['generators'][0].update(p_min = 2.0), 'g'),
	(lambda d: d['generators'][0].update(c2 = -1.0), 'g'),
	(lambda d: d['buses'][1].update(reference = True), 'buses'),
	(lambda d: d['demand'].update(b = []), 'b'),
	(lambda d: d.update(dt_seconds = 0.0), 'dt_seconds')
])
def test_invalidCase(change, entity):
	document = _minimal()
	change(document)

	with pytest.raises(CaseValidationError) as info:
		caseFromDict(document)

	assert info.value.entity == entity

def test_missingWeather(case2_document):
	del case2_document['weather']['l1'][1]

	with pytest.raises(CaseValidationError) as info:
		caseFromDict(case2_document)

	assert info.value.entity == 'l1'
	assert 'period 1' in info.value.message

def test_weatherForPlainBranch(case2_document):
	case2_document['branches'][0]['thermal'] = None

	with pytest.raises(CaseValidationError):
		caseFromDict(case2_document)

def test_invalidConductorData(case2_document):
	case2_document['branches'][0]['thermal']['conductor']['emissivity'] = 0.0

	with pytest.raises(CaseValidationError) as info:
		caseFromDict(case2_document)

	assert info.value.entity == 'l1'

def test_currentConversion():
	branch = _thermalBranch()
	assert toPhysicalCurrentSq(0.0, branch) == 0.0
	assert toPhysicalCurrentSq(1.0, branch) == pytest.approx((100e6 / (math.sqrt(3) * 138e3))**2, rel = 1e-12)
	assert toPerUnitCurrentSq(toPhysicalCurrentSq(0.37, branch), branch) == pytest.approx(0.37, rel = 1e-12)

	with pytest.raises(MissingThermalDataError):
		toPhysicalCurrentSq(1.0, Branch('x', 'a', 'b', 0.01, 0.1))

def test_dumpReload(case9, tmp_path):
	filename = str(tmp_path / 'case9.json')
	writeCase(case9, filename)
	reloaded = loadCase(filename)

	assert dumpCase(reloaded) == dumpCase(case9)
	assert reloaded.name == case9.name

def test_loadInvalidJson(tmp_path):
	filename = tmp_path / 'broken.json'
	filename.write_text('{"base_mva": ')

	with pytest.raises(SchemaError):
		loadCase(str(filename))

def test_weatherCsv(case2_document, tmp_path):
	filename = tmp_path / 'weather.csv'
	filename.write_text('\n'.join([
		'line_id,period,wind_mps,angle_rad,ambient_K,solar_wpm',
		'l1,1,3.0,1.2,290.0,10.0',
		'l1,0,5.0,1.5,295.0,12.0'
	]))

	case = caseFromDict(case2_document, weather = readWeatherCsv(str(filename)))
	assert case.weather['l1'][0] == WeatherSample(5.0, 1.5, 295.0, 12.0)
	assert case.weather['l1'][1].wind_speed == 3.0

def test_weatherCsvMissingColumn(tmp_path):
	filename = tmp_path / 'weather.csv'
	filename.write_text('line_id,period,wind_mps\nl1,0,3.0\n')

	with pytest.raises(SchemaError) as info:
		readWeatherCsv(str(filename))

	assert info.value.path == 'weather.angle_rad'

def test_restrict(case9):
	shorter = case9.restrict(horizon = 2, dt = 600.0)
	assert shorter.horizon == 2
	assert shorter.dt == 600.0
	assert all(len(samples) == 2 for samples in shorter.weather.values())
	assert np.array_equal(shorter.demand_p, case9.demand_p[:, :2])

	with pytest.raises(CaseValidationError):
		case9.restrict(horizon = 4)

def test_withWeather(case2):
	calm = [sample.replace(wind_speed = 0.5) for sample in case2.weather['l1']]
	changed = case2.withWeather({'l1': calm})
	assert changed.weather['l1'][0].wind_speed == 0.5
	assert case2.weather['l1'][0].wind_speed != 0.5

	with pytest.raises(CaseValidationError):
		case2.withWeather({'l1': calm[:1]})

def test_case9Fixture(case9):
	assert [gen.id for gen in case9.generators] == ['g1', 'g2', 'g3', 'w8']
	assert case9.generators[case9.generatorIndex('w8')].renewable
	assert len(case9.thermalLines()) == 6
	assert not(case9.branches[case9.branchIndex('1-4')].is_thermal_line)

def test_fixtureDeterministic():
	first = dumpCase(buildFixture('case30', 'step-change', seed = 3))
	assert first == dumpCase(buildFixture('case30', 'step-change', seed = 3))

def test_unknownFixture():
	with pytest.raises(UnknownFixtureError):
		buildFixture('case118')

	with pytest.raises(UnknownFixtureError):
		buildFixture('case9', 'stormy')

def test_disconnectedCaseLogs(caplog):
	document = _minimal()
	document['buses'].append({'id': 'island'})
	caseFromDict(document)
	assert 'not connected' in caplog.text
