#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest
import scipy.optimize

from dlropf.acopf import SubproblemFailure, solveAcSubproblem
from dlropf.admm import *
from dlropf.network import Generator, buildFixture, caseFromDict, fixtureDocument
from dlropf.ratings import RatingKind, RatingScheme
from dlropf.thermal import stepTemperature
from dlropf.utils import jsonfiles

DLR_SS = RatingScheme(RatingKind.DLR_SS)
DLR_TRANS = RatingScheme(RatingKind.DLR_TRANS)
SLR = RatingScheme(RatingKind.SLR, 'summer')

def _generator(**changes):
	fields = dict(id = 'g', bus = 'b', c2 = 0.0, c1 = 1.0, c0 = 0.0, p_min = 0.0, p_max = 2.0, q_min = -1.0, q_max = 1.0, ramp_up = 0.4, ramp_down = 0.4)
	fields.update(changes)
	return Generator(**fields)

def _runLengths(periods):
	runs = []
	for t in periods:
		if runs and t == previous + 1:
			runs[-1] += 1

		else:
			runs.append(1)

		previous = t

	return runs

def _assertBelowLimit(case, report):
	for line_id in report.screened:
		thermal = LineThermal.fromCase(case, case.branchIndex(line_id))
		assert np.max(thermal.temperatures(report.line_currents[line_id])) <= thermal.t_max + 1e-6

def _randomState(maps, state, rng):
	state.xs = [x + rng.normal(scale = 0.1, size = len(x)) for x in state.xs]
	state.y = state.y + rng.normal(scale = 0.1, size = len(state.y))
	state.v = rng.normal(size = maps.d)
	state.w = rng.normal(size = maps.d)
	state.theta = 600.0
	state.rho = 1200.0
	return state

def test_paramsValidation():
	assert AdmmParams().theta0 == 100.0
	assert AdmmParams().replace(eps = 1e-3).eps == 1e-3

	for changes in [{'gamma': 1.0}, {'omega': 1.0}, {'eps': 0.0}, {'workers': 0}, {'inner_cap': 0}]:
		with pytest.raises(AdmmError):
			AdmmParams(**changes)

def test_consensusSize(case9):
	maps, _ = buildConsensus(case9, SLR)
	assert maps.d == 3 * 4

	lines = case9.thermalLines()[:2]
	maps, _ = buildConsensus(case9, DLR_TRANS, screened = lines)
	assert maps.d == 3 * (4 + 2)

	maps, _ = buildConsensus(case9, DLR_SS, screened = lines)
	assert maps.d == 3 * 4

def test_selectionMaps(case9):
	lines = case9.thermalLines()[:2]
	maps, state = buildConsensus(case9, DLR_TRANS, screened = lines, theta0 = 50.0)

	assert sorted(maps.y_index) == list(range(maps.d))
	assert np.array_equal(maps.periods[maps.yCoordinates(maps.generatorBlock(1))], np.arange(case9.horizon))
	assert set(maps.devices[maps.yCoordinates(maps.lineBlock(1))]) == {lines[1]}
	assert maps.scales[maps.yCoordinates(maps.lineBlock(0))][0] == pytest.approx((case9.branches[lines[0]].thermal.current_base / 1e3)**2)

	values = np.arange(maps.d, dtype = float)
	assert np.array_equal(maps.gatherY(maps.scatterY(values)), values)

	assert np.all(maps.residual(state.xs, state.y) == 0)
	assert state.rho == 2 * state.theta == 100.0
	assert state.entryInvariant() == 0.0

def test_storedCoordinates(case2):
	maps, state = buildConsensus(case2, DLR_TRANS, screened = [0])
	state = _randomState(maps, state, np.random.default_rng(0))

	primal = {'x': [x.tolist() for x in state.xs], 'y': state.y.tolist(), 'coordinates': maps.describe()}
	assert np.allclose(consensusResidual(primal), maps.residual(state.xs, state.y), rtol = 0, atol = 1e-12)

def test_slackStationarity(case2):
	maps, state = buildConsensus(case2, DLR_TRANS, screened = [0])
	state = _randomState(maps, state, np.random.default_rng(1))

	state.u = updateSlack(state, maps)
	p = maps.residual(state.xs, state.y) + state.u
	scale = max(1.0, np.max(np.abs(state.v)), state.rho * np.max(np.abs(maps.residual(state.xs, state.y))))

	assert np.max(np.abs(state.w + state.theta * state.u + state.v + state.rho * p)) <= 1e-10 * scale

def test_slackAtConsensus(case2):
	maps, state = buildConsensus(case2, DLR_SS)
	assert np.all(updateSlack(state, maps) == 0)

def test_nextPenalty():
	assert nextPenalty(100.0, 1.0, None, 6.0, 0.6) == 100.0
	assert nextPenalty(100.0, 0.5, 1.0, 6.0, 0.6) == 100.0

	theta = nextPenalty(100.0, 1.0, 1.0, 6.0, 0.6)
	theta = nextPenalty(theta, 0.9, 1.0, 6.0, 0.6)
	assert theta == pytest.approx(6.0**2 * 100.0)

def test_rampProjection():
	projector = RampProjector(_generator(), 2)

	assert np.array_equal(projector.project([0.5, 0.7]), [0.5, 0.7])
	assert np.allclose(projector.project([0.0, 1.0]), [0.3, 0.7], atol = 1e-6)
	assert not(projector.isFeasible(np.array([0.0, 1.0])))

def test_rampProjectionBounds():
	projector = RampProjector(_generator(), 4)
	profile = projector.project([-1.0, 0.0, 3.0, 3.0])

	assert projector.isFeasible(profile, tol = 1e-6)
	assert np.all(profile >= 0) and np.all(profile <= 2)

def test_renewableProjection():
	projector = RampProjector(_generator(renewable = True), 3)
	assert np.array_equal(projector.project([0.0, 1.8, 2.5]), [0.0, 1.8, 2.0])

def test_singlePeriodProjection():
	projector = RampProjector(_generator(), 1)
	assert np.array_equal(projector.project([-0.5]), [0.0])

def test_feasibleTemperatureTarget():
	case = buildFixture('case2', 'calm-hot', horizon = 2)
	thermal = LineThermal.fromCase(case, 0)
	target = 0.3 * thermal.steadyCaps()

	solution = solveTemperatureSubproblem(thermal, target, 1.0)
	assert np.array_equal(solution.current_sq, target)
	assert solution.iterations == 0
	assert np.all(solution.temps <= thermal.t_max)

def test_singlePeriodTemperatureClip():
	case = buildFixture('case2', 'calm-hot', horizon = 1)
	thermal = LineThermal.fromCase(case, 0)
	weather, lin = thermal.weathers[0], thermal.lins[0]

	excess = lambda current_sq: stepTemperature(thermal.initial_temp, current_sq * 1e6, thermal.params, weather, lin, case.dt) - thermal.t_max
	limit = scipy.optimize.brentq(excess, 0.0, 20 * thermal.steadyCaps()[0], xtol = 1e-12)

	solution = solveTemperatureSubproblem(thermal, [2 * limit], 1.0)
	assert solution.current_sq[0] == pytest.approx(limit, rel = 1e-4)
	assert solution.temps[0] <= thermal.t_max + 1e-6

def test_temperatureGridSearch():
	case = buildFixture('case2', 'calm-hot', horizon = 2)
	thermal = LineThermal.fromCase(case, 0)
	caps = thermal.steadyCaps()
	target = 1.6 * caps

	solution = solveTemperatureSubproblem(thermal, target, 1.0)
	objective = 0.5 * float(np.sum((solution.current_sq - target)**2))
	assert np.all(thermal.temperatures(solution.current_sq) <= thermal.t_max + 1e-6)

	best = math.inf
	for a in np.linspace(0, 2 * caps[0], 60):
		for b in np.linspace(0, 2 * caps[1], 60):
			z = np.array([a, b])
			if np.all(thermal.temperatures(z) <= thermal.t_max):
				best = min(best, 0.5 * float(np.sum((z - target)**2)))

	assert objective <= best + 1e-4

def test_lineThermalUnits(case2):
	thermal = LineThermal.fromCase(case2, 0)
	base = case2.branches[0].thermal.current_base
	assert thermal.physicalCurrents([1.0])[0] == pytest.approx(base**2 / 1e6)

	temps, jacobian = thermal.jacobian([0.5, 0.6])
	assert np.allclose(temps, thermal.temperatures([0.5, 0.6]))
	assert jacobian.shape == (2, 2)
	assert np.all(jacobian[np.tril_indices(2)] > 0)

def test_screeningSelectsLoadedLine():
	case = buildFixture('case2', 'calm-hot', horizon = 2)
	table = screeningTable(case)

	assert [entry.id for entry in table] == ['l1']
	assert table[0].selected
	assert table[0].periods_at_limit
	assert screenTransientLines(case) == [0]

def test_screeningUnloadedCase():
	case = buildFixture('case2', 'calm-hot', horizon = 2, load_factor = 0.0)
	assert screenTransientLines(case) == []

def test_screeningHotStart():
	document = fixtureDocument('case2', 'calm-hot', horizon = 2)
	document['branches'][0]['thermal']['initial_temp'] = 368.15

	table = screeningTable(caseFromDict(document))
	assert table[0].periods_at_limit
	assert not(table[0].selected)

def test_monolithicSizeGuard():
	case = buildFixture('case30', 'calm-hot', horizon = 25)

	with pytest.raises(ProblemTooLargeError):
		solveMonolithic(case, DLR_SS)

def test_reportFromState(case2, tmp_path):
	maps, state = buildConsensus(case2, DLR_SS)
	report = buildReport(case2, DLR_SS, state.xs, method = METHOD_ADMM, status = STATUS_MAX_OUTER, maps = maps, y = state.y, eps = 1e-4)

	assert report.d == maps.d
	assert report.consensus_l2 == 0.0
	assert not(report.converged)
	assert report.renewable_energy == 0.0
	assert set(report.line_temperatures) == {'l1'}

	filename = str(tmp_path / 'report.json')
	report.write(filename)
	assert SolveReport.read(filename).toDict() == report.toDict()

def test_reportSchemaVersion(case2):
	maps, state = buildConsensus(case2, DLR_SS)
	document = buildReport(case2, DLR_SS, state.xs, method = METHOD_ADMM, status = STATUS_MAX_OUTER, maps = maps, y = state.y).toDict()
	document['schema_version'] = 7

	with pytest.raises(AdmmError):
		SolveReport.fromDict(document)

def test_verifyFlatStart(case2):
	maps, state = buildConsensus(case2, DLR_SS)
	report = buildReport(case2, DLR_SS, state.xs, method = METHOD_ADMM, status = STATUS_MAX_OUTER, maps = maps, y = state.y)

	result = verifyReport(report, case2)
	assert 'ac_feasibility' in result.failures
	assert result.checks['consensus_recorded']['ok']
	assert result.checks['objective']['ok']

	with pytest.raises(ReportVerificationError):
		verifyReport(report, case2, strict = True)

def test_tamperedReport(case2):
	maps, state = buildConsensus(case2, DLR_SS)
	report = buildReport(case2, DLR_SS, state.xs, method = METHOD_ADMM, status = STATUS_MAX_OUTER, maps = maps, y = state.y)
	report.objective += 1.0
	report.consensus_l2 = 1.0

	failures = verifyReport(report, case2).failures
	assert 'objective' in failures
	assert 'consensus_recorded' in failures

def test_configHash(case2, case9):
	assert configHash({'a': 1}, case2) == configHash({'a': 1}, case2)
	assert configHash({'a': 1}, case2) != configHash({'a': 2}, case2)
	assert configHash({'a': 1}, case2) != configHash({'a': 1}, case9)

def test_rhoDiagnostic(case2):
	with BilevelADMM(case2, DLR_SS) as admm:
		assert admm.rho_diagnostic['c_delta'] == 0.0
		assert admm.rho_diagnostic['satisfied']

	with BilevelADMM(case2, DLR_TRANS, screened = [0]) as admm:
		assert admm.screened == [0]
		assert admm.rho_diagnostic['c_delta'] > 0
		assert admm.maps.d == 2 * 3

def test_traceWriter(case2, tmp_path):
	filename = str(tmp_path / 'trace.jsonl')
	jsonfiles.appendLine({'stale': True}, filename)

	admm = BilevelADMM(case2, DLR_SS)
	TraceWriter(admm, filename)
	admm.events.trigger('inner-iteration', {'k': 1, 'r': 1})
	admm.events.trigger('inner-iteration', {'k': 1, 'r': 2})

	assert [record['r'] for record in jsonfiles.readLines(filename)] == [1, 2]

def test_outerCap(case2):
	params = AdmmParams(eps = 1e-14, outer_cap = 1, inner_cap = 3)

	with BilevelADMM(case2, DLR_SS, params) as admm:
		with pytest.raises(OuterMaxIterError) as info:
			admm.run()

	report = info.value.report
	assert report.status == STATUS_MAX_OUTER
	assert report.outer_iterations == 1
	assert 1 <= report.inner_iterations <= 3
	assert [record['r'] for record in report.trace] == list(range(1, report.inner_iterations + 1))
	assert len(report.protocol) == 1

def test_workersReproducible(case2):
	reports = []
	for workers in [1, 2]:
		params = AdmmParams(eps = 1e-14, outer_cap = 1, inner_cap = 3, workers = workers)
		with pytest.raises(OuterMaxIterError) as info:
			BilevelADMM(case2, DLR_SS, params).run()

		reports.append(info.value.report)

	assert reports[0].objective == reports[1].objective
	assert [r['consensus_l2'] for r in reports[0].trace] == [r['consensus_l2'] for r in reports[1].trace]

def test_innerEntryReset(case2):
	params = AdmmParams(eps = 1e-14, outer_cap = 1, inner_cap = 1)
	rng = np.random.default_rng(4)

	with BilevelADMM(case2, DLR_SS, params) as admm:
		admm.state.w = rng.normal(size = admm.maps.d)
		admm.state.u = rng.normal(size = admm.maps.d)
		admm.state.v = rng.normal(size = admm.maps.d)
		admm.state.rho = 1.0

		outcome = admm.innerADMM()

	assert outcome.iterations == 1
	assert outcome.entry_invariant == 0.0
	assert admm.state.rho == 2 * admm.state.theta

def test_tamperedEntryInvariant(case2):
	params = AdmmParams(eps = 1e-14, outer_cap = 1, inner_cap = 1)
	with pytest.raises(OuterMaxIterError) as info:
		BilevelADMM(case2, DLR_SS, params).run()

	report = info.value.report
	assert report.protocol[0]['entry_invariant'] == 0.0
	assert verifyReport(report, case2).checks['entry_invariant']['ok']

	report.protocol[0]['entry_invariant'] = report.protocol[0]['scale']
	assert 'entry_invariant' in verifyReport(report, case2).failures

def test_subproblemRetry(case2, monkeypatch):
	def rejectWarmStart(spec, case, **kwargs):
		if not(spec.warm_start is None):
			raise SubproblemFailure(f'period {spec.period}', 0, math.inf, 'warm start rejected')

		return solveAcSubproblem(spec, case, **kwargs)

	monkeypatch.setattr('dlropf.admm.admm.solveAcSubproblem', rejectWarmStart)

	retries = []
	admm = BilevelADMM(case2, DLR_SS, AdmmParams(eps = 1e-14, outer_cap = 2, inner_cap = 1))
	admm.events.addListener('subproblem-retry', lambda period, error: retries.append(period))

	with pytest.raises(OuterMaxIterError):
		admm.run()

	assert retries == [0, 1]

def test_consistentStartSingleOuter(case2):
	report = BilevelADMM(case2, DLR_SS).run()

	assert report.converged
	assert report.outer_iterations == 1
	assert report.inner_iterations == 1
	assert report.consensus_l2 <= math.sqrt(report.d) * report.eps

@pytest.mark.slow
def test_consensusDecrease():
	document = fixtureDocument('case2', 'windy-cool', horizon = 2)
	document['demand']['b2'] = [{'p': 0.4, 'q': 0.1}, {'p': 0.9, 'q': 0.2}]
	for generator, ramp in zip(document['generators'], [0.1, 1.0]):
		generator['ramp_up'] = ramp
		generator['ramp_down'] = ramp

	case = caseFromDict(document)
	report = BilevelADMM(case, DLR_SS).run()

	residuals = [record['consensus_l2'] for record in report.trace]
	assert report.converged
	assert residuals[min(9, len(residuals) - 1)] <= residuals[0] / 10

@pytest.mark.slow
def test_admmTwoBus(case2):
	events = []

	admm = BilevelADMM(case2, DLR_SS)
	admm.events.addListener('outer-end', lambda record: events.append(record['k']))
	report = admm.run()

	assert report.converged
	assert report.consensus_l2 <= math.sqrt(report.d) * report.eps
	assert events == list(range(1, report.outer_iterations + 1))
	assert [(r['k'], r['r']) for r in report.trace] == sorted((r['k'], r['r']) for r in report.trace)
	assert verifyReport(report, case2).ok

@pytest.mark.slow
def test_admmMatchesMonolithic(case9):
	reference = solveMonolithic(case9, DLR_SS)
	report = BilevelADMM(case9, DLR_SS).run()

	assert verifyReport(reference, case9).ok
	assert verifyReport(report, case9).ok
	assert report.objective == pytest.approx(reference.objective, rel = 1e-2)

@pytest.mark.slow
def test_transientRelaxesSteadyState():
	case = buildFixture('case2', 'calm-hot', horizon = 3)

	steady = solveMonolithic(case, DLR_SS)
	transient = solveMonolithic(case, DLR_TRANS)

	assert transient.screened == ['l1']
	assert transient.objective <= steady.objective + 1e-6

	thermal = LineThermal.fromCase(case, 0)
	assert np.max(thermal.temperatures(transient.line_currents['l1'])) <= thermal.t_max + 1e-6

@pytest.mark.slow
def test_admmTransient():
	case = buildFixture('case2', 'calm-hot', horizon = 3)
	report = BilevelADMM(case, DLR_TRANS).run()
	reference = solveMonolithic(case, DLR_TRANS)

	assert report.screened == ['l1']
	assert verifyReport(report, case).ok
	assert report.objective == pytest.approx(reference.objective, rel = 1e-2)

@pytest.mark.slow
@pytest.mark.parametrize('name, load_factor', [('case9', None), ('case30', 1.2)])
def test_transientRelaxesCongestedSteadyState(name, load_factor):
	case = buildFixture(name, 'step-change', horizon = 6, load_factor = load_factor)

	steady = solveMonolithic(case, DLR_SS)
	transient = solveMonolithic(case, DLR_TRANS)

	assert transient.objective <= steady.objective * (1 + 1e-6)
	_assertBelowLimit(case, transient)

@pytest.mark.slow
def test_stepChangeHeadroom():
	case = buildFixture('case9', 'step-change')
	report = solveMonolithic(case, DLR_TRANS)

	assert len(report.screened) >= 1
	assert sorted(report.headroom) == sorted(report.screened)

	runs = [_runLengths(periods) for periods in report.headroom.values()]
	assert any(lengths and max(lengths) <= 4 for lengths in runs)
	_assertBelowLimit(case, report)
