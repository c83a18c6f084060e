#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
import os

from ..utils import jsonfiles
from ..utils.string import plural

logger = logging.getLogger(__name__)

class TraceWriter():
	'''
	Append every inner iteration record of a run to a JSON-lines file.

	Parameters
	----------
	admm : BilevelADMM
		The run to follow.

	filename : str
		Path of the trace. An existing file is replaced.
	'''

	def __init__(self, admm, filename):
		self._filename = filename

		if os.path.isfile(filename):
			os.unlink(filename)

		admm.events.addListener('inner-iteration', self._innerIteration)

	@property
	def filename(self):
		return self._filename

	def _innerIteration(self, record):
		jsonfiles.appendLine(record, self._filename)

class ProgressLogger():
	'''
	Log the steps of a run.

	Parameters
	----------
	admm : BilevelADMM
		The run to follow.

	every : int
		Log one inner iteration out of `every`.
	'''

	def __init__(self, admm, *, every = 10):
		self._every = every

		admm.events.addListener('run-start', self._runStart)
		admm.events.addListener('run-end', self._runEnd)
		admm.events.addListener('outer-start', self._outerStart)
		admm.events.addListener('outer-end', self._outerEnd)
		admm.events.addListener('inner-iteration', self._innerIteration)
		admm.events.addListener('penalty-increase', self._penaltyIncrease)
		admm.events.addListener('subproblem-retry', self._subproblemRetry)

	def _runStart(self, case_name, scheme, d):
		logger.info(f'solving {case_name or "case"} under {scheme} with {plural(d, "consensus coordinate", "consensus coordinates")}')

	def _runEnd(self, report):
		logger.info(f'{report.status} after {plural(report.outer_iterations, "outer iteration", "outer iterations")} and {report.inner_iterations} inner: objective {report.objective:.4f}, ‖Ax + By‖∞ = {report.consensus_inf:.3e}')

	def _outerStart(self, k, theta):
		logger.info(f'outer iteration {k}, θ = {theta:g}')

	def _outerEnd(self, record):
		logger.info(f'outer iteration {record["k"]} done in {record["inner_iterations"]} inner iterations, ‖Ax + By‖₂ = {record["feas_l2"]:.3e}')

	def _innerIteration(self, record):
		if record['r'] % self._every == 0:
			logger.debug(f'k = {record["k"]}, r = {record["r"]}: ‖p‖₂ = {record["consensus_l2"]:.3e}, ‖Ax + By‖₂ = {record["feas_l2"]:.3e}')

	def _penaltyIncrease(self, old, new):
		logger.info(f'penalty increased from {old:g} to {new:g}')

	def _subproblemRetry(self, period, error):
		logger.warning(f'period {period} failed from its warm start ({error}), retrying from flat start')
