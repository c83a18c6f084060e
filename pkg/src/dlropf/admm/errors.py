#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class AdmmError(Exception):
	'''
	Base class for exceptions raised by the decomposition.
	'''

	pass

class InnerStalledError(AdmmError):
	'''
	Exception raised when the inner loop reaches its iteration cap, if stalls are not tolerated.

	Parameters
	----------
	outer : int
		Outer iteration index.

	iterations : int
		Inner iterations performed.

	residual : float
		Last consensus residual ‖Ax + By + u‖₂.

	threshold : float
		Exit threshold of the inner loop.
	'''

	def __init__(self, outer, iterations, residual, threshold):
		super().__init__(f'inner loop {outer} stalled after {iterations} iterations (residual {residual:.3e} > {threshold:.3e})')
		self.outer = outer
		self.iterations = iterations
		self.residual = residual
		self.threshold = threshold

class OuterMaxIterError(AdmmError):
	'''
	Exception raised when the outer loop does not reach the feasibility tolerance.

	Parameters
	----------
	iterations : int
		Outer iterations performed.

	report : SolveReport
		Report of the last state.
	'''

	def __init__(self, iterations, report):
		super().__init__(f'no consensus after {iterations} outer iterations (‖Ax + By‖₂ = {report.consensus_l2:.3e})')
		self.iterations = iterations
		self.report = report

class ProblemTooLargeError(AdmmError):
	'''
	Exception raised when the undecomposed problem is too large for a dense solve.

	Parameters
	----------
	buses : int
		Number of buses.

	periods : int
		Number of periods.

	limit : int
		Largest allowed buses × periods.
	'''

	def __init__(self, buses, periods, limit):
		super().__init__(f'{buses} buses × {periods} periods exceeds {limit}')
		self.buses = buses
		self.periods = periods
		self.limit = limit

class ReportVerificationError(AdmmError):
	'''
	Exception raised when a stored report fails verification.

	Parameters
	----------
	failures : list
		Names of the failed checks.
	'''

	def __init__(self, failures):
		super().__init__('failed checks: ' + ', '.join(failures))
		self.failures = failures
