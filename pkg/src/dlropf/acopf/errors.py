#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class AcopfError(Exception):
	'''
	Base class for exceptions raised by the per-period AC block.
	'''

	pass

class DimensionMismatchError(AcopfError):
	'''
	Exception raised when period variables do not match the case.

	Parameters
	----------
	field : str
		The mismatching field.

	expected : int
		Size implied by the case.

	got : int
		Actual size.
	'''

	def __init__(self, field, expected, got):
		super().__init__(f'`{field}` has {got} entries instead of {expected}')
		self.field = field
		self.expected = expected
		self.got = got

class PeriodOutOfRangeError(AcopfError):
	'''
	Exception raised when a period index is outside the horizon.

	Parameters
	----------
	period : int
		The requested period.

	horizon : int
		Number of periods of the case.
	'''

	def __init__(self, period, horizon):
		super().__init__(f'period {period} is outside [0, {horizon})')
		self.period = period
		self.horizon = horizon

class SubproblemFailure(AcopfError):
	'''
	Exception raised when a subproblem solve does not reach a stationary point.

	Parameters
	----------
	where : str
		The period or device of the subproblem.

	iterations : int
		Iterations performed.

	residual : float
		Best KKT residual reached.

	reason : str
		What went wrong.
	'''

	def __init__(self, where, iterations, residual, reason = ''):
		super().__init__(f'subproblem {where} failed after {iterations} iterations (best residual {residual:.3e})' + (f': {reason}' if reason else ''))
		self.where = where
		self.iterations = iterations
		self.residual = residual
		self.reason = reason
