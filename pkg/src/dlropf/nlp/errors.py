#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class NlpError(Exception):
	'''
	Base class for exceptions raised by the nonlinear programming solver.
	'''

	pass

class ProblemDimensionError(NlpError):
	'''
	Exception raised when the pieces of a problem do not have consistent dimensions.

	Parameters
	----------
	what : str
		The inconsistent piece.

	expected : int|tuple
		The expected size or shape.

	got : int|tuple
		The actual size or shape.
	'''

	def __init__(self, what, expected, got):
		super().__init__(f'{what}: expected {expected}, got {got}')
		self.what = what
		self.expected = expected
		self.got = got

class InvalidBoundsError(NlpError):
	'''
	Exception raised when a lower bound exceeds the corresponding upper bound.

	Parameters
	----------
	index : int
		Index of the variable.
	'''

	def __init__(self, index):
		super().__init__(f'empty bound interval for variable {index}')
		self.index = index

class EvaluationError(NlpError):
	'''
	Exception raised when the problem cannot be evaluated at the initial point.

	Parameters
	----------
	what : str
		The evaluator that failed.

	cause : Exception
		The underlying error, if any.
	'''

	def __init__(self, what, cause = None):
		super().__init__(f'cannot evaluate {what} at the initial point' + ('' if cause is None else f' ({cause})'))
		self.what = what
		self.cause = cause

class SolverReusedError(NlpError):
	'''
	Exception raised when a solver instance is run twice.
	'''

	def __init__(self):
		super().__init__('an interior point solver instance can only be run once')
