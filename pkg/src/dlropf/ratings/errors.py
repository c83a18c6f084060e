#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class RatingError(Exception):
	'''
	Base class for exceptions raised by the rating schemes.
	'''

	pass

class UnknownSchemeError(RatingError):
	'''
	Exception raised when a rating scheme name is not recognized.

	Parameters
	----------
	name : str
		The requested name.
	'''

	def __init__(self, name):
		super().__init__(f'unknown rating scheme `{name}`')
		self.name = name

class SeasonError(RatingError):
	'''
	Exception raised when a season is missing for a static rating, given for another scheme, or unknown.

	Parameters
	----------
	kind : RatingKind
		The scheme.

	season : str
		The given season.
	'''

	def __init__(self, kind, season):
		super().__init__(f'invalid season {season!r} for scheme {kind.value}')
		self.kind = kind
		self.season = season

class CapComputationError(RatingError):
	'''
	Exception raised when the ampacity of a line cannot be computed for a period.

	Parameters
	----------
	line : str
		Identifier of the line.

	period : int
		Period index.

	cause : Exception
		The thermal error.
	'''

	def __init__(self, line, period, cause):
		super().__init__(f'line {line}, period {period}: {cause}')
		self.line = line
		self.period = period
		self.cause = cause
