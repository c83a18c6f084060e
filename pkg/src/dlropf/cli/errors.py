#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class CliError(Exception):
	'''
	Base class for exceptions raised by the command line interface.
	'''

	pass

class ConfigError(CliError):
	'''
	Exception raised when a run configuration is not consistent.

	Parameters
	----------
	field : str
		The faulty option.

	message : str
		What is wrong.
	'''

	def __init__(self, field, message):
		super().__init__(f'{field}: {message}')
		self.field = field
		self.message = message

class UnknownLineError(CliError):
	'''
	Exception raised when a line id does not name a thermal line of the case.

	Parameters
	----------
	line : str
		The id.
	'''

	def __init__(self, line):
		super().__init__(f'no thermal line named {line}')
		self.line = line
