#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class NetworkError(Exception):
	'''
	Base class for exceptions raised while loading or using a network case.
	'''

	pass

class SchemaError(NetworkError):
	'''
	Exception raised when a case document does not follow the schema.

	Parameters
	----------
	path : str
		Dotted path of the offending field.

	message : str
		What is wrong with it.
	'''

	def __init__(self, path, message):
		super().__init__(f'{path}: {message}')
		self.path = path
		self.message = message

class CaseValidationError(NetworkError):
	'''
	Exception raised when a well-formed case violates a physical or structural invariant.

	Parameters
	----------
	entity : str
		Identifier of the offending bus, branch, generator or series.

	message : str
		The violated rule.
	'''

	def __init__(self, entity, message):
		super().__init__(f'{entity}: {message}')
		self.entity = entity
		self.message = message

class MissingThermalDataError(NetworkError):
	'''
	Exception raised when a thermal quantity is requested for a branch without conductor data.

	Parameters
	----------
	branch : str
		Identifier of the branch.
	'''

	def __init__(self, branch):
		super().__init__(f'branch {branch} has no thermal data')
		self.branch = branch

class UnknownFixtureError(NetworkError):
	'''
	Exception raised when a bundled fixture or weather regime does not exist.

	Parameters
	----------
	name : str
		Requested name.
	'''

	def __init__(self, name):
		super().__init__(f'unknown fixture `{name}`')
		self.name = name
