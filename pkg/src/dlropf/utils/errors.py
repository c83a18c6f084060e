#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class EventsError(Exception):
	'''
	Base class for exceptions raised by the events system.
	'''

	pass

class EventUnknownError(EventsError):
	'''
	Exception raised when a listener is attached to, or a trigger is sent for, an undeclared event.

	Parameters
	----------
	event : str
		Name of the event.
	'''

	def __init__(self, event):
		super().__init__(f'unknown event `{event}`')
		self.event = event

class FCollectionError(Exception):
	'''
	Base class for exceptions raised by a function collection.
	'''

	pass

class FCollectionCategoryNotFoundError(FCollectionError):
	'''
	Exception raised when a category does not exist in the collection.

	Parameters
	----------
	category : str
		Name of the category.
	'''

	def __init__(self, category):
		super().__init__(f'unknown category `{category}`')
		self.category = category

class FCollectionFunctionNotFoundError(FCollectionError):
	'''
	Exception raised when no function is stored under a name.

	Parameters
	----------
	fname : str
		Name of the function.
	'''

	def __init__(self, fname):
		super().__init__(f'unknown function `{fname}`')
		self.fname = fname

class FCollectionInvalidFilterRegexError(FCollectionError):
	'''
	Exception raised when a filter regex lacks the required named groups.

	Parameters
	----------
	regex : str
		The invalid regex.
	'''

	def __init__(self, regex):
		super().__init__(f'filter regex `{regex}` misses a required group')
		self.regex = regex
