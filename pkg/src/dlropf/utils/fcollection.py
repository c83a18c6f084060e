#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import inspect
import re

from .errors import *

class FCollection():
	'''
	Named collection of functions, optionally split into categories.
	Used to register pluggable physics providers and event listeners.

	Parameters
	----------
	categories : list
		Names of the categories. Empty to store all functions together.

	filter_regex : str
		Regex selecting the functions of a module to register with `loadFromModule()`.
	'''

	def __init__(self, *, categories = [], filter_regex = None):
		self._use_categories = bool(categories)
		self._functions = {cat: {} for cat in categories} if self._use_categories else {}
		self._filter_regex = None

		if filter_regex:
			self.setFilterRegex(filter_regex)

	def _bucket(self, category = None):
		'''
		Get the dictionary holding the functions of a category.

		Parameters
		----------
		category : str
			Name of the category, ignored for uncategorized collections.

		Raises
		------
		FCollectionCategoryNotFoundError
			The category does not exist.

		Returns
		-------
		bucket : dict
			The functions, indexed by name.
		'''

		if not(self._use_categories):
			return self._functions

		try:
			return self._functions[category]

		except KeyError:
			raise FCollectionCategoryNotFoundError(category)

	def set(self, fname, f, *, category = None):
		'''
		Store a function, replacing any function of the same name.

		Parameters
		----------
		fname : str
			Name to store the function under.

		f : callable
			The function.

		category : str
			Name of the category, if any.
		'''

		self._bucket(category)[fname] = f

	def get(self, fname, *, category = None):
		'''
		Get a function by name.

		Parameters
		----------
		fname : str
			Name of the function.

		category : str
			Name of the category, if any.

		Raises
		------
		FCollectionFunctionNotFoundError
			No function is stored under this name.

		Returns
		-------
		f : callable
			The stored function.
		'''

		bucket = self._bucket(category)

		try:
			return bucket[fname]

		except KeyError:
			raise FCollectionFunctionNotFoundError(fname)

	def names(self, *, category = None):
		'''
		Names of the stored functions, in insertion order.

		Returns
		-------
		names : list
			The names.
		'''

		return list(self._bucket(category).keys())

	def getAll(self, *, category = None):
		'''
		All stored functions, in insertion order.

		Returns
		-------
		functions : list
			The functions.
		'''

		return list(self._bucket(category).values())

	def setFilterRegex(self, filter_regex):
		'''
		Define the regex used by `loadFromModule()`.
		It must define a group `name`, plus a group `category` for categorized collections.

		Parameters
		----------
		filter_regex : str
			The regex.

		Raises
		------
		FCollectionInvalidFilterRegexError
			A required group is missing.
		'''

		regex = re.compile(filter_regex)

		if not('name' in regex.groupindex) or (self._use_categories and not('category' in regex.groupindex)):
			raise FCollectionInvalidFilterRegexError(filter_regex)

		self._filter_regex = regex

	def loadFromModule(self, module):
		'''
		Register the functions of a module whose name matches the filter regex.

		Parameters
		----------
		module : Module
			An already imported module.
		'''

		for fname, f in inspect.getmembers(module, inspect.isfunction):
			match = self._filter_regex.match(fname)

			if match:
				category = match.group('category') if self._use_categories else None
				self.set(match.group('name'), f, category = category)
