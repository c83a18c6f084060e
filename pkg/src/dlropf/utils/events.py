#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .fcollection import FCollection
from .errors import *

class Events():
	'''
	Minimal publish/subscribe system. Listeners are called in the order they were added.

	Parameters
	----------
	events_names : list
		Names of the events handled by this instance.
	'''

	def __init__(self, events_names):
		self._names = list(events_names)
		self._callbacks = FCollection(categories = self._names)

	@property
	def names(self):
		'''
		Declared events.

		Returns
		-------
		names : list
			Names of the events.
		'''

		return list(self._names)

	def addListener(self, event, f):
		'''
		Attach a callback to an event.

		Parameters
		----------
		event : str
			Name of the event.

		f : callable
			Function to call when the event is triggered.

		Raises
		------
		EventUnknownError
			The event does not exist.
		'''

		try:
			fname = getattr(f, '__qualname__', None) or repr(f)
			n = len(self._callbacks.names(category = event))
			self._callbacks.set(f'{n}:{fname}', f, category = event)

		except FCollectionCategoryNotFoundError:
			raise EventUnknownError(event)

	def trigger(self, event, *args):
		'''
		Call every callback attached to an event.

		Parameters
		----------
		event : str
			Name of the event.

		args : mixed
			Arguments passed to the callbacks.

		Raises
		------
		EventUnknownError
			The event does not exist.
		'''

		try:
			functions = self._callbacks.getAll(category = event)

		except FCollectionCategoryNotFoundError:
			raise EventUnknownError(event)

		else:
			for f in functions:
				f(*args)
