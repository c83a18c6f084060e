#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json
import os

import numpy as np

class _NumpyEncoder(json.JSONEncoder):
	'''
	Serialize numpy scalars and arrays as plain JSON numbers and lists.
	'''

	def default(self, obj):
		if isinstance(obj, np.ndarray):
			return obj.tolist()

		if isinstance(obj, np.integer):
			return int(obj)

		if isinstance(obj, np.floating):
			return float(obj)

		if isinstance(obj, np.bool_):
			return bool(obj)

		return super().default(obj)

def _ensureDirectory(filename):
	dirname = os.path.dirname(filename)
	if dirname and not(os.path.isdir(dirname)):
		os.makedirs(dirname)

def read(filename):
	'''
	Read a JSON file.

	Parameters
	----------
	filename : str
		Path to the JSON file to read.

	Returns
	-------
	obj : dict|list
		The decoded object.
	'''

	with open(filename, 'r') as f:
		return json.loads(f.read())

def dumps(obj, *, sort_keys = False):
	'''
	Encode an object the way `write()` stores it.

	Parameters
	----------
	obj : dict|list
		Object to encode.

	sort_keys : bool
		`True` to sort the keys.

	Returns
	-------
	text : str
		The JSON text, ending with a newline.
	'''

	return json.dumps(obj, cls = _NumpyEncoder, sort_keys = sort_keys, indent = '\t', separators = (',', ': ')) + '\n'

def write(obj, filename, *, sort_keys = False):
	'''
	Save an object into a JSON file, creating the parent directory if needed.

	Parameters
	----------
	obj : dict|list
		Object to save.

	filename : str
		Path to the JSON file.

	sort_keys : bool
		`True` to sort the keys before writing the file.
	'''

	_ensureDirectory(filename)

	with open(filename, 'w') as f:
		f.write(dumps(obj, sort_keys = sort_keys))

def appendLine(obj, filename):
	'''
	Append one compact record to a JSON-lines file.

	Parameters
	----------
	obj : dict
		Record to append.

	filename : str
		Path to the JSON-lines file.
	'''

	_ensureDirectory(filename)

	with open(filename, 'a') as f:
		f.write(json.dumps(obj, cls = _NumpyEncoder, sort_keys = True, separators = (',', ':')) + '\n')

def readLines(filename):
	'''
	Read a JSON-lines file.

	Parameters
	----------
	filename : str
		Path to the file.

	Returns
	-------
	records : list
		The decoded records, in file order.
	'''

	with open(filename, 'r') as f:
		return [json.loads(line) for line in f if line.strip()]
