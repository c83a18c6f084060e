#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import base64
import hashlib
import json

def hash(s):
	'''
	Short URL-safe digest of a string.

	Parameters
	----------
	s : str
		The string to hash.

	Returns
	-------
	hash : str
		The digest, 22 characters.
	'''

	digest = hashlib.sha256(s.encode('utf-8')).digest()[:16]
	return base64.urlsafe_b64encode(digest).decode().rstrip('=')

def hashObject(obj):
	'''
	Digest of a JSON-serializable object, independent of the keys order.

	Parameters
	----------
	obj : dict|list
		The object.

	Returns
	-------
	hash : str
		The digest of its canonical JSON encoding.
	'''

	return hash(json.dumps(obj, sort_keys = True, separators = (',', ':')))

def plural(n, if_single, if_plural, *, add_n = True):
	'''
	Return a string or another, depending on a number.

	Parameters
	----------
	n : int
		The number to test.

	if_single : str
		The string to return if `n` is lower or equal than 1.

	if_plural : str
		The string to return if `n` is greater than 1.

	add_n : bool
		`True` to prepend the number.

	Returns
	-------
	s : str
		The single or plural string.
	'''

	s = if_plural if n > 1 else if_single

	if add_n:
		s = f'{n} {s}'

	return s
