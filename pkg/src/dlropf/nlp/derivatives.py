#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np

def centralGradient(f, z, h = 1e-6):
	'''
	Central finite-difference gradient of a scalar function.

	Parameters
	----------
	f : callable
		The function.

	z : numpy.ndarray
		Point of evaluation.

	h : float
		Step.

	Returns
	-------
	gradient : numpy.ndarray
		The approximated gradient.
	'''

	z = np.array(z, dtype = float)
	gradient = np.zeros(len(z))

	for j in range(len(z)):
		forward, backward = z.copy(), z.copy()
		forward[j] += h
		backward[j] -= h
		gradient[j] = (f(forward) - f(backward)) / (2 * h)

	return gradient

def centralJacobian(f, z, h = 1e-6):
	'''
	Central finite-difference Jacobian of a vector function.

	Returns
	-------
	jacobian : numpy.ndarray
		Matrix of shape (len(f(z)), len(z)).
	'''

	z = np.array(z, dtype = float)
	m = len(np.atleast_1d(f(z)))
	jacobian = np.zeros((m, len(z)))

	for j in range(len(z)):
		forward, backward = z.copy(), z.copy()
		forward[j] += h
		backward[j] -= h
		jacobian[:, j] = (np.atleast_1d(f(forward)) - np.atleast_1d(f(backward))) / (2 * h)

	return jacobian

def _relativeError(analytic, approximated):
	analytic = np.atleast_2d(analytic)
	approximated = np.atleast_2d(approximated)
	if analytic.size == 0:
		return 0.0

	scale = np.maximum(1.0, np.max(np.abs(approximated), axis = 1, keepdims = True))
	return float(np.max(np.abs(analytic - approximated) / scale))

def checkDerivatives(problem, point = None, h = 1e-6):
	'''
	Compare the analytic derivatives of a problem with central differences.
	Errors are taken relative to the largest entry of each row (at least 1).

	Parameters
	----------
	problem : NlpProblem
		The problem to check.

	point : numpy.ndarray
		Where to compare. Default to the initial point of the problem.

	h : float
		Finite-difference step.

	Returns
	-------
	error : float
		Largest relative error over the gradient and every Jacobian row.
	'''

	z = problem.x0 if point is None else np.asarray(point, dtype = float)

	errors = [
		_relativeError(problem.gradient(z), centralGradient(problem.objective, z, h)),
		_relativeError(problem.equalityJacobian(z), centralJacobian(problem.equalities, z, h)),
		_relativeError(problem.inequalityJacobian(z), centralJacobian(problem.inequalities, z, h))
	]

	return max(errors)
