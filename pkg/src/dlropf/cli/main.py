#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import argparse
import logging
import sys

from .commands import cmdSolve, cmdCompare, cmdScreen, cmdThermalSim, cmdVerify, cmdFixture, EXIT_ERROR
from .config import RunConfig
from .errors import *
from ..acopf import AcopfError
from ..admm import AdmmError
from ..network import NetworkError, FIXTURES, REGIMES
from ..nlp import NlpError
from ..ratings import RatingError, RatingKind
from ..thermal import ThermalError

HANDLED_ERRORS = (CliError, NetworkError, ThermalError, RatingError, AcopfError, NlpError, AdmmError, OSError)

SCHEMES = [kind.value for kind in RatingKind]

def _addCaseArguments(parser):
	parser.add_argument('--case', required = True, help = 'case file (JSON)')
	parser.add_argument('--weather', help = 'weather sidecar (CSV), replacing the embedded weather')
	parser.add_argument('--horizon', type = int, help = 'number of leading periods to keep')
	parser.add_argument('--dt', type = float, help = 'period length, in seconds')
	parser.add_argument('--season', choices = ['summer', 'winter'], default = 'summer', help = 'season of the static rating')
	parser.add_argument('--out', help = 'output file (standard output if omitted)')

def _addSolverArguments(parser):
	parser.add_argument('--method', choices = ['admm', 'monolithic'], default = 'admm', help = 'decomposition or direct solve')
	parser.add_argument('--theta0', type = float, help = 'initial outer penalty')
	parser.add_argument('--gamma', type = float, help = 'penalty growth factor')
	parser.add_argument('--omega', type = float, help = 'required slack decrease ratio')
	parser.add_argument('--eps', type = float, help = 'feasibility tolerance per coordinate')
	parser.add_argument('--inner-cap', dest = 'inner_cap', type = int, help = 'inner iterations cap')
	parser.add_argument('--outer-cap', dest = 'outer_cap', type = int, help = 'outer iterations cap')
	parser.add_argument('--workers', type = int, help = 'number of threads of the parallel phases')
	parser.add_argument('--trace', help = 'JSON-lines file receiving one record per inner iteration')
	parser.add_argument('--seed', type = int, default = 0, help = 'seed recorded in the configuration hash')

def buildParser():
	'''
	Parser of the command line.

	Returns
	-------
	parser : argparse.ArgumentParser
		The parser, with one subparser per command.
	'''

	parser = argparse.ArgumentParser(prog = 'dlropf', description = 'Multi-period AC optimal power flow with dynamic line ratings.')
	verbosity = parser.add_mutually_exclusive_group()
	verbosity.add_argument('-v', '--verbose', action = 'store_true', help = 'log debug messages')
	verbosity.add_argument('-q', '--quiet', action = 'store_true', help = 'log warnings and errors only')

	subparsers = parser.add_subparsers(dest = 'command', required = True)

	solve = subparsers.add_parser('solve', help = 'solve a case under a rating scheme')
	_addCaseArguments(solve)
	_addSolverArguments(solve)
	solve.add_argument('--scheme', choices = SCHEMES, default = 'dlr-ss', help = 'rating scheme')

	compare = subparsers.add_parser('compare', help = 'compare rating schemes on a case')
	_addCaseArguments(compare)
	_addSolverArguments(compare)
	compare.add_argument('--scheme', dest = 'schemes', action = 'append', choices = SCHEMES, help = 'scheme to compare (repeatable)')
	compare.add_argument('--csv', help = 'CSV file receiving the comparison table')

	screen = subparsers.add_parser('screen', help = 'list the lines that get the transient model')
	_addCaseArguments(screen)

	thermal_sim = subparsers.add_parser('thermal-sim', help = 'temperature trajectory of a line under a current schedule')
	_addCaseArguments(thermal_sim)
	thermal_sim.add_argument('--line', required = True, help = 'id of the thermal line')
	thermal_sim.add_argument('--current', dest = 'currents', type = float, action = 'append', required = True, help = 'current of a period, in A (repeatable)')
	thermal_sim.add_argument('--t0', type = float, help = 'initial temperature, in K')
	thermal_sim.add_argument('--substeps', type = int, default = 1, help = 'points per period')

	verify = subparsers.add_parser('verify', help = 'check a stored report against its case')
	_addCaseArguments(verify)
	verify.add_argument('--report', required = True, help = 'report file (JSON)')

	fixture = subparsers.add_parser('fixture', help = 'write a bundled fixture')
	fixture.add_argument('name', choices = sorted(FIXTURES), help = 'fixture')
	fixture.add_argument('--regime', choices = sorted(REGIMES), default = 'calm-hot', help = 'weather regime')
	fixture.add_argument('--horizon', type = int, help = 'number of periods')
	fixture.add_argument('--load-factor', dest = 'load_factor', type = float, help = 'multiplier of the nominal loads')
	fixture.add_argument('--seed', type = int, default = 0, help = 'seed of the random draws')
	fixture.add_argument('--out', help = 'output file (standard output if omitted)')

	return parser

def _configureLogging(args):
	level = logging.DEBUG if args.verbose else (logging.WARNING if args.quiet else logging.INFO)
	logging.basicConfig(level = level, format = '%(levelname)s %(name)s: %(message)s', stream = sys.stderr, force = True)

def _run(args):
	if args.command == 'fixture':
		return cmdFixture(args.name, args.regime, args.out, horizon = args.horizon, load_factor = args.load_factor, seed = args.seed)

	config = RunConfig.fromArgs(args)

	if args.command == 'solve':
		return cmdSolve(config)

	if args.command == 'compare':
		return cmdCompare(config, args.schemes or [])

	if args.command == 'screen':
		return cmdScreen(config)

	if args.command == 'thermal-sim':
		return cmdThermalSim(config, args.line, args.currents, initial_temp = args.t0, substeps = args.substeps)

	return cmdVerify(config, args.report)

def main(argv = None):
	'''
	Entry point of the `dlropf` script.

	Parameters
	----------
	argv : list
		Arguments, default to the command line.

	Returns
	-------
	code : int
		0 on success, 1 on error, 2 when a solve did not converge.
	'''

	args = buildParser().parse_args(argv)
	_configureLogging(args)

	try:
		return _run(args)

	except HANDLED_ERRORS as e:
		sys.stderr.write(f'error: {e}\n')
		return EXIT_ERROR
