#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
from typing import Optional

from .errors import *
from ..admm import AdmmParams
from ..network import loadCase
from ..ratings import RatingScheme

OUTPUT_FIELDS = ['out', 'trace', 'csv']

@dataclasses.dataclass
class RunConfig():
	'''
	Options of a command line run. The defaults of the decomposition come from `AdmmParams`.

	Parameters
	----------
	case : str
		Path to the case file.

	weather : str
		Path to a CSV weather sidecar, replacing the embedded weather.

	scheme : str
		Rating scheme name.

	season : str
		Season of the static rating.

	method : str
		`admm` or `monolithic`.

	horizon : int
		Number of leading periods to keep.

	dt : float
		Period length override, in s.

	theta0, gamma, omega, eps : float
		Decomposition parameters.

	inner_cap, outer_cap, workers : int
		Iteration caps and number of threads.

	out, trace, csv : str
		Output paths.

	seed : int
		Seed, recorded in the configuration hash.
	'''

	case: str
	weather: Optional[str] = None
	scheme: str = 'dlr-ss'
	season: str = 'summer'
	method: str = 'admm'
	horizon: Optional[int] = None
	dt: Optional[float] = None
	theta0: float = AdmmParams.theta0
	gamma: float = AdmmParams.gamma
	omega: float = AdmmParams.omega
	eps: float = AdmmParams.eps
	inner_cap: int = AdmmParams.inner_cap
	outer_cap: int = AdmmParams.outer_cap
	workers: int = AdmmParams.workers
	out: Optional[str] = None
	trace: Optional[str] = None
	csv: Optional[str] = None
	seed: int = 0

	def __post_init__(self):
		if self.workers < 1:
			raise ConfigError('workers', f'{self.workers} is lower than 1')

		if not(self.method in ['admm', 'monolithic']):
			raise ConfigError('method', f'unknown method {self.method}')

		if self.horizon is not None and self.horizon < 1:
			raise ConfigError('horizon', f'{self.horizon} is lower than 1')

	@classmethod
	def fromArgs(cls, args):
		'''
		Configuration from parsed arguments, ignoring the ones that are not options of a run.

		Parameters
		----------
		args : argparse.Namespace
			The arguments.

		Returns
		-------
		config : RunConfig
			The configuration.
		'''

		values = vars(args)
		fields = {field.name for field in dataclasses.fields(cls)}
		return cls(**{name: value for name, value in values.items() if name in fields and value is not None})

	def replace(self, **changes):
		return dataclasses.replace(self, **changes)

	def canonical(self):
		'''
		Options that determine the result of a run, for the configuration hash.
		'''

		return {name: value for name, value in dataclasses.asdict(self).items() if not(name in OUTPUT_FIELDS)}

	def ratingScheme(self, scheme = None):
		return RatingScheme.fromName(scheme or self.scheme, self.season)

	def admmParams(self):
		'''
		Decomposition parameters of the run.
		'''

		return AdmmParams(
			theta0 = self.theta0,
			gamma = self.gamma,
			omega = self.omega,
			eps = self.eps,
			inner_cap = self.inner_cap,
			outer_cap = self.outer_cap,
			workers = self.workers
		)

	def loadCase(self):
		'''
		Load the case and apply the horizon and period overrides.

		Returns
		-------
		case : NetworkCase
			The case.
		'''

		case = loadCase(self.case, weather = self.weather)

		if self.horizon is not None and self.horizon > case.horizon:
			raise ConfigError('horizon', f'{self.horizon} exceeds the {case.horizon} periods of the case')

		if self.horizon is not None or self.dt is not None:
			case = case.restrict(horizon = self.horizon, dt = self.dt)

		return case
