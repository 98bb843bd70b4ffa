#!/usr/bin/env python

from flask import current_app

from . import exactprob, harness
from .estimator import make_suspects_all, make_suspects_connected, make_suspects_two, map_estimate
from .exceptions import ArgumentError, ConfigError
from .spread import BACKENDS, SpreadConfig, simulate_si, trial_stream
from .topology import Graph, SuspectSet


class SourceDetector(object):
    """
    Config-bound entry point to the library.

    Usage:

    >> from rumor_source import SourceDetector
    >> detector = SourceDetector(app)
    >> # or
    >> detector = SourceDetector()
    >> detector.init_app(app)
    >> detector.exact('all-suspects', delta=3, n=4).value
    Fraction(2, 5)
    """
    def __init__(self, app=None):
        self.exact_limit = exactprob.EXACT_LIMIT
        self.chain_limits = {}
        self.max_nodes = None
        self.default_n = harness.DEFAULT_N
        self.default_trials = harness.DEFAULT_TRIALS
        self.workers = 1
        self.backend = None
        self.flask_app = None
        if app:
            self.init_app(app)

    def init_app(self, app):
        config = app.config
        self.exact_limit = _positive(config, 'RUMOR_EXACT_LIMIT')
        self.chain_limits = {
            'state_budget': _positive(config, 'RUMOR_CHAIN_STATE_BUDGET'),
            'max_d': _positive(config, 'RUMOR_CHAIN_MAX_D'),
            'max_n': _positive(config, 'RUMOR_CHAIN_MAX_N'),
        }
        self.max_nodes = _positive(config, 'RUMOR_MAX_NODES')
        self.default_n = _positive(config, 'RUMOR_DEFAULT_N')
        self.default_trials = _positive(config, 'RUMOR_DEFAULT_TRIALS')
        self.workers = _positive(config, 'RUMOR_WORKERS')
        self.backend = config.get('RUMOR_BACKEND')
        if self.backend not in BACKENDS:
            raise ConfigError('RUMOR_BACKEND must be one of {known}, got {backend!r}',
                              known=', '.join(sorted(BACKENDS)), backend=self.backend)

        if not hasattr(app, 'extensions'):
            app.extensions = {}
        app.extensions['rumor_source'] = self
        self.flask_app = app

    def regular_tree(self, delta):
        return Graph.lazy_regular(delta, max_nodes=self.max_nodes)

    def simulate(self, delta, n, seed, backend=None):
        g = self.regular_tree(delta)
        cfg = SpreadConfig(g.origin, n, backend or self.backend, seed)
        current_app.logger.debug('simulate delta=%d n=%d seed=%d backend=%s', delta, n, seed, cfg.backend)
        return simulate_si(g, cfg, rng=trial_stream(seed))

    def suspects(self, snap, pattern, members=None, k=None, anchor=None):
        if pattern == SuspectSet.ALL:
            return make_suspects_all(snap)
        if pattern == SuspectSet.CONNECTED:
            if k is None:
                raise ArgumentError('connected suspects need k')
            return make_suspects_connected(snap.host, snap.source if anchor is None else anchor, k)
        members = sorted(members or ())
        if pattern == SuspectSet.TWO:
            if len(members) != 2:
                raise ArgumentError('two suspects expected, got {count}', count=len(members))
            return make_suspects_two(snap.host, *members)
        return SuspectSet(members, SuspectSet.GENERAL)

    def estimate(self, snap, suspects, tie_seed=0):
        estimate = map_estimate(snap, suspects, tie_seed=tie_seed)
        current_app.logger.debug('estimate %s over %s', estimate.chosen, suspects.label())
        return estimate

    def exact(self, scenario, delta, n, k=None, d=None, arithmetic=exactprob.AUTO):
        if scenario == exactprob.ALL_SUSPECTS:
            return exactprob.pc_all_suspects(delta, n, arithmetic, self.exact_limit)
        if scenario == exactprob.CONNECTED_K:
            return exactprob.pc_connected(delta, _need(k, 'k'), n, arithmetic, self.exact_limit)
        if scenario == exactprob.GENERAL_K_BOUND:
            return exactprob.pc_general_lower_bound(delta, _need(k, 'k'), n, arithmetic, self.exact_limit)
        if scenario == exactprob.TWO_AT_D:
            return exactprob.pc_two_suspects(delta, _need(d, 'd'), n, arithmetic, self.exact_limit,
                                             **self.chain_limits)
        raise ArgumentError('unknown scenario {scenario}', scenario=scenario)

    def breakdown(self, delta, d, n, arithmetic=exactprob.AUTO):
        return exactprob.two_suspect_breakdown(delta, d, n, arithmetic, self.exact_limit, **self.chain_limits)

    def experiment_config(self, scenario, delta, seed, n=None, k=None, d=None, trials=None, backend=None):
        return harness.ExperimentConfig(
            scenario=scenario,
            delta=delta,
            n=n or self.default_n,
            k=k,
            d=d,
            trials=trials or self.default_trials,
            seed=seed,
            backend=backend or self.backend,
        )

    def experiment(self, cfg):
        current_app.logger.info('running %d trials of %s', cfg.trials, cfg.scenario)
        return harness.run_experiment(cfg, workers=self.workers, max_nodes=self.max_nodes, **self.chain_limits)

    def figure(self, figure, overrides=None):
        current_app.logger.info('sweeping %s', figure)
        overrides = dict({'backend': self.backend}, **(overrides or {}))
        return harness.figure_sweep(figure, overrides, n=self.default_n, trials=self.default_trials,
                                    workers=self.workers, max_nodes=self.max_nodes, **self.chain_limits)


def _positive(config, key):
    value = config.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ConfigError('{key} must be a positive integer, got {value!r}', key=key, value=value)
    return value


def _need(value, name):
    if value is None:
        raise ArgumentError('this scenario needs --{name}', name=name)
    return value
