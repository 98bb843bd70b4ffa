#!/usr/bin/env python

"""
Monte Carlo runs of the MAP estimator on infinite regular trees, with the
exact and limiting detection probabilities attached for comparison.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from scipy import stats

from . import exactprob
from .estimator import make_suspects_all, make_suspects_connected, make_suspects_two, map_estimate
from .exceptions import ArgumentError, BudgetError, ConfigError
from .exactprob import ALL_SUSPECTS, CONNECTED_K, TWO_AT_D
from .spread import BACKENDS, UNIFORM_BOUNDARY, SpreadConfig, simulate_si, trial_stream
from .topology import MAX_NODES, Graph, walk_away
from .urn import FLOAT

logger = logging.getLogger(__name__)

SCENARIOS = (ALL_SUSPECTS, CONNECTED_K, TWO_AT_D)

DEFAULT_N = 500
DEFAULT_TRIALS = 2000
CONFIDENCE = 0.95

DEGREE_SWEEP = (2, 3, 4, 5, 6, 8, 12, 20, 50)

FIGURES = {
    'fig7': {'scenario': ALL_SUSPECTS, 'sweep': 'delta', 'values': DEGREE_SWEEP},
    'fig8': {'scenario': CONNECTED_K, 'sweep': 'delta', 'values': DEGREE_SWEEP, 'k': 5},
    'fig9': {'scenario': TWO_AT_D, 'sweep': 'delta', 'values': DEGREE_SWEEP, 'ds': (1, 2, 3)},
    'fig10': {'scenario': CONNECTED_K, 'sweep': 'k', 'values': (2, 5, 10, 50, 100, 500, 1000, 4000), 'delta': 3},
}

OVERRIDABLE = ('n', 'trials', 'seed', 'backend', 'values', 'k', 'ds', 'delta')


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    delta: int
    n: int
    k: int = None
    d: int = None
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    backend: str = UNIFORM_BOUNDARY

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError('unknown scenario {scenario}', scenario=self.scenario)
        if self.delta < 2:
            raise ConfigError('delta must be >= 2, got {delta}', delta=self.delta)
        if self.n < 1 or self.trials < 1:
            raise ConfigError('n and trials must be >= 1, got n={n}, trials={trials}',
                              n=self.n, trials=self.trials)
        if self.seed < 0:
            raise ConfigError('seed must be non-negative, got {seed}', seed=self.seed)
        if self.backend not in BACKENDS:
            raise ConfigError('unknown backend {backend}', backend=self.backend)
        if self.scenario == CONNECTED_K and (self.k is None or self.k < 1):
            raise ConfigError('connected-k needs k >= 1, got {k}', k=self.k)
        if self.scenario == TWO_AT_D and (self.d is None or self.d < 1):
            raise ConfigError('two-at-d needs d >= 1, got {d}', d=self.d)


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    successes: int
    empirical_pc: float
    ci_low: float
    ci_high: float
    exact: object = None
    asymptotic_pc: float = None
    metadata: dict = field(default_factory=dict)

    def to_row(self):
        cfg = self.config
        return {
            'scenario': cfg.scenario,
            'delta': cfg.delta,
            'n': cfg.n,
            'k': cfg.k,
            'd': cfg.d,
            'trials': cfg.trials,
            'seed': cfg.seed,
            'empirical_pc': self.empirical_pc,
            'ci_low': self.ci_low,
            'ci_high': self.ci_high,
            'exact_pc': float(self.exact.value) if self.exact is not None else None,
            'exact_method': self.exact.method if self.exact is not None else None,
            'asymptotic_pc': self.asymptotic_pc,
        }

    def to_dict(self):
        doc = self.to_row()
        doc['backend'] = self.config.backend
        doc['successes'] = self.successes
        doc['exact'] = self.exact.to_dict() if self.exact is not None else None
        doc['metadata'] = dict(self.metadata)
        return doc


def wilson_interval(successes, trials, confidence=CONFIDENCE):
    ci = stats.binomtest(successes, trials).proportion_ci(confidence_level=confidence, method='wilson')
    p = successes / trials
    return max(0.0, min(float(ci.low), p)), min(1.0, max(float(ci.high), p))


def _place_suspects(cfg, g, rng):
    """
    Suspect set around the origin and a true source drawn uniformly from it;
    all-suspects gets its set only once the snapshot exists.
    """
    origin = g.origin
    if cfg.scenario == ALL_SUSPECTS:
        return None, origin
    if cfg.scenario == CONNECTED_K:
        suspects = make_suspects_connected(g, origin, cfg.k)
    else:
        suspects = make_suspects_two(g, origin, walk_away(g, origin, cfg.d))
    members = sorted(suspects.members)
    return suspects, members[int(rng.integers(len(members)))]


def run_trial(cfg, index, max_nodes=MAX_NODES):
    rng = trial_stream(cfg.seed, index)
    g = Graph.lazy_regular(cfg.delta, max_nodes=max_nodes)
    suspects, source = _place_suspects(cfg, g, rng)
    snap = simulate_si(g, SpreadConfig(source, cfg.n, cfg.backend, cfg.seed), rng=rng)
    if suspects is None:
        suspects = make_suspects_all(snap)
    estimate = map_estimate(snap, suspects, tie_seed=int(rng.integers(2 ** 63)))
    return estimate.chosen == source


def _run_chunk(args):
    cfg, start, stop, max_nodes = args
    return sum(run_trial(cfg, i, max_nodes) for i in range(start, stop))


def _count_successes(cfg, workers, max_nodes):
    if workers <= 1 or cfg.trials < 2:
        return _run_chunk((cfg, 0, cfg.trials, max_nodes))
    size = -(-cfg.trials // workers)
    chunks = [(cfg, start, min(start + size, cfg.trials), max_nodes)
              for start in range(0, cfg.trials, size)]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return sum(executor.map(_run_chunk, chunks))


def exact_reference(cfg, **limits):
    """
    Finite-n value for the scenario in float arithmetic, or None when the
    chain enumeration would go over budget.
    """
    if cfg.scenario == ALL_SUSPECTS:
        return exactprob.pc_all_suspects(cfg.delta, cfg.n, arithmetic=FLOAT)
    if cfg.scenario == CONNECTED_K:
        return exactprob.pc_connected(cfg.delta, cfg.k, cfg.n, arithmetic=FLOAT)
    try:
        return exactprob.pc_two_suspects(cfg.delta, cfg.d, cfg.n, arithmetic=FLOAT, **limits)
    except BudgetError as e:
        logger.warning('no exact reference for %s: %s', cfg.scenario, e.message)
        return None


def asymptotic_reference(cfg):
    if cfg.scenario == ALL_SUSPECTS:
        return exactprob.asymptotic_all_suspects(cfg.delta)
    if cfg.scenario == CONNECTED_K:
        return exactprob.asymptotic_connected(cfg.delta, cfg.k)
    if cfg.d in (1, 2):
        return exactprob.two_suspect_limit(cfg.delta, cfg.d)
    return None


def run_experiment(cfg, workers=1, max_nodes=MAX_NODES, metadata=None, **limits):
    logger.info('experiment %s delta=%d n=%d k=%s d=%s trials=%d seed=%d',
                cfg.scenario, cfg.delta, cfg.n, cfg.k, cfg.d, cfg.trials, cfg.seed)
    successes = int(_count_successes(cfg, workers, max_nodes))
    ci_low, ci_high = wilson_interval(successes, cfg.trials)
    report = ExperimentReport(
        config=cfg,
        successes=successes,
        empirical_pc=successes / cfg.trials,
        ci_low=ci_low,
        ci_high=ci_high,
        exact=exact_reference(cfg, **limits),
        asymptotic_pc=asymptotic_reference(cfg),
        metadata=dict(metadata or {}, confidence=CONFIDENCE, interval='wilson'),
    )
    logger.info('experiment %s delta=%d: %d/%d correct', cfg.scenario, cfg.delta, successes, cfg.trials)
    return report


@dataclass(frozen=True)
class FigureDataset:
    figure: str
    sweep: str
    reports: tuple
    metadata: dict

    def rows(self):
        return [report.to_row() for report in self.reports]

    def to_dict(self):
        return {
            'figure': self.figure,
            'sweep': self.sweep,
            'metadata': dict(self.metadata),
            'rows': [report.to_dict() for report in self.reports],
        }


def figure_configs(figure, overrides=None, n=DEFAULT_N, trials=DEFAULT_TRIALS):
    if figure not in FIGURES:
        raise ArgumentError('unknown figure {figure}, expected one of {known}',
                            figure=figure, known=', '.join(sorted(FIGURES)))
    overrides = dict(overrides or {})
    unknown = sorted(set(overrides) - set(OVERRIDABLE))
    if unknown:
        raise ArgumentError('unknown figure overrides {keys}', keys=', '.join(unknown))
    plan = dict(FIGURES[figure], n=n, trials=trials, seed=0, backend=UNIFORM_BOUNDARY)
    plan.update(overrides)

    common = {key: plan[key] for key in ('n', 'trials', 'seed', 'backend')}
    configs = []
    for value in plan['values']:
        if plan['sweep'] == 'k':
            configs.append(ExperimentConfig(plan['scenario'], plan['delta'], k=value, **common))
        elif plan['scenario'] == TWO_AT_D:
            configs.extend(ExperimentConfig(TWO_AT_D, value, d=d, **common) for d in plan['ds'])
        else:
            configs.append(ExperimentConfig(plan['scenario'], value, k=plan.get('k'), **common))
    return plan, configs


def figure_sweep(figure, overrides=None, n=DEFAULT_N, trials=DEFAULT_TRIALS, workers=1,
                 max_nodes=MAX_NODES, **limits):
    plan, configs = figure_configs(figure, overrides, n=n, trials=trials)
    metadata = {
        'figure': figure,
        'n': plan['n'],
        'trials': plan['trials'],
        'seed': plan['seed'],
        'scale': 'desk-scale defaults (n={}, trials={}); full-size sweeps use n=1000'.format(
            DEFAULT_N, DEFAULT_TRIALS),
    }
    reports = []
    for cfg in configs:
        reports.append(run_experiment(cfg, workers=workers, max_nodes=max_nodes, metadata=metadata, **limits))
        logger.info('%s point %s=%s done', figure, plan['sweep'], getattr(cfg, plan['sweep']))
    return FigureDataset(figure, plan['sweep'], tuple(reports), metadata)
