#!/usr/bin/env python

"""
Pólya urn laws behind subtree infection counts on regular trees.

Every probability comes in two arithmetics: ``exact`` returns
``fractions.Fraction`` values, ``float`` works in log-gamma space so that
rising products past n ~ 170 do not overflow. ``auto`` picks exact up to
``exact_limit`` draws.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import betainc, gammaln

from .exceptions import ArgumentError, DomainError

logger = logging.getLogger(__name__)

EXACT = 'exact'
FLOAT = 'float'
AUTO = 'auto'
ARITHMETICS = (EXACT, FLOAT, AUTO)

EXACT_LIMIT = 500


def resolve_arithmetic(arithmetic, size, exact_limit=EXACT_LIMIT):
    if arithmetic == AUTO:
        return EXACT if size <= exact_limit else FLOAT
    if arithmetic not in (EXACT, FLOAT):
        raise ArgumentError('unknown arithmetic {arithmetic}', arithmetic=arithmetic)
    return arithmetic


@dataclass(frozen=True)
class PolyaSpec:
    """
    ``initial[j]`` balls of colour j; a drawn ball goes back with
    ``increment`` more of its colour; ``draws`` draws in total.
    """
    initial: tuple
    increment: int
    draws: int

    def __post_init__(self):
        object.__setattr__(self, 'initial', tuple(self.initial))
        if not self.initial:
            raise ArgumentError('an urn needs at least one colour')
        if any(b < 0 for b in self.initial) or sum(self.initial) < 1:
            raise ArgumentError('initial ball counts {initial} must be >= 0 with a positive total',
                                initial=list(self.initial))
        if self.increment < 0 or self.draws < 0:
            raise ArgumentError('increment and draws must be >= 0')

    @property
    def total(self):
        return sum(self.initial)


@dataclass(frozen=True)
class BetaParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ArgumentError('Beta parameters must be positive, got ({alpha}, {beta})',
                                alpha=self.alpha, beta=self.beta)


def rising(b, eps, x):
    """
    b (b + eps) ... (b + (x - 1) eps)
    """
    result = 1
    for i in range(x):
        result *= b + i * eps
    return result


def log_rising(b, eps, x):
    return float(_log_rising_array(b, eps, np.asarray([x]))[0])


def _log_rising_array(b, eps, xs):
    xs = np.asarray(xs, dtype=float)
    if b == 0:
        return np.where(xs == 0, 0.0, -np.inf)
    if eps == 0:
        return xs * math.log(b)
    return xs * math.log(eps) + gammaln(b / eps + xs) - gammaln(b / eps)


def polya_joint(spec, counts, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    counts = tuple(counts)
    if len(counts) != len(spec.initial):
        raise ArgumentError('{got} counts for {colours} colours', got=len(counts), colours=len(spec.initial))
    if any(x < 0 for x in counts) or sum(counts) != spec.draws:
        raise ArgumentError('counts {counts} must be non-negative and sum to {draws}',
                            counts=list(counts), draws=spec.draws)
    eps = spec.increment
    if resolve_arithmetic(arithmetic, spec.draws, exact_limit) == EXACT:
        ways = math.factorial(spec.draws)
        for x in counts:
            ways //= math.factorial(x)
        num = ways * math.prod(rising(b, eps, x) for b, x in zip(spec.initial, counts))
        return Fraction(num, rising(spec.total, eps, spec.draws))

    log_ways = gammaln(spec.draws + 1) - sum(gammaln(x + 1) for x in counts)
    log_num = sum(log_rising(b, eps, x) for b, x in zip(spec.initial, counts))
    return math.exp(log_ways + log_num - log_rising(spec.total, eps, spec.draws))


def two_colour_table(b1, b2, eps, draws, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    """
    P(X1 = x) for x = 0..draws in a two-colour urn (b1, b2).
    """
    if resolve_arithmetic(arithmetic, draws, exact_limit) == EXACT:
        first = [1]
        second = [1]
        for i in range(draws):
            first.append(first[-1] * (b1 + i * eps))
            second.append(second[-1] * (b2 + i * eps))
        den = rising(b1 + b2, eps, draws)
        return [Fraction(math.comb(draws, x) * first[x] * second[draws - x], den)
                for x in range(draws + 1)]

    xs = np.arange(draws + 1)
    logs = (gammaln(draws + 1) - gammaln(xs + 1) - gammaln(draws - xs + 1)
            + _log_rising_array(b1, eps, xs) + _log_rising_array(b2, eps, draws - xs)
            - log_rising(b1 + b2, eps, draws))
    return [float(v) for v in np.exp(logs)]


def tree_split_joint(delta, counts, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    if delta < 2:
        raise DomainError('degree must be >= 2, got {delta}', delta=delta)
    if len(counts) != delta:
        raise ArgumentError('need {delta} counts, got {got}', delta=delta, got=len(counts))
    spec = PolyaSpec((1,) * delta, delta - 2, n - 1)
    return polya_joint(spec, counts, arithmetic, exact_limit)


def tree_split_marginal(delta, x1, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    if delta < 2:
        raise DomainError('degree must be >= 2, got {delta}', delta=delta)
    if not 0 <= x1 <= n - 1:
        raise ArgumentError('x1={x1} outside [0, {top}]', x1=x1, top=n - 1)
    spec = PolyaSpec((1, delta - 1), delta - 2, n - 1)
    return polya_joint(spec, (x1, n - 1 - x1), arithmetic, exact_limit)


def tree_split_marginal_table(delta, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    if delta < 2:
        raise DomainError('degree must be >= 2, got {delta}', delta=delta)
    return two_colour_table(1, delta - 1, delta - 2, n - 1, arithmetic, exact_limit)


def chain_conditional_table(delta, z_prev, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    """
    P(Z_h = z | Z_{h-1} = z_prev) for z = 0..z_prev-1.
    """
    if z_prev < 1:
        raise ArgumentError('a conditional step needs z_prev >= 1, got {z}', z=z_prev)
    return two_colour_table(1, delta - 2, delta - 2, z_prev - 1, arithmetic, exact_limit)


def path_chain_joint(delta, n, z, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    """
    Joint law of the subtree sizes Z_1..Z_d along the path from the source:
    the first-step marginal times the Markov conditionals.
    """
    if delta < 2:
        raise DomainError('degree must be >= 2, got {delta}', delta=delta)
    z = list(z)
    if not z:
        raise ArgumentError('need at least one subtree size')
    bounds = [n] + z
    if any(x < 0 for x in z) or any(bounds[h] < bounds[h + 1] + 1 for h in range(len(z))):
        raise ArgumentError('sizes {z} must strictly descend below n={n}', z=z, n=n)
    mode = resolve_arithmetic(arithmetic, n, exact_limit)
    spec = PolyaSpec((1, delta - 1), delta - 2, n - 1)
    prob = polya_joint(spec, (z[0], n - 1 - z[0]), mode)
    for z_prev, z_next in zip(z, z[1:]):
        step = PolyaSpec((1, delta - 2), delta - 2, z_prev - 1)
        prob *= polya_joint(step, (z_next, z_prev - 1 - z_next), mode)
    return prob


def split_beta_params(delta):
    if delta < 3:
        raise DomainError('the Beta limit needs degree >= 3, got {delta}', delta=delta)
    return BetaParams(1.0 / (delta - 2), (delta - 1.0) / (delta - 2))


def incomplete_beta(x, p):
    if not 0 <= x <= 1:
        raise ArgumentError('x={x} outside [0, 1]', x=x)
    return float(betainc(p.alpha, p.beta, x))


def limit_split_cdf(delta, x):
    return incomplete_beta(x, split_beta_params(delta))
