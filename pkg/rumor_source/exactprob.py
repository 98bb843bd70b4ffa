#!/usr/bin/env python

"""
Correct-detection probabilities of the MAP estimator on regular trees.

Finite-n values are exact (``Fraction``) or log-gamma floats depending on the
``arithmetic`` argument; limits as n grows are floats from the regularized
incomplete Beta function.
"""

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from scipy import integrate, stats

from .exceptions import ArgumentError, BudgetError, DomainError, ValidationError
from .urn import (
    AUTO, EXACT, EXACT_LIMIT, chain_conditional_table, resolve_arithmetic,
    split_beta_params, incomplete_beta, tree_split_marginal_table
)

logger = logging.getLogger(__name__)

CLOSED_FORM = 'closed-form'
LEMMA9_SUM = 'lemma9-sum'
CHAIN_ENUMERATION = 'chain-enumeration'
ASYMPTOTIC = 'asymptotic'
LOWER_BOUND = 'lower-bound'

ALL_SUSPECTS = 'all-suspects'
CONNECTED_K = 'connected-k'
TWO_AT_D = 'two-at-d'
GENERAL_K_BOUND = 'general-k-bound'

CHAIN_STATE_BUDGET = 12000000
CHAIN_MAX_D = 4
CHAIN_MAX_N = 400

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DetectionResult:
    value: object
    method: str
    scenario: str

    def __post_init__(self):
        if not -1e-12 <= self.value <= 1 + 1e-12:
            raise ValidationError('probability {value} outside [0, 1]', value=float(self.value))
        if (self.method == LOWER_BOUND) != (self.scenario == GENERAL_K_BOUND):
            raise ValidationError('lower-bound results belong to the general-k-bound scenario only')

    @property
    def exact(self):
        return isinstance(self.value, Fraction)

    def __float__(self):
        return float(self.value)

    def to_dict(self):
        return {
            'value': float(self.value),
            'exact_value': str(self.value) if self.exact else None,
            'method': self.method,
            'scenario': self.scenario,
        }


def _check_degree(delta, least=2):
    if delta < least:
        raise DomainError('degree must be >= {least}, got {delta}', least=least, delta=delta)


def _check_n(n):
    if n < 1:
        raise ArgumentError('n must be >= 1, got {n}', n=n)


def _cast(value, mode):
    return value if mode == EXACT else float(value)


def _tail(delta, n, mode):
    """
    0.5 P(X1 = n/2) + P(X1 > n/2) for one neighbor subtree.
    """
    table = tree_split_marginal_table(delta, n, mode)
    above = table[n // 2 + 1:]
    if mode == EXACT:
        tail = sum(above, Fraction(0))
        if n % 2 == 0:
            tail += table[n // 2] * HALF
        return tail
    parts = list(above)
    if n % 2 == 0:
        parts.append(table[n // 2] * 0.5)
    return math.fsum(parts)


def pc_conditional(delta, m, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    """
    P_c(n | source with m neighboring suspects) = 1 - m * tail.
    """
    _check_degree(delta)
    _check_n(n)
    if not 0 <= m <= delta:
        raise ArgumentError('m={m} outside [0, {delta}]', m=m, delta=delta)
    mode = resolve_arithmetic(arithmetic, n, exact_limit)
    return 1 - m * _tail(delta, n, mode)


def pc_conditional_bounds(delta, m, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    """
    (1 - m P(X1 >= n/2), 1 - m P(X1 > n/2)); the two agree when n is odd.
    """
    _check_degree(delta)
    _check_n(n)
    if not 0 <= m <= delta:
        raise ArgumentError('m={m} outside [0, {delta}]', m=m, delta=delta)
    mode = resolve_arithmetic(arithmetic, n, exact_limit)
    table = tree_split_marginal_table(delta, n, mode)
    start = (n + 1) // 2
    zero = Fraction(0) if mode == EXACT else 0.0
    at_least = sum(table[start:], zero)
    above = sum(table[n // 2 + 1:], zero)
    return 1 - m * at_least, 1 - m * above


def _line_all(n):
    return Fraction(math.comb(n - 1, (n - 1) // 2), 2 ** (n - 1))


def _cubic_all(n):
    return Fraction(1, 4) + Fraction(3, 4) * Fraction(1, 2 * (n // 2) + 1)


def pc_all_suspects(delta, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT, method=None):
    """
    Every infected node is a suspect.

    Degrees 2 and 3 use their closed forms unless ``method`` asks for the
    tail sum; larger degrees always sum the subtree-size tail.
    """
    _check_degree(delta)
    _check_n(n)
    mode = resolve_arithmetic(arithmetic, n, exact_limit)
    if n == 1:
        return DetectionResult(_cast(Fraction(1), mode), CLOSED_FORM, ALL_SUSPECTS)
    if method is None:
        method = CLOSED_FORM if delta <= 3 else LEMMA9_SUM
    if method == CLOSED_FORM:
        if delta == 2:
            value = _line_all(n)
        elif delta == 3:
            value = _cubic_all(n)
        else:
            raise ArgumentError('no closed form for degree {delta}', delta=delta)
        return DetectionResult(_cast(value, mode), CLOSED_FORM, ALL_SUSPECTS)
    if method != LEMMA9_SUM:
        raise ArgumentError('unknown method {method}', method=method)
    value = 1 - delta * _tail(delta, n, mode)
    return DetectionResult(value, LEMMA9_SUM, ALL_SUSPECTS)


def pc_connected(delta, k, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT, method=None):
    """
    k suspects forming a connected subtree. Averaged over the suspects, the
    k - 1 suspect edges count twice, once from each endpoint.
    """
    _check_degree(delta)
    _check_n(n)
    if k < 1:
        raise ArgumentError('k must be >= 1, got {k}', k=k)
    mode = resolve_arithmetic(arithmetic, n, exact_limit)
    if k == 1 or n == 1:
        return DetectionResult(_cast(Fraction(1), mode), CLOSED_FORM, CONNECTED_K)
    if method is None:
        method = CLOSED_FORM if delta <= 3 else LEMMA9_SUM
    if method == CLOSED_FORM:
        if delta == 2:
            value = Fraction(1, k) * (1 + (k - 1) * _line_all(n))
        elif delta == 3:
            value = Fraction(k + 1, 2 * k) + Fraction(k - 1, k) * Fraction(1, 4 * (n // 2) + 2)
        else:
            raise ArgumentError('no closed form for degree {delta}', delta=delta)
        return DetectionResult(_cast(value, mode), CLOSED_FORM, CONNECTED_K)
    if method != LEMMA9_SUM:
        raise ArgumentError('unknown method {method}', method=method)
    weight = Fraction(2 * (k - 1), k)
    tail = _tail(delta, n, mode)
    value = 1 - (weight if mode == EXACT else float(weight)) * tail
    return DetectionResult(value, LEMMA9_SUM, CONNECTED_K)


def pc_general_lower_bound(delta, k, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT):
    """
    Worst case over every placement of k suspects, reached when they are
    connected.
    """
    result = pc_connected(delta, k, n, arithmetic, exact_limit)
    return replace(result, method=LOWER_BOUND, scenario=GENERAL_K_BOUND)


def _beta_half(delta):
    return incomplete_beta(0.5, split_beta_params(delta))


def phi1(delta):
    _check_degree(delta, 3)
    return 1.0 - delta * (1.0 - _beta_half(delta))


def phi2(delta, k):
    _check_degree(delta, 3)
    if k < 1:
        raise ArgumentError('k must be >= 1, got {k}', k=k)
    return 1.0 - (2.0 * (k - 1) / k) * (1.0 - _beta_half(delta))


def phi3(delta):
    _check_degree(delta, 3)
    return _beta_half(delta)


def asymptotic_all_suspects(delta):
    _check_degree(delta)
    return 0.0 if delta == 2 else phi1(delta)


def asymptotic_connected(delta, k):
    _check_degree(delta)
    if delta == 2:
        if k < 1:
            raise ArgumentError('k must be >= 1, got {k}', k=k)
        return 1.0 / k
    return phi2(delta, k)


def two_suspect_limit(delta, d):
    """
    Limit of the two-suspect detection probability for d in {1, 2}.

    For d = 2 the error event is Z1 + Z2 > n. In the limit Z1/n follows
    Beta(a, b) and Z2/Z1 follows Beta(a, 1) with a = 1/(delta - 2), so the
    error mass is the integral of the Beta(a, b) density times
    1 - ((1 - y) / y)^a over y in (1/2, 1).
    """
    _check_degree(delta)
    if d not in (1, 2):
        raise DomainError('limits are only available for d in (1, 2), got {d}', d=d)
    if delta == 2:
        return 0.5
    if d == 1:
        return phi3(delta)
    params = split_beta_params(delta)
    a = params.alpha

    def error_density(y):
        return stats.beta.pdf(y, params.alpha, params.beta) * (1.0 - ((1.0 - y) / y) ** a)

    error, _ = integrate.quad(error_density, 0.5, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    return 1.0 - error


@dataclass(frozen=True)
class ChainBreakdown:
    """
    Probability mass of the path chains between the source and the second
    suspect: ``absent`` when the second suspect is not infected, otherwise
    split into strict wins, ties and losses for the source.
    """
    win: object
    tie: object
    loss: object
    absent: object
    states: int

    @property
    def total(self):
        return self.win + self.tie + self.loss + self.absent

    @property
    def pc(self):
        half = HALF if isinstance(self.tie, Fraction) else 0.5
        return self.win + self.absent + self.tie * half

    @property
    def pe(self):
        half = HALF if isinstance(self.tie, Fraction) else 0.5
        return self.loss + self.tie * half


class _Sum(object):
    """
    Exact running sum for fractions, Neumaier-compensated for floats.
    """
    def __init__(self, exact):
        self.exact = exact
        self.total = Fraction(0) if exact else 0.0
        self.carry = 0.0

    def add(self, x):
        if self.exact:
            self.total += x
            return
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.carry += (self.total - t) + x
        else:
            self.carry += (x - t) + self.total
        self.total = t

    def value(self):
        return self.total if self.exact else self.total + self.carry


def chain_state_bound(d, n):
    """
    Upper bound on the prefixes the enumeration visits before the last step.
    """
    return math.comb(n, d - 1)


def two_suspect_breakdown(delta, d, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT,
                          state_budget=CHAIN_STATE_BUDGET, max_d=CHAIN_MAX_D, max_n=CHAIN_MAX_N):
    _check_degree(delta)
    _check_n(n)
    if d < 1:
        raise DomainError('suspect distance must be >= 1, got {d}', d=d)
    mode = resolve_arithmetic(arithmetic, n, exact_limit)
    exact = mode == EXACT
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    if d >= n:
        return ChainBreakdown(zero, zero, zero, one, 0)

    bound = chain_state_bound(d, n)
    # one level only at d = 1, linear in n
    if d > max_d or (d > 1 and n > max_n) or bound > state_budget:
        raise BudgetError('chain enumeration for delta={delta}, d={d}, n={n} needs up to {bound} states '
                          '(budget {budget}, d <= {max_d}, n <= {max_n})',
                          delta=delta, d=d, n=n, bound=bound, budget=state_budget, max_d=max_d, max_n=max_n)
    logger.debug('enumerating two-suspect chains delta=%d d=%d n=%d (<= %d states, %s)',
                 delta, d, n, bound, mode)

    first = tree_split_marginal_table(delta, n, mode)
    tables = {}

    def conditional(z_prev):
        if z_prev not in tables:
            table = chain_conditional_table(delta, z_prev, mode)
            cumulative = [zero]
            for p in table:
                cumulative.append(cumulative[-1] + p)
            tables[z_prev] = table, cumulative
        return tables[z_prev]

    first_cumulative = [zero]
    for p in first:
        first_cumulative.append(first_cumulative[-1] + p)

    win, tie, loss, absent = _Sum(exact), _Sum(exact), _Sum(exact), _Sum(exact)
    states = [0]

    def settle(table, cumulative, weight, num, den):
        # error iff z * num > den * (n - z), i.e. z * (num + den) > den * n
        top = len(table)

        def at(i):
            return cumulative[min(max(i, 1), top)]

        absent.add(weight * table[0])
        q, r = divmod(den * n, num + den)
        if r == 0:
            win.add(weight * (at(q) - at(1)))
            if 1 <= q < top:
                tie.add(weight * table[q])
        else:
            win.add(weight * (at(q + 1) - at(1)))
        loss.add(weight * (at(top) - at(q + 1)))

    def visit(h, table, cumulative, weight, num, den):
        states[0] += 1
        if h == d:
            settle(table, cumulative, weight, num, den)
            return
        absent.add(weight * table[0])
        for z in range(1, len(table)):
            p = table[z]
            if not p:
                continue
            visit(h + 1, *conditional(z), weight * p, num * z, den * (n - z))

    visit(1, first, first_cumulative, one, 1, 1)
    return ChainBreakdown(win.value(), tie.value(), loss.value(), absent.value(), states[0])


def pc_two_suspects(delta, d, n, arithmetic=AUTO, exact_limit=EXACT_LIMIT,
                    state_budget=CHAIN_STATE_BUDGET, max_d=CHAIN_MAX_D, max_n=CHAIN_MAX_N):
    """
    Two suspects d hops apart. By symmetry the value for one suspect as the
    source is the average over both.
    """
    if d >= n >= 1:
        _check_degree(delta)
        mode = resolve_arithmetic(arithmetic, n, exact_limit)
        return DetectionResult(_cast(Fraction(1), mode), CLOSED_FORM, TWO_AT_D)
    breakdown = two_suspect_breakdown(delta, d, n, arithmetic, exact_limit, state_budget, max_d, max_n)
    return DetectionResult(breakdown.pc, CHAIN_ENUMERATION, TWO_AT_D)


def line_two_suspects_expression(n, d):
    """
    Closed-form expression for two suspects on a line, evaluated exactly
    term by term.
    """
    if not 1 <= d < n:
        raise ArgumentError('need 1 <= d < n, got d={d}, n={n}', d=d, n=n)
    if (n - d) % 2:
        lo, hi = (n - d - 1) // 2, (n + d + 1) // 2
    else:
        lo, hi = (n - d) // 2, (n + d - 2) // 2
    return HALF - Fraction(sum(math.comb(n - 1, z) for z in range(lo, hi + 1)), 2 ** n)


@dataclass(frozen=True)
class LineAudit:
    n: int
    d: int
    enumerated_pc: Fraction
    expression: Fraction
    matches_as_pc: bool
    matches_as_pe: bool
    tie_index: object
    expression_tie_index: object
    mass_balanced: bool

    def to_dict(self):
        return {
            'n': self.n,
            'd': self.d,
            'enumerated_pc': str(self.enumerated_pc),
            'expression': str(self.expression),
            'matches_as_pc': self.matches_as_pc,
            'matches_as_pe': self.matches_as_pe,
            'tie_index': self.tie_index,
            'expression_tie_index': self.expression_tie_index,
            'mass_balanced': self.mass_balanced,
        }


def audit_line_two_suspects(n, d):
    """
    Compare the chain enumeration on a line with the closed-form expression,
    read both as P_c and as P_e.

    On a line R(source) = C(n-1, z1) and R(s2) = C(n-1, z1-d), so a tie sits
    at z1 = (n+d-1)/2 when n - d is odd; the expression puts it at
    (n+d+1)/2.
    """
    breakdown = two_suspect_breakdown(2, d, n, arithmetic=EXACT, state_budget=math.inf)
    expression = line_two_suspects_expression(n, d)
    pc = breakdown.pc
    odd = (n - d) % 2 == 1
    return LineAudit(
        n=n,
        d=d,
        enumerated_pc=pc,
        expression=expression,
        matches_as_pc=pc == expression,
        matches_as_pe=pc == 1 - expression,
        tie_index=(n + d - 1) // 2 if odd else None,
        expression_tie_index=(n + d + 1) // 2 if odd else None,
        mass_balanced=breakdown.total == 1,
    )


def audit_line_table(ns, ds):
    rows = []
    for n in ns:
        for d in ds:
            if d < n:
                rows.append(audit_line_two_suspects(n, d))
    return rows
