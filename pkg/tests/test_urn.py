import itertools
import math
from fractions import Fraction

import pytest

from oracles import polya_counts
from rumor_source.exceptions import ArgumentError, DomainError
from rumor_source.urn import (
    AUTO, EXACT, FLOAT, BetaParams, PolyaSpec, chain_conditional_table, incomplete_beta, limit_split_cdf,
    log_rising, path_chain_joint, polya_joint, resolve_arithmetic, rising, split_beta_params, tree_split_joint,
    tree_split_marginal, tree_split_marginal_table, two_colour_table
)


def test_rising():
    assert rising(2, 3, 0) == 1
    assert rising(2, 3, 3) == 2 * 5 * 8
    assert log_rising(2, 3, 3) == pytest.approx(math.log(80))
    assert log_rising(4, 0, 3) == pytest.approx(3 * math.log(4))


def test_resolve_arithmetic():
    assert resolve_arithmetic(AUTO, 500) == EXACT
    assert resolve_arithmetic(AUTO, 501) == FLOAT
    assert resolve_arithmetic(FLOAT, 3) == FLOAT
    with pytest.raises(ArgumentError):
        resolve_arithmetic('decimal', 3)


def test_polya_spec_validation():
    with pytest.raises(ArgumentError):
        PolyaSpec((0, 0), 1, 2)
    with pytest.raises(ArgumentError):
        PolyaSpec((), 1, 2)
    with pytest.raises(ArgumentError):
        PolyaSpec((1, 1), -1, 2)
    assert PolyaSpec([1, 0], 0, 2).total == 1


@pytest.mark.parametrize('initial,increment', [
    ((1, 1), 0),
    ((1, 2), 1),
    ((1, 1, 1), 1),
    ((1, 3), 2),
    ((2, 1, 0), 1),
    ((1, 1, 1), 2),
])
def test_polya_joint_matches_draw_enumeration(initial, increment):
    for draws in range(0, 7 if len(initial) < 3 else 6):
        spec = PolyaSpec(initial, increment, draws)
        law = polya_counts(initial, increment, draws)
        for counts in itertools.product(range(draws + 1), repeat=len(initial)):
            if sum(counts) != draws:
                continue
            exact = polya_joint(spec, counts, EXACT)
            assert exact == law.get(counts, 0)
            assert polya_joint(spec, counts, FLOAT) == pytest.approx(float(exact), abs=1e-12)


def test_polya_joint_rejects_bad_counts():
    spec = PolyaSpec((1, 1), 1, 3)
    with pytest.raises(ArgumentError):
        polya_joint(spec, (1, 1))
    with pytest.raises(ArgumentError):
        polya_joint(spec, (1, 1, 1))


def test_two_colour_table_sums_to_one():
    table = two_colour_table(1, 4, 3, 40, EXACT)
    assert sum(table) == 1
    approx = two_colour_table(1, 4, 3, 40, FLOAT)
    assert approx == pytest.approx([float(p) for p in table], abs=1e-10)


def test_tree_split_values():
    assert tree_split_marginal(4, 2, 3) == Fraction(1, 8)
    assert tree_split_joint(3, (1, 1, 0), 3) == Fraction(1, 6)
    assert tree_split_marginal_table(2, 4) == [Fraction(1, 8), Fraction(3, 8), Fraction(3, 8), Fraction(1, 8)]
    assert tree_split_marginal_table(3, 3) == [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]


def test_tree_split_domain():
    with pytest.raises(DomainError):
        tree_split_marginal(1, 0, 3)
    with pytest.raises(ArgumentError):
        tree_split_marginal(3, 3, 3)
    with pytest.raises(ArgumentError):
        tree_split_joint(3, (1, 1), 3)


def test_marginal_is_sum_of_joint():
    delta, n = 4, 6
    joint = {}
    for counts in itertools.product(range(n), repeat=delta):
        if sum(counts) == n - 1:
            joint[counts] = tree_split_joint(delta, counts, n)
    assert sum(joint.values()) == 1
    for x1 in range(n):
        expected = sum(p for counts, p in joint.items() if counts[0] == x1)
        assert tree_split_marginal(delta, x1, n) == expected


def test_float_agrees_with_exact_at_scale():
    exact = tree_split_marginal_table(5, 300, EXACT)
    approx = tree_split_marginal_table(5, 300, FLOAT)
    assert approx == pytest.approx([float(p) for p in exact], abs=1e-10)


def test_chain_conditional_table():
    assert chain_conditional_table(3, 3) == [Fraction(1, 3)] * 3
    assert chain_conditional_table(2, 4) == [0, 0, 0, 1]
    assert chain_conditional_table(5, 1) == [1]
    with pytest.raises(ArgumentError):
        chain_conditional_table(3, 0)


def test_path_chain_joint():
    delta, n = 3, 5
    first = tree_split_marginal_table(delta, n)
    total = sum(path_chain_joint(delta, n, (z1, z2)) for z1 in range(1, n) for z2 in range(z1))
    assert total == 1 - first[0]
    assert path_chain_joint(delta, n, (2,)) == first[2]
    with pytest.raises(ArgumentError):
        path_chain_joint(delta, n, (2, 2))
    with pytest.raises(ArgumentError):
        path_chain_joint(delta, n, (5,))


def test_incomplete_beta():
    assert limit_split_cdf(3, 0.5) == pytest.approx(0.75, abs=1e-14)
    assert limit_split_cdf(4, 0.5) == pytest.approx(0.5 + 1 / math.pi, abs=1e-12)
    assert limit_split_cdf(3, 1.0) == pytest.approx(1.0)
    with pytest.raises(ArgumentError):
        incomplete_beta(1.5, split_beta_params(3))


def test_split_beta_params():
    params = split_beta_params(4)
    assert (params.alpha, params.beta) == (0.5, 1.5)
    with pytest.raises(DomainError):
        split_beta_params(2)


def test_degree_three_path_chain_has_closed_form():
    for n in (3, 6, 11):
        for z1 in range(1, n):
            for z2 in range(z1):
                assert path_chain_joint(3, n, (z1, z2)) == Fraction(2 * (n - z1), n * (n + 1) * z1)


def test_degree_three_split_is_uniform_over_compositions():
    for n in (2, 5, 9):
        for counts in itertools.product(range(n), repeat=3):
            if sum(counts) == n - 1:
                assert tree_split_joint(3, counts, n) == Fraction(2, n * (n + 1))


def test_split_joint_is_exchangeable():
    delta, n = 4, 7
    for counts in [(3, 2, 1, 0), (6, 0, 0, 0), (2, 2, 1, 1)]:
        values = {tree_split_joint(delta, perm, n) for perm in itertools.permutations(counts)}
        assert len(values) == 1


def test_line_split_is_binomial():
    for n in (2, 5, 8, 13):
        assert tree_split_marginal_table(2, n) == [Fraction(math.comb(n - 1, x), 2 ** (n - 1)) for x in range(n)]


@pytest.mark.parametrize('delta', [3, 4, 6])
def test_finite_split_cdf_approaches_beta_limit(delta):
    n = 10 ** 4
    table = tree_split_marginal_table(delta, n, FLOAT)
    assert math.fsum(table[:n // 2 + 1]) == pytest.approx(limit_split_cdf(delta, 0.5), abs=0.01)


def test_incomplete_beta_uniform_case():
    uniform = BetaParams(1.0, 1.0)
    for x in (0.0, 0.1, 0.37, 0.5, 0.9, 1.0):
        assert incomplete_beta(x, uniform) == pytest.approx(x, abs=1e-14)
