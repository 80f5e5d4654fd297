import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rankbarriers.elusive import (MonomialSet, cover_patterns, dspan_member, is_linearly_elusive,
                                  monomial_cover_feasible)
from rankbarriers.errors import DomainError, SearchSizeError
from rankbarriers.series import Poly


def monomial(k):
    return [0] * k + [1]


def test_linear_elusiveness_examples():
    assert is_linearly_elusive([monomial(1), monomial(2), monomial(3)])
    assert not is_linearly_elusive([monomial(1), [0, 2], monomial(2)])
    assert is_linearly_elusive([monomial(1), monomial(3), monomial(9)])
    assert not is_linearly_elusive([[5]])
    z = Poly.var(0, 1)
    assert is_linearly_elusive([z, z * z + 1])


@pytest.mark.parametrize("m", range(1, 13))
def test_moment_curve(m):
    assert is_linearly_elusive([monomial(k) for k in range(1, m + 1)])


def test_linear_elusiveness_invariant_under_recombination():
    rng = random.Random(3)
    for _ in range(20):
        m = rng.randint(1, 4)
        polys = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(m)]
        base = is_linearly_elusive(polys)
        # invertible upper-triangular recombination plus constants
        mixed = []
        for i in range(m):
            row = [Fraction(0)] * 5
            for j in range(i, m):
                c = 1 if j == i else rng.randint(-2, 2)
                row = [a + c * b for a, b in zip(row, polys[j])]
            row[0] += rng.randint(-3, 3)
            mixed.append(row)
        assert is_linearly_elusive(mixed) == base


def test_dspan_examples():
    assert dspan_member(3, [1, 2], 2)
    assert not dspan_member(3, [9], 2)
    assert dspan_member(Fraction(5, 2), MonomialSet((1, Fraction(3, 2))), 2)
    assert dspan_member(0, [7], 0)
    assert not dspan_member(4, [1], 3)
    with pytest.raises(DomainError):
        MonomialSet((-1,))


def test_cover_examples():
    a = monomial_cover_feasible([1, 2], 1)
    assert a.exponents == (1,) and a.is_valid([1, 2])
    b = monomial_cover_feasible([1, 2, 3, 4], 2)
    assert b is not None and b.is_valid([1, 2, 3, 4])
    assert monomial_cover_feasible([1, 3, 9, 27], 2) is None


def test_cover_patterns_order():
    assert [str(p) for p in cover_patterns(2)] == [
        "single(0)", "single(1)", "pair(0,0)", "pair(0,1)", "pair(1,1)"]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_geometric_targets_infeasible(m):
    assert monomial_cover_feasible([3 ** i for i in range(m + 1)], m - 1) is None


@pytest.mark.parametrize("m", range(1, 11))
def test_sorted_exponent_ceiling(m):
    # sorted e_i <= 3^(i-1) caps every reachable value at 2 * 3^(m-1) < 3^m
    assert 2 * 3 ** (m - 1) < 3 ** m


def test_small_geometric_with_r2_decided_by_solver():
    result = monomial_cover_feasible([1, 3, 9], 2)
    if result is not None:
        assert result.is_valid([1, 3, 9])
    # brute check over a grid of candidate exponents agrees with the solver
    cands = sorted({Fraction(a, 2) for a in range(0, 19)})
    grid_found = any(all(t in {e1, e2, 2 * e1, 2 * e2, e1 + e2} for t in (1, 3, 9))
                     for e1 in cands for e2 in cands)
    assert grid_found == (result is not None)


targets = st.lists(st.integers(1, 12), min_size=1, max_size=4)


@given(targets, st.integers(1, 2))
def test_cover_solutions_are_valid(ts, r):
    a = monomial_cover_feasible(ts, r)
    if a is not None:
        assert a.is_valid(ts)
        assert all(e >= 0 for e in a.exponents)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=2), st.data())
def test_cover_finds_planted_solutions(es, data):
    r = len(es)
    W = sorted({e for e in es if e} | {a + b for a in es for b in es if a + b})
    if not W:
        return
    ts = data.draw(st.lists(st.sampled_from(W), min_size=1, max_size=4))
    assert monomial_cover_feasible(ts, r) is not None


def test_cover_errors():
    with pytest.raises(DomainError):
        monomial_cover_feasible([0, 1], 1)
    with pytest.raises(DomainError):
        monomial_cover_feasible([1], 0)
    with pytest.raises(SearchSizeError):
        monomial_cover_feasible([1] * 7, 3)
