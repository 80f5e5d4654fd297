from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rankbarriers.errors import BadSeedError, DomainError, NonEtaleError, ShapeError
from rankbarriers.series import (AlgebraicFunctionSpec, MultiSeries, Poly, PolyMap, UniSeries,
                                 find_regular_center, hensel_lift, hensel_lift_linear,
                                 newton_system_lift, rational_roots, series_compose,
                                 verify_rank_transfer, verify_transfer)

F = Fraction
z2, y2 = Poly.var(0, 2), Poly.var(1, 2)
SQRT = y2 * y2 - z2


def binomial_half(T):
    """Coefficients of (1 + t)^(1/2), from the generalized binomial theorem."""
    out, c = [], F(1)
    for k in range(T + 1):
        out.append(c)
        c = c * (F(1, 2) - k) / (k + 1)
    return out


def identity_map(n=1):
    return PolyMap(n, [Poly.var(i, n) for i in range(n)])


def square_map():
    return PolyMap(1, [Poly.var(0, 1) ** 2])


# --- univariate arithmetic -----------------------------------------------------------

def test_unary_examples():
    t = UniSeries(0, 2, [0, 1])
    assert ((1 + t) * (1 - t)).coeffs == (1, 0, -1)
    a = UniSeries(0, 4, [1, 2, 3])
    assert (a + (-a)).is_zero()
    s = UniSeries(0, 3, [0, 1])
    assert series_compose(s * s, s + s * s).coeffs == (0, 0, 1, 2)


def test_center_mismatch():
    with pytest.raises(DomainError):
        UniSeries(0, 2, [1]) + UniSeries(1, 2, [1])
    with pytest.raises(DomainError):
        series_compose(UniSeries(0, 2, [0, 1]), UniSeries(0, 2, [1, 1]))
    with pytest.raises(DomainError):
        MultiSeries(1, [0], 2) * MultiSeries(1, [1], 2)


coeff_lists = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5),
                       min_size=1, max_size=6)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_uni_ring_laws(a, b, c):
    A, B, C = (UniSeries(0, 5, x) for x in (a, b, c))
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)


@given(coeff_lists)
def test_uni_inverse(a):
    if a[0] == 0:
        a[0] = F(1)
    A = UniSeries(2, 5, a)
    assert (A * A.inverse()).coeffs == (1, 0, 0, 0, 0, 0)


def test_uni_json_round_trip():
    s = UniSeries(F(1, 3), 3, [1, F(-1, 2)])
    assert UniSeries.from_json(s.to_json()) == s


# --- multivariate arithmetic --------------------------------------------------------------

def test_multi_truncation_and_mul():
    x = MultiSeries.variable(0, 2, order=2)
    y = MultiSeries.variable(1, 2, order=2)
    p = (1 + x + y) ** 3
    assert all(sum(e) <= 2 for e in p.coeffs)
    assert p.coefficient((1, 1)) == 6 and p.coefficient((2, 0)) == 3
    assert MultiSeries.from_json(p.to_json()) == p


def test_multi_compose():
    x = MultiSeries.variable(0, 1, order=3)
    outer = MultiSeries(2, [0, 1], 3, {(1, 0): 1, (0, 1): 1, (1, 1): 1})  # a + b' + a b'
    inner = [x, 1 + x * x]
    out = series_compose(outer, inner)
    # a = x, b' = (1 + x^2) - 1 = x^2: x + x^2 + x^3
    assert out.coeffs == {(1,): 1, (2,): 1, (3,): 1}


# --- lifting --------------------------------------------------------------------------

def test_sqrt_lift_values():
    p = hensel_lift(AlgebraicFunctionSpec(SQRT, 1, 1), 3)
    assert p.coeffs == (1, F(1, 2), F(-1, 8), F(1, 16))
    assert hensel_lift(AlgebraicFunctionSpec(SQRT, 1, 1), 20).coeffs == tuple(binomial_half(20))


def test_other_lift_examples():
    assert hensel_lift(AlgebraicFunctionSpec(y2 - z2, 5, 5), 3).coeffs == (5, 1, 0, 0)
    assert hensel_lift(AlgebraicFunctionSpec(y2 ** 3 - z2, 1, 1), 2).coeffs == (
        1, F(1, 3), F(-1, 9))


def test_lift_errors():
    with pytest.raises(BadSeedError):
        hensel_lift(AlgebraicFunctionSpec(SQRT, 1, 2), 4)
    with pytest.raises(NonEtaleError):
        hensel_lift(AlgebraicFunctionSpec(SQRT, 0, 0), 4)


def substitution_holds(spec, p, T):
    z = UniSeries.variable(spec.center, T)
    return spec.P((z, p)).is_zero() and p.coeffs[0] == spec.seed


SPECS = [
    AlgebraicFunctionSpec(SQRT, 1, 1),
    AlgebraicFunctionSpec(SQRT, 4, -2),
    AlgebraicFunctionSpec(y2 ** 3 - z2, 8, 2),
    AlgebraicFunctionSpec(y2 ** 2 + z2 * y2 - 2, 1, 1),
    AlgebraicFunctionSpec(y2 ** 3 + y2 - z2, 0, 0),
]


@pytest.mark.parametrize("spec", SPECS, ids=range(len(SPECS)))
@pytest.mark.parametrize("T", [0, 1, 5, 16, 32])
def test_lift_substitution_oracle(spec, T):
    assert substitution_holds(spec, hensel_lift(spec, T), T)


@pytest.mark.parametrize("spec", SPECS, ids=range(len(SPECS)))
def test_newton_doubling_matches_linear_recursion(spec):
    assert hensel_lift(spec, 24) == hensel_lift_linear(spec, 24)


def test_newton_system_examples():
    z, a, b = Poly.var(0, 3), Poly.var(1, 3), Poly.var(2, 3)
    y1, y2_ = newton_system_lift([a * a - (1 + z), b - a], 1, [0], [1, 1], 8)
    expected = {(k,): c for k, c in enumerate(binomial_half(8))}
    assert y1.coeffs == expected == y2_.coeffs
    with pytest.raises(BadSeedError):
        newton_system_lift([a * a - (1 + z), b - a], 1, [0], [1, 2], 4)
    with pytest.raises(NonEtaleError):
        newton_system_lift([a * a - z, b - a], 1, [0], [0, 0], 4)


def test_newton_system_single_equation_is_hensel():
    (y,) = newton_system_lift([SQRT], 1, [1], [1], 12)
    assert y.to_json()["terms"] == hensel_lift(AlgebraicFunctionSpec(SQRT, 1, 1), 12
                                               ).to_multi().to_json()["terms"]


def test_newton_system_two_variables():
    z1, z2_, y = Poly.var(0, 3), Poly.var(1, 3), Poly.var(2, 3)
    (s,) = newton_system_lift([y * y - (1 + z1 + z2_)], 2, [0, 0], [1], 5)
    x1 = MultiSeries.variable(0, 2, order=5)
    x2 = MultiSeries.variable(1, 2, order=5)
    assert (s * s - (1 + x1 + x2)).is_zero()


# --- transfer ------------------------------------------------------------------------------

def test_transfer_examples():
    p = hensel_lift(AlgebraicFunctionSpec(SQRT, 1, 1), 8)
    assert verify_transfer(identity_map(), square_map(), [1], [p], 8)
    z = Poly.var(0, 1)
    assert verify_transfer(PolyMap(1, [z * z]), identity_map(), [0],
                           [UniSeries(0, 4, [0, 0, 1])], 4)
    for poly in ([0, 1], [1, F(1, 2)], [0, 0, 1], [1, 1, 1]):
        assert not verify_transfer(identity_map(), square_map(), [0], [UniSeries(0, 2, poly)], 2)


def test_transfer_shape_errors():
    with pytest.raises(ShapeError):
        verify_transfer(identity_map(), square_map(), [1], [], 2)
    with pytest.raises(ShapeError):
        verify_transfer(identity_map(2), square_map(), [1, 1], [UniSeries(0, 2, [1])], 2)


def test_transfer_monotone_in_order():
    p = hensel_lift(AlgebraicFunctionSpec(SQRT, 1, 1), 10)
    for T in range(11):
        assert verify_transfer(identity_map(), square_map(), [1], [p], T)
    wrong = UniSeries(1, 10, list(p.coeffs[:6]) + [0] * 5)
    verdicts = [verify_transfer(identity_map(), square_map(), [1], [wrong], T) for T in range(11)]
    first_false = verdicts.index(False)
    assert all(verdicts[:first_false]) and not any(verdicts[first_false:])


def test_rank_transfer_examples():
    # L(z1,z2,z3,z4) = (z1,z2) x (z3,z4): rank one with linear factor series
    n = 4
    z = [Poly.var(i, n) for i in range(n)]
    L = PolyMap(n, [z[0] * z[2], z[0] * z[3], z[1] * z[2], z[1] * z[3]])
    var = [MultiSeries.variable(i, n, order=3) for i in range(n)]
    assert verify_rank_transfer(L, 1, [0] * n, [[[var[0], var[1]], [var[2], var[3]]]], 3, (2, 2))
    zero = PolyMap(1, [Poly(1)] * 4)
    assert verify_rank_transfer(zero, 0, [0], [], 3, (2, 2))
    # diag(z, 1) = z e0 e0 + e1 e1
    w = Poly.var(0, 1)
    D = PolyMap(1, [w, Poly(1), Poly(1), Poly.const(1, 1)])
    t = MultiSeries.variable(0, 1, order=3)
    one, nil = MultiSeries.constant(1, 1, order=3), MultiSeries(1, [0], 3)
    factors = [[[t, nil], [one, nil]], [[nil, one], [nil, one]]]
    assert verify_rank_transfer(D, 2, [0], factors, 3, (2, 2))
    assert not verify_rank_transfer(D, 1, [0], factors[:1], 3, (2, 2))


def test_rank_transfer_shape_errors():
    zero = PolyMap(1, [Poly(1)] * 4)
    with pytest.raises(ShapeError):
        verify_rank_transfer(zero, 0, [0], [], 3, (2, 3))
    with pytest.raises(ShapeError):
        verify_rank_transfer(zero, 2, [0], [], 3, (2, 2))


# --- center search -------------------------------------------------------------------------

def test_center_search_for_sqrt():
    spec = find_regular_center(SQRT)
    assert (spec.center, spec.seed) == (1, 1)
    with pytest.raises(NonEtaleError):
        AlgebraicFunctionSpec(SQRT, 0, 0).check()


def test_rational_roots():
    assert rational_roots([-1, 0, 1]) == [1, -1]
    assert rational_roots([0, -F(1, 4), 0, 1]) == [0, F(1, 2), F(-1, 2)]
    assert rational_roots([1, 0, 1]) == []


def test_poly_json_and_calculus():
    p = Poly(2, {(2, 1): F(1, 2), (0, 3): -1})
    assert Poly.from_json(p.to_json()) == p
    assert p.derivative(1) == Poly(2, {(2, 0): F(1, 2), (0, 2): -3})
    assert p((2, 1)) == 1
    m = PolyMap(2, [p, Poly.var(0, 2)])
    assert PolyMap.from_json(m.to_json()) == m
