import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rankbarriers.errors import CharacteristicError, ShapeError, SymmetryError
from rankbarriers.exact import Fp, Matrix, mat_rank
from rankbarriers.methods import matmul_tensor
from rankbarriers.spaces import (HomogPoly, LinearForm, Tensor, comon_embed, comon_project,
                                 expand_waring, flatten, glynn_decompose, glynn_of_product,
                                 group, monomials, permute_factors, power_of_linear,
                                 simple_tensor, waring_from_comon_decomposition)

ints = st.integers(-4, 4)


def vectors(dims):
    return st.tuples(*[st.lists(ints, min_size=n, max_size=n) for n in dims])


def random_tensor(rng, dims):
    return Tensor(dims, tuple(Fraction(rng.randint(-5, 5)) for _ in range(
        __import__("math").prod(dims))))


def proper_subsets(d):
    for size in range(1, d):
        yield from itertools.combinations(range(d), size)


# --- simple tensors, flatten, group --------------------------------------------

def test_simple_tensor_examples():
    e0, e1 = [1, 0], [0, 1]
    t = simple_tensor([e0, e1])
    assert flatten(t, [0]) == Matrix.from_rows([[0, 1], [0, 0]])
    assert simple_tensor([[3, 4]]).entries == (3, 4)
    assert set(simple_tensor([[1, 1]] * 3).entries) == {1}
    with pytest.raises(ShapeError):
        simple_tensor([])


def test_flatten_rank_examples():
    assert mat_rank(flatten(simple_tensor([[1, 2], [3, -1], [2, 2]]), [0])) == 1
    assert mat_rank(flatten(matmul_tensor(2, 2, 2), [0])) == 4
    rng = random.Random(3)
    hits = sum(mat_rank(flatten(random_tensor(rng, (3,) * 4), [0, 1])) == 9 for _ in range(5))
    assert hits >= 4


def test_flatten_rejects_degenerate_split():
    t = simple_tensor([[1, 0]] * 3)
    for left in ([], [0, 1, 2]):
        with pytest.raises(ShapeError):
            flatten(t, left)


def test_group_shape_and_validation():
    t = simple_tensor([[1, 2]] * 4)
    assert group(t, [[0, 1], [2], [3]]).dims == (4, 2, 2)
    for bad in ([[0, 1], [1, 2, 3]], [[0], [1]], [[0, 1, 2, 3], []]):
        with pytest.raises(ShapeError):
            group(t, bad)


@given(vectors((2, 3, 2)))
def test_flatten_of_simple_has_rank_at_most_one(vs):
    t = simple_tensor(list(vs))
    for left in proper_subsets(3):
        assert mat_rank(flatten(t, left)) <= 1


@given(vectors((2, 2, 3, 2)))
def test_group_of_simple_is_simple(vs):
    g = group(simple_tensor(list(vs)), [[0, 2], [1], [3]])
    for left in proper_subsets(3):
        assert mat_rank(flatten(g, left)) <= 1


def test_group_two_blocks_matches_flatten():
    rng = random.Random(0)
    t = random_tensor(rng, (2, 3, 2))
    for left in proper_subsets(3):
        right = [i for i in range(3) if i not in left]
        g = group(t, [list(left), right])
        assert g.entries == flatten(t, left).entries


def test_flatten_entry_bijection():
    t = random_tensor(random.Random(1), (2, 3, 4))
    m = flatten(t, [1])
    for i, j, k in itertools.product(range(2), range(3), range(4)):
        assert m[(j, i * 4 + k)] == t[(i, j, k)]


@given(st.data())
def test_flatten_group_linearity(data):
    dims = (2, 2, 3)
    n = 12
    a = Tensor(dims, tuple(Fraction(x) for x in data.draw(st.lists(ints, min_size=n, max_size=n))))
    b = Tensor(dims, tuple(Fraction(x) for x in data.draw(st.lists(ints, min_size=n, max_size=n))))
    c = Fraction(data.draw(ints))
    lhs = flatten(a + b.scale(c), [0, 2])
    fa, fb = flatten(a, [0, 2]), flatten(b, [0, 2])
    assert lhs.entries == tuple(x + c * y for x, y in zip(fa.entries, fb.entries))
    ga, gb = group(a, [[2], [0, 1]]), group(b, [[2], [0, 1]])
    assert group(a + b, [[2], [0, 1]]) == ga + gb


def test_permute_factors():
    t = simple_tensor([[1, 2], [3, 4, 5]])
    p = permute_factors(t, [1, 0])
    assert p.dims == (3, 2) and p[(2, 1)] == t[(1, 2)]


def test_tensor_json_round_trip():
    t = random_tensor(random.Random(2), (2, 2))
    assert Tensor.from_json(t.to_json()) == t


# --- forms ---------------------------------------------------------------------

def test_monomial_order_is_graded_lex():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomials(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_power_of_linear_examples():
    assert power_of_linear([1, 0], 2) == HomogPoly.monomial((2, 0))
    assert power_of_linear([1, 1], 2) == HomogPoly(2, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert power_of_linear([1, -1], 3) == HomogPoly(
        2, 3, {(3, 0): 1, (2, 1): -3, (1, 2): 3, (0, 3): -1})


def test_homog_poly_json_round_trip():
    f = HomogPoly(3, 2, {(1, 1, 0): Fraction(1, 3), (0, 0, 2): -2})
    assert HomogPoly.from_json(f.to_json()) == f
    assert HomogPoly.from_coordinates(3, 2, f.coordinates()) == f


@pytest.mark.parametrize("d", range(1, 7))
def test_glynn_expands_to_monomial(d):
    terms = glynn_decompose(d, list(range(d)), d)
    assert len(terms) == 2 ** (d - 1)
    assert expand_waring(terms, d) == HomogPoly.monomial((1,) * d)


def test_glynn_small_cases():
    (c, f), = glynn_decompose(1, [0], 1)
    assert c == 1 and f.coefficients == (1,)
    terms = glynn_decompose(2, [0, 1], 2)
    assert sorted((c, f.coefficients) for c, f in terms) == [
        (Fraction(-1, 4), (1, -1)), (Fraction(1, 4), (1, 1))]


def test_glynn_repeated_variables_and_larger_ambient():
    terms = glynn_decompose(3, [0, 0, 2], 3)
    assert expand_waring(terms, 3) == HomogPoly.monomial((2, 0, 1))


def test_glynn_over_prime_field():
    terms = glynn_decompose(3, [0, 1, 2], 3, p=5)
    f = expand_waring(terms, 3)
    for e in monomials(3, 3):
        assert f.coefficient(e) == (1 if e == (1, 1, 1) else 0)
    with pytest.raises(CharacteristicError):
        glynn_decompose(3, [0, 1, 2], 3, p=3)


@given(st.integers(1, 4), st.data())
def test_glynn_of_random_product(d, data):
    forms = [LinearForm(tuple(data.draw(st.lists(ints, min_size=2, max_size=2))))
             for _ in range(d)]
    product = power_of_linear(forms[0].coefficients, 1)
    for f in forms[1:]:
        product = product * power_of_linear(f.coefficients, 1)
    assert expand_waring(glynn_of_product(forms), d) == product


# --- symmetric embedding -----------------------------------------------------------

def test_comon_examples():
    e00 = simple_tensor([[1, 0], [1, 0]])
    assert comon_embed(HomogPoly.monomial((2, 0))) == e00
    half = Fraction(1, 2)
    assert comon_embed(HomogPoly.monomial((1, 1))).entries == (0, half, half, 0)
    assert comon_embed(HomogPoly(2, 3)).is_zero()
    assert comon_project(e00) == HomogPoly.monomial((2, 0))
    assert comon_project(Tensor((2, 2), (0, half, half, 0))) == HomogPoly.monomial((1, 1))
    with pytest.raises(SymmetryError):
        comon_project(simple_tensor([[1, 0], [0, 1]]))
    with pytest.raises(CharacteristicError):
        comon_embed(HomogPoly(2, 2, {(1, 1): Fp(1, 2)}))


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_comon_round_trip_and_symmetry(n, k, data):
    f = HomogPoly(n, k, {e: data.draw(ints) for e in monomials(n, k)})
    t = comon_embed(f)
    assert t.is_symmetric()
    assert comon_project(t) == f


@given(st.integers(1, 3), st.data())
def test_comon_of_power_is_simple(n, data):
    ell = data.draw(st.lists(ints, min_size=n, max_size=n))
    k = data.draw(st.integers(1, 3))
    assert comon_embed(power_of_linear(ell, k)) == simple_tensor([ell] * k)


@given(st.integers(1, 3), st.integers(2, 3), st.integers(1, 4), st.data())
def test_flattenings_of_embedded_sum_of_powers(n, k, r, data):
    terms = [(1, data.draw(st.lists(ints, min_size=n, max_size=n))) for _ in range(r)]
    t = comon_embed(expand_waring(terms, k))
    for left in proper_subsets(k):
        assert mat_rank(flatten(t, left)) <= r


@given(st.data())
def test_comon_linearity(data):
    f = HomogPoly(2, 3, {e: data.draw(ints) for e in monomials(2, 3)})
    g = HomogPoly(2, 3, {e: data.draw(ints) for e in monomials(2, 3)})
    c = data.draw(ints)
    assert comon_embed(f + g.scale(c)) == comon_embed(f) + comon_embed(g).scale(c)


def test_waring_from_tensor_decomposition():
    # iota(x0 x1) = 1/2 (e0 e1 + e1 e0)
    factors = [[[Fraction(1, 2), 0], [0, 1]], [[0, Fraction(1, 2)], [1, 0]]]
    terms = waring_from_comon_decomposition(factors)
    assert len(terms) == 2 * 2
    assert expand_waring(terms, 2) == HomogPoly.monomial((1, 1))
