"""Tensor spaces, homogeneous polynomials and the maps between them.

Tensors are dense and row-major: the multi-index ``(i_1, ..., i_d)`` maps to
``sum_j i_j * prod(dims[j+1:])`` (last index fastest).  All indices and
factor positions are 0-based.

Homogeneous polynomials keep a sparse ``{exponent tuple: coefficient}`` map
with zero coefficients dropped.  Monomials are listed in graded lexicographic
order (``x_0^d`` first), which is also the coordinate order used when a
polynomial space is the source or target of a rank method.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Optional, Sequence

from .errors import CharacteristicError, ShapeError, SymmetryError, ValidationError
from .exact import EpsPoly, Fp, Matrix, format_rational, to_rational

__all__ = [
    "Tensor", "HomogPoly", "LinearForm", "simple_tensor", "flatten", "group",
    "permute_factors", "power_of_linear", "glynn_decompose", "glynn_of_product",
    "expand_waring", "comon_embed", "comon_project", "waring_from_comon_decomposition",
    "monomials", "multinomial",
]


def multinomial(exps: Sequence[int]) -> int:
    out = factorial(sum(exps))
    for e in exps:
        out //= factorial(e)
    return out


def _scalar_from_json(x):
    if isinstance(x, list):
        return EpsPoly.from_json(x)
    return to_rational(x)


def _scalar_to_json(x):
    if isinstance(x, EpsPoly):
        return x.to_json()
    if isinstance(x, Fp):
        return str(x.value)
    return format_rational(x)


def _char_of(values: Iterable) -> Optional[int]:
    for v in values:
        if isinstance(v, Fp):
            return v.p
    return None


# ---------------------------------------------------------------------------
# tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tensor:
    dims: tuple
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if not self.dims:
            raise ShapeError("a tensor needs at least one factor")
        if any(n < 1 for n in self.dims):
            raise ShapeError(f"local dimensions must be positive, got {self.dims}")
        if len(self.entries) != prod(self.dims):
            raise ShapeError(f"dims {self.dims} need {prod(self.dims)} entries, "
                             f"got {len(self.entries)}")

    @classmethod
    def zeros(cls, dims: Sequence[int], zero=Fraction(0)) -> "Tensor":
        return cls(tuple(dims), (zero,) * prod(dims))

    @classmethod
    def from_function(cls, dims: Sequence[int], f) -> "Tensor":
        dims = tuple(dims)
        return cls(dims, tuple(f(ix) for ix in itertools.product(*map(range, dims))))

    @classmethod
    def basis(cls, dims: Sequence[int], index: Sequence[int]) -> "Tensor":
        """The elementary tensor e_{i_1} x ... x e_{i_d}."""
        t = cls.zeros(dims)
        flat = t.flat_index(index)
        return cls(t.dims, tuple(Fraction(int(k == flat)) for k in range(len(t.entries))))

    @property
    def degree(self) -> int:
        return len(self.dims)

    def flat_index(self, index: Sequence[int]) -> int:
        if len(index) != len(self.dims):
            raise ShapeError("multi-index length differs from tensor degree")
        flat = 0
        for i, n in zip(index, self.dims):
            if not 0 <= i < n:
                raise ShapeError(f"index {tuple(index)} out of range for {self.dims}")
            flat = flat * n + i
        return flat

    def multi_index(self, flat: int) -> tuple:
        out = []
        for n in reversed(self.dims):
            flat, i = divmod(flat, n)
            out.append(i)
        return tuple(reversed(out))

    def __getitem__(self, index):
        return self.entries[self.flat_index(index)]

    def _check_same(self, other: "Tensor"):
        if not isinstance(other, Tensor) or other.dims != self.dims:
            raise ShapeError("tensor shapes differ")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.dims, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.dims, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Tensor":
        return Tensor(self.dims, tuple(-a for a in self.entries))

    def scale(self, c) -> "Tensor":
        return Tensor(self.dims, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        if len(set(self.dims)) > 1:
            return False
        # adjacent transpositions generate the symmetric group
        for j in range(self.degree - 1):
            perm = list(range(self.degree))
            perm[j], perm[j + 1] = perm[j + 1], perm[j]
            if permute_factors(self, perm).entries != self.entries:
                return False
        return True

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "entries": [_scalar_to_json(x) for x in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "Tensor":
        try:
            dims, entries = obj["dims"], obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed tensor JSON: {exc}") from exc
        return cls(tuple(dims), tuple(_scalar_from_json(x) for x in entries))


def simple_tensor(vectors: Sequence[Sequence]) -> Tensor:
    """v_1 x v_2 x ... x v_d."""
    if not vectors:
        raise ShapeError("a simple tensor needs at least one factor")
    vecs = [tuple(_as_scalar(x) for x in v) for v in vectors]
    entries = []
    for combo in itertools.product(*vecs):
        acc = combo[0]
        for x in combo[1:]:
            acc = acc * x
        entries.append(acc)
    return Tensor(tuple(len(v) for v in vecs), tuple(entries))


def _as_scalar(x):
    if isinstance(x, (Fp, EpsPoly, Fraction)):
        return x
    return to_rational(x)


def permute_factors(t: Tensor, perm: Sequence[int]) -> Tensor:
    """Tensor whose factor ``j`` is factor ``perm[j]`` of ``t``."""
    if sorted(perm) != list(range(t.degree)):
        raise ShapeError(f"{perm} is not a permutation of the factor positions")
    new_dims = tuple(t.dims[p] for p in perm)
    entries = []
    for ix in itertools.product(*map(range, new_dims)):
        old = [0] * t.degree
        for j, p in enumerate(perm):
            old[p] = ix[j]
        entries.append(t[old])
    return Tensor(new_dims, tuple(entries))


def _validate_blocks(d: int, parts: Sequence[Iterable[int]]) -> list:
    blocks = [sorted(set(b)) for b in parts]
    flat = [i for b in blocks for i in b]
    if any(not b for b in blocks):
        raise ShapeError("grouping blocks must be nonempty")
    if sorted(flat) != list(range(d)) or len(flat) != d:
        raise ShapeError(f"blocks {parts} do not partition the factor positions 0..{d - 1}")
    return blocks


def group(t: Tensor, parts: Sequence[Iterable[int]]) -> Tensor:
    """Club factor positions into blocks; block ``b`` becomes factor ``b``.

    Inside a block the original positions are read in increasing order, last
    one fastest.
    """
    blocks = _validate_blocks(t.degree, parts)
    perm = [i for b in blocks for i in b]
    permuted = permute_factors(t, perm)
    new_dims = tuple(prod(t.dims[i] for i in b) for b in blocks)
    # after permuting, the row-major order already matches the grouped order
    return Tensor(new_dims, permuted.entries)


def flatten(t: Tensor, left: Iterable[int]) -> Matrix:
    left = sorted(set(left))
    if not left or len(left) == t.degree:
        raise ShapeError("flattening needs a nonempty proper subset of factor positions")
    if any(not 0 <= i < t.degree for i in left):
        raise ShapeError(f"positions {left} out of range")
    right = [i for i in range(t.degree) if i not in left]
    g = group(t, [left, right])
    return Matrix(g.dims[0], g.dims[1], tuple(_normalize_entry(x) for x in g.entries))


def _normalize_entry(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


# ---------------------------------------------------------------------------
# homogeneous polynomials
# ---------------------------------------------------------------------------

def monomials(n: int, d: int) -> list:
    """Exponent vectors of degree ``d`` in ``n`` variables, lex descending."""
    return list(_monomials(n, d))


@lru_cache(maxsize=None)
def _monomials(n: int, d: int) -> tuple:
    if n == 0:
        return ((),) if d == 0 else ()
    return tuple((first,) + rest for first in range(d, -1, -1)
                 for rest in _monomials(n - 1, d - first))


class HomogPoly:
    """Homogeneous polynomial of degree ``d`` in ``n`` variables."""

    __slots__ = ("n", "d", "coeffs")

    def __init__(self, n: int, d: int, coeffs: Optional[dict] = None):
        if n < 1 or d < 0:
            raise ShapeError(f"bad polynomial space P({n},{d})")
        self.n = n
        self.d = d
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e) or sum(e) != d:
                raise ShapeError(f"exponent {e} is not a degree-{d} monomial in {n} variables")
            if c:
                c = _as_scalar(c)
                clean[e] = clean[e] + c if e in clean else c
        self.coeffs = {e: c for e, c in clean.items() if c}

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "HomogPoly":
        return cls(len(exps), sum(exps), {tuple(exps): coeff})

    def coefficient(self, e: Sequence[int]):
        return self.coeffs.get(tuple(e), Fraction(0))

    def coordinates(self) -> tuple:
        return tuple(self.coefficient(e) for e in monomials(self.n, self.d))

    @classmethod
    def from_coordinates(cls, n: int, d: int, coords: Sequence) -> "HomogPoly":
        mons = monomials(n, d)
        if len(coords) != len(mons):
            raise ShapeError(f"P({n},{d}) has {len(mons)} coordinates, got {len(coords)}")
        return cls(n, d, dict(zip(mons, coords)))

    def _check_same(self, other: "HomogPoly"):
        if not isinstance(other, HomogPoly) or (other.n, other.d) != (self.n, self.d):
            raise ShapeError("polynomials live in different spaces")

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        self._check_same(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return HomogPoly(self.n, self.d, out)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(self.n, self.d, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def scale(self, c) -> "HomogPoly":
        return HomogPoly(self.n, self.d, {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        if not isinstance(other, HomogPoly) or other.n != self.n:
            raise ShapeError("polynomial product needs the same variables")
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return HomogPoly(self.n, self.d + other.d, out)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.d, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, point: Sequence):
        acc = Fraction(0)
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            acc = acc + term
        return acc

    def __repr__(self):
        if not self.coeffs:
            return f"HomogPoly(0; n={self.n}, d={self.d})"
        parts = []
        for e in monomials(self.n, self.d):
            if e in self.coeffs:
                mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
                parts.append(f"{_scalar_to_json(self.coeffs[e])}*{mono or '1'}")
        return "HomogPoly(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d,
                "terms": [{"exp": list(e), "c": _scalar_to_json(self.coeffs[e])}
                          for e in monomials(self.n, self.d) if e in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "HomogPoly":
        try:
            n, d = int(obj["n"]), int(obj["d"])
            terms = {tuple(t["exp"]): to_rational(t["c"]) for t in obj["terms"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"malformed polynomial JSON: {exc}") from exc
        return cls(n, d, terms)


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(_as_scalar(c) for c in self.coefficients))
        if not self.coefficients:
            raise ShapeError("linear form needs at least one variable")

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def to_json(self) -> list:
        return [_scalar_to_json(c) for c in self.coefficients]


def _power_terms(coeffs: tuple, d: int):
    """(exponent, coefficient) pairs of (sum a_i x_i)**d by the multinomial theorem."""
    pows = [[a ** k for k in range(d + 1)] for a in coeffs]
    for e in monomials(len(coeffs), d):
        c = multinomial(e)
        for row, k in zip(pows, e):
            if k:
                c = c * row[k]
        yield e, c


def power_of_linear(form, d: int) -> HomogPoly:
    """l**d via the multinomial theorem."""
    if d < 1:
        raise ShapeError("power must be at least 1")
    coeffs = form.coefficients if isinstance(form, LinearForm) else tuple(map(_as_scalar, form))
    return HomogPoly(len(coeffs), d, dict(_power_terms(coeffs, d)))


def expand_waring(terms: Sequence, d: int) -> HomogPoly:
    """Sum of ``c * l**d`` over ``(c, l)`` pairs."""
    if not terms:
        raise ShapeError("empty decomposition has no ambient space")
    if d < 1:
        raise ShapeError("power must be at least 1")
    acc: dict = {}
    n = None
    for c, form in terms:
        coeffs = form.coefficients if isinstance(form, LinearForm) else tuple(map(_as_scalar, form))
        if n is None:
            n = len(coeffs)
        elif len(coeffs) != n:
            raise ShapeError("linear forms in a decomposition must share the variable count")
        c = _as_scalar(c)
        for e, v in _power_terms(coeffs, d):
            acc[e] = acc[e] + c * v if e in acc else c * v
    return HomogPoly(n, d, acc)


def glynn_of_product(forms: Sequence[LinearForm], p: Optional[int] = None) -> list:
    """Write l_1 * ... * l_d as a signed sum of 2**(d-1) d-th powers.

    Uses  l_1...l_d = 1/(2**(d-1) d!) * sum_delta (prod delta) (sum delta_k l_k)**d
    with delta_1 fixed to +1.  Over F_p this needs p > d.
    """
    d = len(forms)
    if d < 1:
        raise ShapeError("need at least one linear form")
    n = forms[0].n
    if any(f.n != n for f in forms):
        raise ShapeError("linear forms live in different spaces")
    if p is None:
        p = _char_of(c for f in forms for c in f.coefficients)
    if p is not None and p <= d:
        raise CharacteristicError(f"Glynn's identity needs characteristic > {d}, got {p}")
    norm = Fraction(1, 2 ** (d - 1) * factorial(d))
    if p is not None:
        norm = Fp(norm, p)
    out = []
    for signs in itertools.product((1, -1), repeat=d - 1):
        delta = (1,) + signs
        coeffs = [sum((s * f.coefficients[i] for s, f in zip(delta, forms)), Fraction(0))
                  for i in range(n)]
        if p is not None:
            coeffs = [Fp(c, p) if not isinstance(c, Fp) else c for c in coeffs]
        out.append((norm * prod(delta), LinearForm(tuple(coeffs))))
    return out


def glynn_decompose(d: int, vars: Sequence[int], n: int, p: Optional[int] = None) -> list:
    """Waring decomposition of the monomial ``x_{vars[0]} ... x_{vars[d-1]}``."""
    if d < 1 or len(vars) != d:
        raise ShapeError("need d >= 1 and exactly d variable indices")
    if d > n or any(not 0 <= v < n for v in vars):
        raise ShapeError(f"variables {list(vars)} do not fit in {n} variables")
    if p is not None and p <= d:
        raise CharacteristicError(f"Glynn's identity needs characteristic > {d}, got {p}")
    one = Fraction(1) if p is None else Fp(1, p)
    forms = [LinearForm(tuple(one if i == v else one - one for i in range(n))) for v in vars]
    return glynn_of_product(forms, p)


# ---------------------------------------------------------------------------
# the symmetric embedding P(m,k) -> Ten(m,k)
# ---------------------------------------------------------------------------

def _exponent_of_word(word: Sequence[int], n: int) -> tuple:
    e = [0] * n
    for i in word:
        e[i] += 1
    return tuple(e)


def comon_embed(f: HomogPoly) -> Tensor:
    """Send f to the symmetric tensor iota(f); iota(l**k) = l x ... x l."""
    k, n = f.d, f.n
    if k < 1:
        raise ShapeError("degree-0 polynomials have no tensor image")
    p = _char_of(f.coeffs.values())
    if p is not None and p <= k:
        raise CharacteristicError(f"symmetrization needs characteristic > {k}, got {p}")
    zero = Fraction(0) if p is None else Fp(0, p)
    entries = []
    for word in itertools.product(range(n), repeat=k):
        e = _exponent_of_word(word, n)
        c = f.coeffs.get(e)
        if c is None:
            entries.append(zero)
            continue
        weight = Fraction(1, multinomial(e))
        entries.append(c * (weight if p is None else Fp(weight, p)))
    return Tensor((n,) * k, tuple(entries))


def comon_project(t: Tensor) -> HomogPoly:
    """Left inverse of :func:`comon_embed` on symmetric tensors."""
    if not t.is_symmetric():
        raise SymmetryError("tensor is not symmetric under factor permutations")
    k, n = t.degree, t.dims[0]
    p = _char_of(t.entries)
    if p is not None and p <= k:
        raise CharacteristicError(f"symmetrization needs characteristic > {k}, got {p}")
    coeffs = {}
    for e in monomials(n, k):
        word = [i for i, m in enumerate(e) for _ in range(m)]
        coeffs[e] = t[word] * multinomial(e)
    return HomogPoly(n, k, coeffs)


def waring_from_comon_decomposition(factors: Sequence[Sequence[Sequence]]) -> list:
    """Waring decomposition from a tensor decomposition of iota(f).

    ``factors[i]`` lists the k vectors of the i-th simple summand.  Since
    iota(f) is symmetric, f equals the sum of the products of the
    corresponding linear forms, and Glynn turns each product into 2**(k-1)
    powers.  Returns ``(coefficient, LinearForm)`` pairs.
    """
    out = []
    for vecs in factors:
        forms = [LinearForm(tuple(v)) for v in vecs]
        out.extend(glynn_of_product(forms))
    if not out:
        raise ValidationError("empty decomposition")
    return out
