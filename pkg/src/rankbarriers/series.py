"""Truncated power series over Q, Hensel/Newton lifting, and transfer checks.

A :class:`UniSeries` stores a_0..a_T of sum a_i t^i with t = z - c.  A
:class:`MultiSeries` stores coefficients of (z - c)^e for total degree
|e| <= T.  Polynomials are :class:`Poly` objects (sparse exponent maps);
a :class:`PolyMap` is a list of them with a declared input arity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Dict, Optional, Sequence, Tuple

from .errors import BadSeedError, DomainError, NonEtaleError, ShapeError
from .exact import Matrix, format_rational, mat_rank, mat_solve, parse_rational, to_rational

__all__ = [
    "UniSeries", "MultiSeries", "Poly", "PolyMap", "AlgebraicFunctionSpec",
    "series_add", "series_mul", "series_compose", "hensel_lift", "hensel_lift_linear",
    "newton_system_lift", "verify_transfer", "verify_rank_transfer", "find_regular_center",
    "rational_roots", "DEFAULT_ORDER",
]

DEFAULT_ORDER = 16


# ---------------------------------------------------------------------------
# univariate series
# ---------------------------------------------------------------------------

class UniSeries:
    __slots__ = ("center", "order", "coeffs")

    def __init__(self, center, order: int, coeffs: Sequence = ()):
        if order < 0:
            raise DomainError("truncation order must be >= 0")
        self.center = to_rational(center)
        self.order = int(order)
        cs = [to_rational(x) for x in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, value, center=0, order: int = DEFAULT_ORDER) -> "UniSeries":
        return cls(center, order, [value])

    @classmethod
    def variable(cls, center=0, order: int = DEFAULT_ORDER) -> "UniSeries":
        """The series of z itself, c + t."""
        return cls(center, order, [center, 1])

    def _check(self, other: "UniSeries"):
        if not isinstance(other, UniSeries):
            raise DomainError("expected a univariate series")
        if self.center != other.center:
            raise DomainError(f"center mismatch: {self.center} vs {other.center}")

    def _with(self, coeffs, order=None) -> "UniSeries":
        return UniSeries(self.center, self.order if order is None else order, coeffs)

    def _coerce(self, other):
        if isinstance(other, UniSeries):
            self._check(other)
            return other
        return UniSeries(self.center, self.order, [to_rational(other)])

    def __add__(self, other):
        other = self._coerce(other)
        T = min(self.order, other.order)
        return self._with([a + b for a, b in zip(self.coeffs[:T + 1], other.coeffs)], T)

    __radd__ = __add__

    def __neg__(self):
        return self._with([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniSeries):
            c = to_rational(other)
            return self._with([c * a for a in self.coeffs])
        self._check(other)
        T = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(T + 1)]
        return self._with(out, T)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self._with([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "UniSeries":
        a = self.coeffs
        if a[0] == 0:
            raise DomainError("series with zero constant term is not a unit")
        inv = [1 / a[0]]
        for k in range(1, self.order + 1):
            s = sum((a[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0))
            inv.append(-s / a[0])
        return self._with(inv)

    def truncate(self, order: int) -> "UniSeries":
        return UniSeries(self.center, min(order, self.order), self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        return (self.center, self.order, self.coeffs) == (other.center, other.order, other.coeffs)

    def __hash__(self):
        return hash((self.center, self.order, self.coeffs))

    def __repr__(self):
        return f"UniSeries(center={self.center}, order={self.order}, {list(map(str, self.coeffs))})"

    def to_multi(self) -> "MultiSeries":
        return MultiSeries(1, (self.center,), self.order,
                           {(i,): c for i, c in enumerate(self.coeffs) if c})

    def to_json(self) -> dict:
        return {"center": format_rational(self.center), "order": self.order,
                "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "UniSeries":
        try:
            return cls(parse_rational(str(obj["center"])), int(obj["order"]),
                       [parse_rational(str(c)) for c in obj["coeffs"]])
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed series JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# multivariate series
# ---------------------------------------------------------------------------

def _exps_upto(n: int, T: int):
    for total in range(T + 1):
        for e in itertools.product(range(total + 1), repeat=n):
            if sum(e) == total:
                yield e


class MultiSeries:
    """Coefficients of (z - c)^e for |e| <= order."""

    __slots__ = ("n", "center", "order", "coeffs")

    def __init__(self, n: int, center: Sequence, order: int, coeffs: Optional[Dict] = None):
        if n < 1 or order < 0:
            raise DomainError("need n >= 1 and order >= 0")
        center = tuple(to_rational(x) for x in center)
        if len(center) != n:
            raise ShapeError("center has the wrong number of coordinates")
        self.n, self.center, self.order = n, center, order
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ShapeError(f"bad exponent {e}")
            c = to_rational(c)
            if c and sum(e) <= order:
                clean[e] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, value, n: int, center=None, order: int = DEFAULT_ORDER) -> "MultiSeries":
        center = center if center is not None else (0,) * n
        return cls(n, center, order, {(0,) * n: value})

    @classmethod
    def variable(cls, i: int, n: int, center=None, order: int = DEFAULT_ORDER) -> "MultiSeries":
        """z_i = c_i + t_i."""
        center = tuple(center) if center is not None else (0,) * n
        unit = tuple(int(j == i) for j in range(n))
        return cls(n, center, order, {(0,) * n: center[i], unit: 1})

    def _check(self, other: "MultiSeries"):
        if not isinstance(other, MultiSeries):
            raise DomainError("expected a multivariate series")
        if self.n != other.n:
            raise DomainError("variable count mismatch")
        if self.center != other.center:
            raise DomainError(f"center mismatch: {self.center} vs {other.center}")

    def _coerce(self, other):
        if isinstance(other, MultiSeries):
            self._check(other)
            return other
        return MultiSeries(self.n, self.center, self.order, {(0,) * self.n: to_rational(other)})

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiSeries(self.n, self.center, min(self.order, other.order), out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.n, self.center, self.order,
                           {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            c = to_rational(other)
            return MultiSeries(self.n, self.center, self.order,
                               {e: c * v for e, v in self.coeffs.items()})
        self._check(other)
        T = min(self.order, other.order)
        out: Dict[tuple, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            if d1 > T:
                continue
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > T:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiSeries(self.n, self.center, T, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers of multivariate series are not supported")
        result = MultiSeries(self.n, self.center, self.order, {(0,) * self.n: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, order: int) -> "MultiSeries":
        return MultiSeries(self.n, self.center, min(order, self.order), self.coeffs)

    def homogeneous_part(self, k: int) -> dict:
        return {e: c for e, c in self.coeffs.items() if sum(e) == k}

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.n)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return ((self.n, self.center, self.order, self.coeffs)
                == (other.n, other.center, other.order, other.coeffs))

    def __hash__(self):
        return hash((self.n, self.center, self.order, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        terms = ", ".join(f"{e}:{c}" for e, c in sorted(self.coeffs.items()))
        return f"MultiSeries(n={self.n}, center={self.center}, order={self.order}, {{{terms}}})"

    def to_json(self) -> dict:
        return {"n": self.n, "center": [format_rational(c) for c in self.center],
                "order": self.order,
                "terms": [{"exp": list(e), "c": format_rational(c)}
                          for e, c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, obj: dict) -> "MultiSeries":
        try:
            return cls(int(obj["n"]), [parse_rational(str(c)) for c in obj["center"]],
                       int(obj["order"]),
                       {tuple(t["exp"]): parse_rational(str(t["c"])) for t in obj["terms"]})
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed series JSON: {exc}") from exc


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_compose(outer, inner):
    """outer(inner): inner's constant term must equal outer's center.

    For univariate outer, ``inner`` is one series; for multivariate outer, a
    list of n series sharing a center.  The result lives at inner's center.
    """
    if isinstance(outer, UniSeries):
        if not isinstance(inner, UniSeries):
            raise DomainError("univariate compose needs a univariate inner series")
        if inner.coeffs[0] != outer.center:
            raise DomainError("inner constant term must equal the outer center")
        T = min(outer.order, inner.order)
        shifted = inner - outer.center
        result = UniSeries(inner.center, T)
        power = UniSeries(inner.center, T, [1])
        for a in outer.coeffs:
            result = result + power * a
            power = power * shifted
        return result
    if not isinstance(outer, MultiSeries):
        raise DomainError("outer must be a series")
    inners = list(inner)
    if len(inners) != outer.n:
        raise ShapeError("need one inner series per outer variable")
    for s, c in zip(inners, outer.center):
        if s.constant_term() != c:
            raise DomainError("inner constant terms must equal the outer center")
    shifted = [s - c for s, c in zip(inners, outer.center)]
    base = inners[0]
    result = MultiSeries(base.n, base.center, min([outer.order] + [s.order for s in inners]))
    for e, c in outer.coeffs.items():
        term = MultiSeries.constant(c, base.n, base.center, result.order)
        for s, k in zip(shifted, e):
            if k:
                term = term * (s ** k)
        result = result + term
    return result


# ---------------------------------------------------------------------------
# polynomials and polynomial maps
# ---------------------------------------------------------------------------

class Poly:
    """Sparse polynomial over Q in n variables."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict] = None):
        if n < 0:
            raise DomainError("negative variable count")
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ShapeError(f"exponent {e} does not fit {n} variables")
            c = to_rational(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def var(cls, i: int, n: int) -> "Poly":
        return cls(n, {tuple(int(j == i) for j in range(n)): 1})

    @classmethod
    def const(cls, c, n: int) -> "Poly":
        return cls(n, {(0,) * n: c})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ShapeError("polynomials in different numbers of variables")
            return other
        return Poly.const(other, self.n)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"Poly({self.n}, {dict(sorted(self.terms.items()))})"

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.n, out)

    def __call__(self, point: Sequence):
        """Evaluate at rationals or at series (anything closed under + and *)."""
        if len(point) != self.n:
            raise ShapeError(f"expected {self.n} arguments, got {len(point)}")
        point = list(point)
        series = next((p for p in point if isinstance(p, (UniSeries, MultiSeries))), None)
        if series is None:
            return sum((c * prod(to_rational(x) ** k for x, k in zip(point, e))
                        for e, c in self.terms.items()), Fraction(0))
        zero = series * 0
        powers: Dict[Tuple[int, int], object] = {}

        def pw(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = point[i] ** k
            return powers[(i, k)]

        total = zero
        for e, c in sorted(self.terms.items()):
            term = zero + c
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total = total + term
        return total

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"exp": list(e), "c": format_rational(c)}
                                       for e, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        try:
            return cls(int(obj["n"]), {tuple(t["exp"]): parse_rational(str(t["c"]))
                                       for t in obj["terms"]})
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed polynomial JSON: {exc}") from exc


@dataclass(frozen=True)
class PolyMap:
    n_in: int
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for p in self.components:
            if not isinstance(p, Poly) or p.n != self.n_in:
                raise ShapeError(f"every component must be a polynomial in {self.n_in} variables")

    @property
    def n_out(self) -> int:
        return len(self.components)

    def __call__(self, point: Sequence) -> list:
        return [p(point) for p in self.components]

    def to_json(self) -> dict:
        return {"n_in": self.n_in, "components": [p.to_json() for p in self.components]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyMap":
        try:
            return cls(int(obj["n_in"]), [Poly.from_json(p) for p in obj["components"]])
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed polynomial map JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# lifting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicFunctionSpec:
    """P(z, y) as a Poly in two variables (z first), a center and a seed value."""

    P: Poly
    center: Fraction
    seed: Fraction

    def __post_init__(self):
        if self.P.n != 2:
            raise ShapeError("P must be a polynomial in (z, y)")
        object.__setattr__(self, "center", to_rational(self.center))
        object.__setattr__(self, "seed", to_rational(self.seed))

    def check(self):
        if self.P((self.center, self.seed)) != 0:
            raise BadSeedError(f"P({self.center}, {self.seed}) != 0")
        if self.P.derivative(1)((self.center, self.seed)) == 0:
            raise NonEtaleError(f"dP/dy vanishes at ({self.center}, {self.seed}); "
                                "no power series root through this seed")


def hensel_lift(spec: AlgebraicFunctionSpec, T: int = DEFAULT_ORDER) -> UniSeries:
    """Power series root of P(z, y) through the seed, by Newton doubling."""
    spec.check()
    c = spec.center
    z = UniSeries.variable(c, T)
    dP = spec.P.derivative(1)
    y = UniSeries.constant(spec.seed, c, T)
    precision = 1
    while precision < T + 1:
        precision = min(2 * precision, T + 1)
        step_order = precision - 1
        yz = y.truncate(step_order)
        zz = z.truncate(step_order)
        correction = spec.P((zz, yz)) * dP((zz, yz)).inverse()
        y = UniSeries(c, T, (yz - correction).coeffs)
    return y


def hensel_lift_linear(spec: AlgebraicFunctionSpec, T: int = DEFAULT_ORDER) -> UniSeries:
    """Same root, one coefficient at a time: a_k = -[t^k] P(z, y_{<k}) / P_y(c, b_0)."""
    spec.check()
    c = spec.center
    z = UniSeries.variable(c, T)
    slope = spec.P.derivative(1)((c, spec.seed))
    coeffs = [spec.seed]
    for k in range(1, T + 1):
        y = UniSeries(c, k, coeffs)
        residual = spec.P((z.truncate(k), y)).coeffs[k]
        coeffs.append(-residual / slope)
    return UniSeries(c, T, coeffs)


def newton_system_lift(F: Sequence[Poly], n: int, center: Sequence, seed: Sequence,
                       T: int = DEFAULT_ORDER) -> list:
    """Series y_1..y_r in z_1..z_n around ``center`` with F(z, y) = 0 mod degree T+1.

    Each F_i is a Poly in n + r variables, z first.  The Jacobian along y at
    (center, seed) must be invertible; the correction of each homogeneous
    degree is then one linear solve per monomial.
    """
    F = list(F)
    r = len(F)
    seed = [to_rational(s) for s in seed]
    center = tuple(to_rational(c) for c in center)
    if len(seed) != r or len(center) != n:
        raise ShapeError("need one seed value per equation and one center coordinate per z")
    if any(f.n != n + r for f in F):
        raise ShapeError(f"equations must be polynomials in {n + r} variables")
    base = list(center) + seed
    if any(f(base) != 0 for f in F):
        raise BadSeedError("seed does not solve the system at the center")
    J = Matrix.from_rows([[f.derivative(n + j)(base) for j in range(r)] for f in F])
    if mat_rank(J) < r:
        raise NonEtaleError("Jacobian in y is singular at the seed")
    zs = [MultiSeries.variable(i, n, center, T) for i in range(n)]
    ys = [MultiSeries.constant(s, n, center, T) for s in seed]
    for k in range(1, T + 1):
        args = [z.truncate(k) for z in zs] + [y.truncate(k) for y in ys]
        residuals = [f(args).homogeneous_part(k) for f in F]
        monos = sorted(set().union(*[set(res) for res in residuals]))
        for e in monos:
            rhs = [-res.get(e, Fraction(0)) for res in residuals]
            delta = mat_solve(J, rhs)
            for j in range(r):
                if delta[j]:
                    ys[j] = ys[j] + MultiSeries(n, center, T, {e: delta[j]})
    return ys


# ---------------------------------------------------------------------------
# transfer verification
# ---------------------------------------------------------------------------

def _as_multi(s, n: int) -> MultiSeries:
    if isinstance(s, UniSeries):
        s = s.to_multi()
    if not isinstance(s, MultiSeries):
        raise ShapeError("expected a power series")
    if s.n != n:
        raise ShapeError(f"series in {s.n} variables, expected {n}")
    # coefficients are read in the shifted variable t = z - c, so recenter at 0
    return MultiSeries(n, (0,) * n, s.order, s.coeffs)


def _shifted_inputs(n: int, c: Sequence, T: int) -> list:
    c = [to_rational(x) for x in c]
    if len(c) != n:
        raise ShapeError(f"shift has {len(c)} coordinates, L takes {n}")
    return [MultiSeries.variable(i, n, None, T) + c[i] for i in range(n)]


def _order_available(series: Sequence[MultiSeries], T: int):
    for s in series:
        if s.order < T:
            raise DomainError(f"series known only to order {s.order}, cannot check to {T}")


def verify_transfer(L: PolyMap, M: PolyMap, c: Sequence, ps: Sequence, T: int) -> bool:
    """Is L(t + c) = M(p_1(t), ..., p_r(t)) modulo total degree T + 1?"""
    if L.n_out != M.n_out:
        raise ShapeError("L and M have different output arities")
    if len(ps) != M.n_in:
        raise ShapeError(f"M takes {M.n_in} inputs, got {len(ps)} series")
    n = L.n_in
    ps = [_as_multi(p, n).truncate(T) for p in ps]
    _order_available(ps, T)
    lhs = L(_shifted_inputs(n, c, T))
    rhs = M(ps) if ps else [MultiSeries.constant(p(()), n, None, T) for p in M.components]
    return all((a - b).truncate(T).is_zero() for a, b in zip(lhs, rhs))


def verify_rank_transfer(L: PolyMap, a: int, c: Sequence, factors: Sequence, T: int,
                         dims: Sequence[int]) -> bool:
    """Is L(t + c) = sum_i p_i^(1) x ... x p_i^(k) modulo degree T + 1?

    ``L`` has prod(dims) outputs read in row-major tensor order; ``factors``
    is an a-by-k grid whose (i, j) entry is a list of dims[j] series.
    """
    dims = tuple(dims)
    if L.n_out != prod(dims):
        raise ShapeError(f"L has {L.n_out} outputs, tensor has {prod(dims)} entries")
    if len(factors) != a:
        raise ShapeError(f"expected {a} rows of factors, got {len(factors)}")
    n = L.n_in
    lhs = L(_shifted_inputs(n, c, T))
    total = [MultiSeries(n, (0,) * n, T) for _ in lhs]
    for row in factors:
        if len(row) != len(dims):
            raise ShapeError("each summand needs one vector per tensor factor")
        vecs = []
        for vec, m in zip(row, dims):
            if len(vec) != m:
                raise ShapeError(f"factor vector has length {len(vec)}, expected {m}")
            vec = [_as_multi(s, n).truncate(T) for s in vec]
            _order_available(vec, T)
            vecs.append(vec)
        for flat, index in enumerate(itertools.product(*[range(m) for m in dims])):
            term = MultiSeries.constant(1, n, None, T)
            for vec, i in zip(vecs, index):
                term = term * vec[i]
            total[flat] = total[flat] + term
    return all((x - y).truncate(T).is_zero() for x, y in zip(lhs, total))


# ---------------------------------------------------------------------------
# center search
# ---------------------------------------------------------------------------

def _divisors(m: int) -> list:
    m = abs(m)
    return [k for k in range(1, m + 1) if m % k == 0]


def rational_roots(coeffs: Sequence) -> list:
    """Distinct rational roots of sum coeffs[i] y^i, ordered 0, 1, -1, 2, -2 ... by size."""
    cs = [to_rational(x) for x in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots = set()
    if cs[0] == 0:
        roots.add(Fraction(0))
        while cs and cs[0] == 0:
            cs.pop(0)
    if len(cs) > 1:
        lcm = 1
        for c in cs:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in cs]
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(a * cand ** i for i, a in enumerate(ints)) == 0:
                        roots.add(cand)
    return sorted(roots, key=lambda x: (abs(x), x < 0))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _spiral(budget: int):
    yield 0
    for k in range(1, budget + 1):
        yield k
        yield -k


def find_regular_center(P: Poly, budget: int = 20) -> Optional[AlgebraicFunctionSpec]:
    """First integer center in the order 0, 1, -1, 2, ... with a regular rational seed."""
    if P.n != 2:
        raise ShapeError("P must be a polynomial in (z, y)")
    dP = P.derivative(1)
    for c in _spiral(budget):
        degree_y = max((e[1] for e in P.terms), default=0)
        ycoeffs = [Fraction(0)] * (degree_y + 1)
        for (ez, ey), coef in P.terms.items():
            ycoeffs[ey] += coef * Fraction(c) ** ez
        for b in rational_roots(ycoeffs):
            if dP((c, b)) != 0:
                return AlgebraicFunctionSpec(P, Fraction(c), b)
    return None
