"""Exact scalars and dense matrices.

Three scalar kinds flow through the package:

* rationals, carried as :class:`fractions.Fraction` (plain ``int`` is accepted
  wherever a rational is),
* prime-field elements :class:`Fp`,
* polynomials in epsilon with rational coefficients, :class:`EpsPoly`.

Rank, kernel and solve are defined for the two field kinds only.  Over the
rationals the rank uses fraction-free (Bareiss) elimination on an integer
matrix obtained by clearing row denominators; kernel and solve use
Gauss-Jordan with exact fractions.  Over F_p everything is plain elimination
on residues.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

from .errors import DomainError, ShapeError, UnsupportedScalarError

__all__ = [
    "Fraction", "Fp", "EpsPoly", "Matrix", "is_prime", "to_rational",
    "format_rational", "parse_rational", "mat_rank", "mat_kernel", "mat_solve",
    "rank_mod_p", "field_of",
]


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise DomainError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise DomainError("empty rational literal")
    if any(ch in s for ch in ".eE"):
        # "1.5" would silently become a binary-float-free Fraction, but the
        # wire format is "p/q" only.
        raise DomainError(f"rational literal must be 'p' or 'p/q', got {s!r}")
    try:
        num, _, den = s.partition("/")
        q = Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational literal {s!r}") from exc
    return q


# ---------------------------------------------------------------------------
# prime fields
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for f in range(3, isqrt(p) + 1, 2):
        if p % f == 0:
            return False
    return True


class Fp:
    """Element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if not is_prime(p):
            raise DomainError(f"modulus {p} is not prime")
        if isinstance(value, Fraction):
            value = value.numerator * pow(value.denominator, -1, p)
        self.value = int(value) % p
        self.p = p

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise DomainError(f"mixing F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, k: int):
        return Fp(pow(self.value, k, self.p), self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"


# ---------------------------------------------------------------------------
# epsilon polynomials
# ---------------------------------------------------------------------------

class EpsPoly:
    """Polynomial in epsilon over Q, coefficients indexed by degree.

    Arithmetic is exact and never truncated; trailing zeros are trimmed so
    equality is structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def eps(cls, power: int = 1, coeff=1) -> "EpsPoly":
        return cls([0] * power + [coeff])

    @classmethod
    def const(cls, c) -> "EpsPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def valuation(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def shift(self, k: int) -> "EpsPoly":
        """Multiply by eps**k."""
        if not self.coeffs:
            return self
        return EpsPoly([0] * k + list(self.coeffs))

    def divide_eps(self, k: int) -> "EpsPoly":
        """Exact division by eps**k."""
        if any(self.coeffs[:k]):
            raise DomainError(f"polynomial is not divisible by eps^{k}")
        return EpsPoly(self.coeffs[k:])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def _lift(x) -> "EpsPoly":
        if isinstance(x, EpsPoly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return EpsPoly([x])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return EpsPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return EpsPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return EpsPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] += x * y
        return EpsPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = EpsPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "EpsPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(format_rational(c) + ("" if i == 0 else f"*eps^{i}"))
        return "EpsPoly(" + " + ".join(terms) + ")"

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj) -> "EpsPoly":
        if isinstance(obj, (str, int)):
            return cls([to_rational(obj)])
        return cls(to_rational(c) for c in obj)


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------

def field_of(entries: Iterable):
    """Return ``None`` for Q or the prime ``p`` for F_p; reject non-fields."""
    # plain ints/fractions inside an F_p matrix are read as residues
    p = None
    for x in entries:
        if isinstance(x, Fp):
            if p is None:
                p = x.p
            elif p != x.p:
                raise UnsupportedScalarError("entries from different prime fields")
        elif isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            continue
        elif isinstance(x, EpsPoly):
            raise UnsupportedScalarError("F[eps] is not a field; rank is undefined here")
        else:
            raise UnsupportedScalarError(f"unsupported scalar {x!r}")
    return p


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of exact scalars."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), cols, tuple(_normalize(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, one=1) -> "Matrix":
        zero = one - one
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int, zero=Fraction(0)) -> "Matrix":
        return cls(rows, cols, (zero,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def mul_vec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} against {self.cols} columns")
        out = []
        for i in range(self.rows):
            acc = 0
            for a, b in zip(self.row(i), v):
                if a and b:
                    acc = acc + a * b
            out.append(acc if not isinstance(acc, int) else Fraction(acc))
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError("inner dimensions differ")
        cols = [other.entries[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out.append(_normalize(acc))
        return Matrix(self.rows, other.cols, tuple(out))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [_scalar_json(x) for x in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        try:
            rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"malformed matrix JSON: {exc}") from exc
        return cls(rows, cols, tuple(to_rational(e) for e in entries))


def _normalize(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def _scalar_json(x):
    if isinstance(x, Fp):
        return str(x.value)
    if isinstance(x, EpsPoly):
        return x.to_json()
    return format_rational(x)


def _rref_rational(rows: list) -> list:
    """In-place Gauss-Jordan over Q; returns pivot columns."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / Fraction(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def _rref_mod_p(rows: list, p: int) -> list:
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def _bareiss_rank(a: list) -> int:
    """Rank of an integer matrix by fraction-free elimination (destroys ``a``)."""
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        pv = pr[c]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[c]
            for j in range(c + 1, n):
                # exact: every intermediate entry is a minor of the input
                row[j] = (pv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix reduced mod ``p`` (no Fp objects involved)."""
    work = [[x % p for x in r] for r in rows]
    if not work or not work[0]:
        return 0
    return len(_rref_mod_p(work, p))


def _residues(m: Matrix, p: int) -> list:
    out = []
    for i in range(m.rows):
        row = []
        for x in m.row(i):
            if isinstance(x, Fp):
                row.append(x.value)
            else:
                q = to_rational(x)
                row.append(q.numerator * pow(q.denominator, -1, p) % p)
        out.append(row)
    return out


def _integer_rows(m: Matrix) -> list:
    out = []
    for i in range(m.rows):
        row = [to_rational(x) for x in m.row(i)]
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in row), 1)
        out.append([int(x * den) for x in row])
    return out


def mat_rank(m: Matrix) -> int:
    """Dimension of the row span of ``m``."""
    p = field_of(m.entries)
    if m.rows == 0 or m.cols == 0:
        return 0
    if p is not None:
        return len(_rref_mod_p(_residues(m, p), p))
    return _bareiss_rank(_integer_rows(m))


def mat_kernel(m: Matrix) -> list:
    """Basis of the right kernel, one free column at a time."""
    p = field_of(m.entries)
    if p is None:
        rows = [[to_rational(x) for x in m.row(i)] for i in range(m.rows)]
        pivots = _rref_rational(rows) if m.rows else []
        zero, one = Fraction(0), Fraction(1)
        wrap = lambda x: x  # noqa: E731
    else:
        rows = _residues(m, p)
        pivots = _rref_mod_p(rows, p) if m.rows else []
        zero, one = 0, 1
        wrap = lambda x: Fp(x, p)  # noqa: E731
    pivot_row = {c: i for i, c in enumerate(pivots)}
    basis = []
    for f in range(m.cols):
        if f in pivot_row:
            continue
        v = [zero] * m.cols
        v[f] = one
        for c, i in pivot_row.items():
            v[c] = -rows[i][f]
        basis.append(tuple(wrap(x) for x in v))
    return basis


def mat_solve(m: Matrix, b: Sequence) -> Optional[tuple]:
    """Some ``x`` with ``m x = b`` (free variables set to zero), or ``None``."""
    if len(b) != m.rows:
        raise ShapeError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    p = field_of(tuple(m.entries) + tuple(b))
    if p is None:
        rows = [[to_rational(x) for x in m.row(i)] + [to_rational(b[i])] for i in range(m.rows)]
        pivots = _rref_rational(rows) if m.rows else []
        zero = Fraction(0)
        wrap = lambda x: x  # noqa: E731
    else:
        aug = Matrix(m.rows, m.cols + 1,
                     tuple(x for i in range(m.rows) for x in (*m.row(i), b[i])))
        rows = _residues(aug, p)
        pivots = _rref_mod_p(rows, p) if m.rows else []
        zero = 0
        wrap = lambda x: Fp(x, p)  # noqa: E731
    if m.cols in pivots:
        return None
    x = [zero] * m.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][m.cols]
    return tuple(wrap(v) for v in x)
