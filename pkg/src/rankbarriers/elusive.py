"""Toy elusiveness checks for univariate curves.

* linear elusiveness: {1, p_1, ..., p_m} linearly independent;
* membership of a monomial in the degree-d span of monomial generators;
* an exact decision procedure for covering target exponents by sums of at
  most two unknown exponents, {0, e_i, e_i + e_j}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, SearchSizeError
from .exact import Matrix, format_rational, mat_rank, mat_solve, to_rational

__all__ = [
    "MonomialSet", "Pattern", "CoverAssignment", "is_linearly_elusive", "dspan_member",
    "monomial_cover_feasible", "cover_patterns", "DEFAULT_MAX_PATTERNS",
]

DEFAULT_MAX_PATTERNS = 9 ** 6


@dataclass(frozen=True)
class MonomialSet:
    exponents: tuple

    def __post_init__(self):
        exps = tuple(to_rational(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise DomainError("monomial exponents must be nonnegative")
        object.__setattr__(self, "exponents", exps)


def _coefficient_rows(polys: Sequence) -> list:
    rows = []
    for p in polys:
        if hasattr(p, "terms") and hasattr(p, "n"):
            if p.n != 1:
                raise DomainError("expected univariate polynomials")
            deg = max((e[0] for e in p.terms), default=0)
            row = [Fraction(0)] * (deg + 1)
            for (k,), c in p.terms.items():
                row[k] = c
            rows.append(row)
        else:
            rows.append([to_rational(c) for c in p])
    return rows


def is_linearly_elusive(polys: Sequence) -> bool:
    """True iff 1, p_1, ..., p_m are linearly independent over Q.

    Each polynomial is a coefficient list (index = power of z) or a
    univariate :class:`~rankbarriers.series.Poly`.
    """
    if not polys:
        raise DomainError("need at least one polynomial")
    rows = [[Fraction(1)]] + _coefficient_rows(polys)
    width = max(len(r) for r in rows)
    padded = [r + [Fraction(0)] * (width - len(r)) for r in rows]
    return mat_rank(Matrix.from_rows(padded)) == len(rows)


def dspan_member(target, gens, d: int) -> bool:
    """Is z^target a monomial of degree <= d in the generators z^e_i?

    That is: target = sum c_i e_i with naturals c_i, sum c_i <= d.
    """
    if d < 0:
        raise DomainError("d must be >= 0")
    exps = gens.exponents if isinstance(gens, MonomialSet) else MonomialSet(tuple(gens)).exponents
    target = to_rational(target)

    def reach(value: Fraction, start: int, budget: int) -> bool:
        if value == 0:
            return True
        if budget == 0 or value < 0:
            return False
        for i in range(start, len(exps)):
            e = exps[i]
            if e == 0:
                continue
            if e <= value and reach(value - e, i, budget - 1):
                return True
        return False

    return reach(target, 0, d)


@dataclass(frozen=True)
class Pattern:
    """``single`` has one index, ``pair`` has i <= j."""

    kind: str
    indices: tuple

    def value(self, exps: Sequence[Fraction]) -> Fraction:
        return sum((exps[i] for i in self.indices), Fraction(0))

    def __str__(self):
        return f"{self.kind}({','.join(str(i) for i in self.indices)})"


def cover_patterns(r: int) -> list:
    """single(0..r-1) first, then pair(i, j) with i <= j in lex order."""
    singles = [Pattern("single", (i,)) for i in range(r)]
    pairs = [Pattern("pair", (i, j)) for i in range(r) for j in range(i, r)]
    return singles + pairs


@dataclass(frozen=True)
class CoverAssignment:
    patterns: tuple
    exponents: tuple

    def is_valid(self, targets: Sequence) -> bool:
        if any(e < 0 for e in self.exponents):
            return False
        return all(p.value(self.exponents) == to_rational(t)
                   for p, t in zip(self.patterns, targets))

    def to_json(self) -> dict:
        return {"patterns": [str(p) for p in self.patterns],
                "exponents": [format_rational(e) for e in self.exponents]}


def _row(p: Pattern, r: int) -> list:
    row = [Fraction(0)] * r
    for i in p.indices:
        row[i] += 1
    return row


def _nonnegative_solution(rows: list, rhs: list, r: int) -> Optional[tuple]:
    """A solution e >= 0 of rows * e = rhs, or None.

    A feasible system has a basic feasible solution, so it suffices to try
    every column subset of full column rank with the other unknowns at zero.
    """
    for size in range(0, r + 1):
        for cols in itertools.combinations(range(r), size):
            if size == 0:
                if all(b == 0 for b in rhs):
                    return (Fraction(0),) * r
                continue
            sub = Matrix.from_rows([[row[c] for c in cols] for row in rows], cols=size)
            if mat_rank(sub) < size:
                continue
            sol = mat_solve(sub, rhs)
            if sol is None or any(x < 0 for x in sol):
                continue
            e = [Fraction(0)] * r
            for c, x in zip(cols, sol):
                e[c] = to_rational(x)
            return tuple(e)
    return None


def monomial_cover_feasible(targets: Sequence, r: int,
                            max_patterns: int = DEFAULT_MAX_PATTERNS
                            ) -> Optional[CoverAssignment]:
    """First pattern assignment whose linear system has a solution e >= 0.

    Each target is matched to e_i or e_i + e_j.  Assignments are explored
    depth first in :func:`cover_patterns` order, pruning as soon as the
    partial system has no nonnegative solution.  Exhaustive, so ``None`` means no
    nonnegative exponents e_1..e_r cover the targets.
    """
    targets = [to_rational(t) for t in targets]
    if r < 1:
        raise DomainError("r must be >= 1")
    if any(t <= 0 for t in targets):
        raise DomainError("targets must be positive")
    patterns = cover_patterns(r)
    count = len(patterns) ** len(targets)
    if count > max_patterns:
        raise SearchSizeError(f"{count} pattern assignments exceed the cap {max_patterns}")
    rows_of = [_row(p, r) for p in patterns]

    chosen: list = []
    rows: list = []

    def extend(k: int) -> Optional[CoverAssignment]:
        if k == len(targets):
            e = _nonnegative_solution(rows, targets[:k], r)
            if e is None:
                return None
            return CoverAssignment(tuple(chosen), e)
        for p, row in zip(patterns, rows_of):
            rows.append(row)
            chosen.append(p)
            # adding equations only shrinks the feasible set, so prune on it
            if _nonnegative_solution(rows, targets[:k + 1], r) is not None:
                found = extend(k + 1)
                if found is not None:
                    return found
            rows.pop()
            chosen.pop()
        return None

    return extend(0)
