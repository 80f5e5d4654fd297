"""Set multi-degrees, ordered set partitions, weak compositions and monomial counts.

Blocks and subsets are 0-based: a set partition of ``{0, ..., d-1}`` into
``k`` (possibly empty) blocks corresponds to a function ``{0..d-1} -> {0..k-1}``.
"""
from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Sequence

from .errors import DomainError, ShapeError

__all__ = [
    "sm_deg", "precedes", "enumerate_SP", "enumerate_Pp", "count_monomials_leq",
    "brute_count_monomials_leq", "Y", "Z", "upsilon", "upsilon_argmax",
    "support_subset", "indicator_vector", "count_smh_monomials",
    "brute_count_smh_monomials", "exponent_vectors_leq",
]


def sm_deg(e: Sequence[int], blocks: Sequence[int]) -> tuple:
    """Per-block degree of an exponent vector split into blocks of the given sizes."""
    if blocks is None or not len(blocks):
        raise ShapeError("set multi-degree needs a block structure")
    if sum(blocks) != len(e) or any(b < 0 for b in blocks):
        raise ShapeError(f"blocks {tuple(blocks)} do not partition {len(e)} exponents")
    out, start = [], 0
    for b in blocks:
        out.append(sum(e[start:start + b]))
        start += b
    return tuple(out)


def precedes(a: Sequence[int], b: Sequence[int]) -> bool:
    """Coordinatewise order on N^d."""
    if len(a) != len(b):
        raise ShapeError("multi-degrees of different length")
    return all(x <= y for x, y in zip(a, b))


def enumerate_SP(d: int, k: int) -> list:
    """All k^d ordered set partitions (I_1, ..., I_k) of {0..d-1}.

    Order follows the assignment functions in lexicographic order, so the
    first partition puts everything in block 0.
    """
    if d < 1 or k < 1:
        raise DomainError("need d, k >= 1")
    out = []
    for f in itertools.product(range(k), repeat=d):
        out.append(tuple(frozenset(i for i in range(d) if f[i] == b) for b in range(k)))
    return out


def enumerate_Pp(d: int, k: int) -> list:
    """Weak compositions of d into k parts, lexicographic."""
    if d < 0 or k < 1:
        raise DomainError("need d >= 0, k >= 1")
    if k == 1:
        return [(d,)]
    return [(first,) + rest for first in range(d + 1) for rest in enumerate_Pp(d - first, k - 1)]


def exponent_vectors_leq(n: int, D: int):
    """Exponent vectors in n variables of total degree <= D."""
    for total in range(D + 1):
        for mu in enumerate_Pp(total, n):
            yield mu


def count_monomials_leq(n: int, D: int) -> int:
    """Monomials of degree <= D in n variables; 0 when D < 0."""
    if n < 1:
        raise DomainError("need n >= 1")
    if D < 0:
        return 0
    return comb(n + D, n)


def brute_count_monomials_leq(n: int, D: int) -> int:
    if D < 0:
        return 0
    return sum(1 for e in itertools.product(range(D + 1), repeat=n) if sum(e) <= D)


def Y(n: int, d: int) -> int:
    return count_monomials_leq(n, d // 2)


def Z(n: int, d: int) -> int:
    """Monomials of degree <= d - floor(d/2) - 1 (degree 0 only when d = 1)."""
    return count_monomials_leq(n, d - d // 2 - 1)


def upsilon_argmax(mu: Sequence[int]) -> int:
    """Index of the part left out of the product: the first maximal one."""
    if not mu:
        raise DomainError("empty composition")
    return max(range(len(mu)), key=lambda j: (mu[j], -j))


def upsilon(mu: Sequence[int], n: int) -> int:
    """prod over j != l of C(n + mu_j - 1, mu_j), l the first maximal part."""
    if any(m < 0 for m in mu):
        raise DomainError(f"{tuple(mu)} has negative parts")
    skip = upsilon_argmax(mu)
    out = 1
    for j, m in enumerate(mu):
        if j != skip:
            out *= comb(n + m - 1, m)
    return out


def support_subset(f: Sequence[int]) -> frozenset:
    if any(x not in (0, 1) for x in f):
        raise DomainError(f"{tuple(f)} is not a zero-one vector")
    return frozenset(i for i, x in enumerate(f) if x == 1)


def indicator_vector(J: Iterable[int], d: int) -> tuple:
    J = set(J)
    if any(not 0 <= j < d for j in J):
        raise DomainError(f"subset {sorted(J)} not inside 0..{d - 1}")
    return tuple(int(i in J) for i in range(d))


def count_smh_monomials(ns: Sequence[int], ds: Sequence[int], D: int) -> int:
    """Monomials in blocked variables with block degrees <= ds and total <= D.

    Block i has ``ns[i]`` variables.  Convolves the per-block degree
    generating functions, truncated at D.
    """
    if len(ns) != len(ds):
        raise ShapeError("variable counts and degree bounds differ in length")
    if D < 0:
        return 0
    poly = [1] + [0] * D
    for n, dmax in zip(ns, ds):
        block = [comb(n + j - 1, j) if n > 0 else int(j == 0) for j in range(min(dmax, D) + 1)]
        new = [0] * (D + 1)
        for i, a in enumerate(poly):
            if a:
                for j, b in enumerate(block):
                    if i + j > D:
                        break
                    new[i + j] += a * b
        poly = new
    return sum(poly)


def brute_count_smh_monomials(ns: Sequence[int], ds: Sequence[int], D: int) -> int:
    if D < 0:
        return 0
    total_vars = sum(ns)
    count = 0
    for e in itertools.product(range(D + 1), repeat=total_vars):
        if sum(e) > D:
            continue
        if precedes(sm_deg(e, ns), ds):
            count += 1
    return count
