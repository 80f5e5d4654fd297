"""Degenerations over Q[eps]: exact verification and a tiny exhaustive search.

A witness (r, q, factors, T2) certifies border rank <= r of a tensor t via
the polynomial identity

    eps^(q-1) * t = T1 + eps^q * T2,     T1 = sum of the r simple eps-tensors.

Tensors with :class:`~rankbarriers.exact.EpsPoly` entries are ordinary
:class:`~rankbarriers.spaces.Tensor` objects.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, SearchSizeError, ShapeError
from .exact import EpsPoly, to_rational
from .methods import max_search
from .spaces import Tensor, simple_tensor

__all__ = [
    "DegenerationWitness", "eps_tensor", "verify_degeneration", "search_degeneration",
    "witness_from_decomposition", "module_rank_upper", "w_tensor_witness",
]


def _eps(x) -> EpsPoly:
    return x if isinstance(x, EpsPoly) else EpsPoly.const(x)


def eps_tensor(t: Tensor) -> Tensor:
    """Lift a tensor with rational entries to constant eps-polynomial entries."""
    return Tensor(t.dims, tuple(_eps(x) for x in t.entries))


@dataclass(frozen=True)
class DegenerationWitness:
    r: int
    q: int
    factors: tuple   # r summands, each a tuple of k vectors of EpsPoly
    T2: Tensor

    def __post_init__(self):
        fac = tuple(tuple(tuple(_eps(x) for x in v) for v in summand)
                    for summand in self.factors)
        object.__setattr__(self, "factors", fac)
        object.__setattr__(self, "T2", eps_tensor(self.T2))

    def T1(self, dims: Optional[Sequence[int]] = None) -> Tensor:
        dims = tuple(dims) if dims is not None else self.T2.dims
        total = Tensor.zeros(dims, EpsPoly())
        for summand in self.factors:
            s = simple_tensor(summand)
            if s.dims != dims:
                raise ShapeError(f"summand has dims {s.dims}, expected {dims}")
            total = total + s
        return total

    def to_json(self) -> dict:
        return {"r": self.r, "q": self.q,
                "factors": [[[x.to_json() for x in v] for v in summand]
                            for summand in self.factors],
                "T2": self.T2.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "DegenerationWitness":
        try:
            factors = [[[EpsPoly.from_json(x) for x in v] for v in summand]
                       for summand in obj["factors"]]
            return cls(int(obj["r"]), int(obj["q"]), factors, Tensor.from_json(obj["T2"]))
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed witness JSON: {exc}") from exc


def verify_degeneration(t: Tensor, w: DegenerationWitness) -> bool:
    """Exact check of eps^(q-1) t = T1 + eps^q T2, coefficient by coefficient."""
    if w.q < 1:
        raise DomainError("degeneration order q must be >= 1")
    if w.T2.dims != t.dims:
        raise ShapeError(f"T2 has dims {w.T2.dims}, tensor has {t.dims}")
    for summand in w.factors:
        if tuple(len(v) for v in summand) != t.dims:
            raise ShapeError("witness factor vectors do not match the tensor dims")
    if len(w.factors) > w.r:
        return False
    T1 = w.T1(t.dims)
    for x, a, b in zip(t.entries, T1.entries, w.T2.entries):
        if _eps(x).shift(w.q - 1) != a + b.shift(w.q):
            return False
    return True


def witness_from_decomposition(t: Tensor, summands: Sequence[Sequence[Sequence]]
                               ) -> DegenerationWitness:
    """The q = 1 witness of an exact rank decomposition: T2 = 0."""
    return DegenerationWitness(len(summands), 1, summands, Tensor.zeros(t.dims, EpsPoly()))


def w_tensor_witness() -> DegenerationWitness:
    """(e0 + eps e1)^3 - e0^3 for the W tensor in (2,2,2), order 2."""
    e = EpsPoly.eps()
    one = EpsPoly.const(1)
    zero = EpsPoly()
    rising = (one, e)
    factors = [(rising, rising, rising), ((-one, zero), (one, zero), (one, zero))]

    def t2(ix):
        ones = sum(ix)
        if ones == 2:
            return EpsPoly.const(-1)
        if ones == 3:
            return -e
        return zero
    return DegenerationWitness(2, 2, factors, Tensor.from_function((2, 2, 2), t2))


def module_rank_upper(generators: Sequence) -> int:
    """Upper bound on the rank of the module spanned by ``generators``: their count."""
    return len(generators)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def _entry_polys(pool: Sequence[Fraction], D: int) -> list:
    """All eps-polynomials of degree <= D with coefficients from the pool, lex order."""
    return [EpsPoly(cs) for cs in itertools.product(pool, repeat=D + 1)]


def _truncated_simple_table(vec_sets: list, q: int, scale: int) -> np.ndarray:
    """Rows: eps^0..eps^(q-1) coefficients (scaled to integers) of every simple.

    Row order is itertools.product order over the per-factor vector lists.
    """
    def coeff_array(vectors):
        arr = np.zeros((len(vectors), len(vectors[0]), q), dtype=np.int64)
        for a, v in enumerate(vectors):
            for b, x in enumerate(v):
                for i in range(q):
                    arr[a, b, i] = int(x.coeff(i) * scale)
        return arr

    acc = coeff_array(vec_sets[0])
    for vectors in vec_sets[1:]:
        B = coeff_array(vectors)
        ca, na, _ = acc.shape
        cb, nb, _ = B.shape
        out = np.zeros((ca, cb, na, nb, q), dtype=np.int64)
        for i in range(q):
            for j in range(q - i):
                out[..., i + j] += acc[:, None, :, None, i] * B[None, :, None, :, j]
        acc = out.reshape(ca * cb, na * nb, q)
    return acc.reshape(acc.shape[0], -1)


def _unravel(index: int, sizes: Sequence[int]) -> list:
    out = []
    for s in reversed(sizes):
        index, k = divmod(index, s)
        out.append(k)
    return list(reversed(out))


def search_degeneration(t: Tensor, r: int, q_max: int, eps_deg_max: int,
                        coeff_pool: Sequence) -> Optional[DegenerationWitness]:
    """First witness of border rank <= r found in the bounded family, or ``None``.

    Factor entries range over eps-polynomials of degree <= ``eps_deg_max``
    with coefficients in ``coeff_pool``.  Only T1 mod eps^q is constrained, so
    candidates are compared on truncated coefficient vectors and T2 is
    recovered afterwards by exact division.  Search order: q, then the
    degree bound, then enumeration order of the candidates.
    """
    if r < 0 or q_max < 1 or eps_deg_max < 0:
        raise DomainError("need r >= 0, q_max >= 1, eps_deg_max >= 0")
    if any(isinstance(x, EpsPoly) for x in t.entries):
        raise DomainError("the tensor to degenerate must have constant entries")
    target_q = [to_rational(x) for x in t.entries]
    if r == 0:
        if any(target_q):
            return None
        return DegenerationWitness(0, 1, (), Tensor.zeros(t.dims, EpsPoly()))
    pool = sorted({to_rational(x) for x in coeff_pool}, key=lambda x: (abs(x), x < 0))
    if not pool:
        raise DomainError("empty coefficient pool")
    scale = lcm(*[x.denominator for x in pool])
    cap = max_search()
    k = t.degree
    target_scale = scale ** k

    for q in range(1, q_max + 1):
        for D in range(eps_deg_max + 1):
            entries = _entry_polys(pool, D)
            vec_sets = [list(itertools.product(entries, repeat=n)) for n in t.dims]
            sizes = [len(v) for v in vec_sets]
            total = prod(sizes)
            if total > cap:
                raise SearchSizeError(f"{total} candidate simples exceed the cap {cap} "
                                      "(raise RANKBARRIERS_MAX_SEARCH to allow)")
            table = _truncated_simple_table(vec_sets, q, scale)
            # distinct truncations, keeping the first candidate producing each
            _, first = np.unique(table, axis=0, return_index=True)
            first = np.sort(first)
            reps = table[first]
            lookup = {row.tobytes(): int(i) for row, i in zip(reps, first)}
            zero_row = np.zeros(table.shape[1], dtype=np.int64)
            lookup.setdefault(zero_row.tobytes(), -1)

            target = np.zeros((len(target_q), q), dtype=np.int64)
            for j, x in enumerate(target_q):
                v = x * target_scale
                if v.denominator != 1:
                    raise DomainError("tensor entries are not reachable from this pool scale")
                target[j, q - 1] = int(v)
            target = target.reshape(-1)

            combos = _search_sums(reps, first, lookup, target, r, cap)
            if combos is None:
                continue
            summands = []
            for idx in combos:
                if idx < 0:
                    continue
                choice = _unravel(idx, sizes)
                summands.append(tuple(vec_sets[j][c] for j, c in enumerate(choice)))
            w = _finish_witness(t, r, q, summands)
            if w is not None and verify_degeneration(t, w):
                return w
    return None


def _search_sums(reps, first, lookup, target, r: int, cap: int):
    """Indices of at most r candidates whose truncations sum to target (-1 = zero simple)."""
    if r == 1:
        hit = lookup.get(target.tobytes())
        return None if hit is None else [hit]
    count = len(first) ** (r - 1)
    if count > cap:
        raise SearchSizeError(f"{count} partial sums exceed the cap {cap}")
    rows = [np.zeros_like(target)] + list(reps)
    ids = [-1] + [int(i) for i in first]
    for combo in itertools.combinations_with_replacement(range(len(rows)), r - 1):
        partial = target.copy()
        for c in combo:
            partial = partial - rows[c]
        hit = lookup.get(partial.tobytes())
        if hit is not None:
            return [ids[c] for c in combo] + [hit]
    return None


def _finish_witness(t: Tensor, r: int, q: int, summands) -> Optional[DegenerationWitness]:
    dims = t.dims
    T1 = Tensor.zeros(dims, EpsPoly())
    for s in summands:
        T1 = T1 + simple_tensor(s)
    T2 = []
    for x, a in zip(t.entries, T1.entries):
        rest = EpsPoly.const(x).shift(q - 1) - a
        try:
            T2.append(rest.divide_eps(q))
        except ValueError:
            return None
    return DegenerationWitness(r, q, summands, Tensor(dims, tuple(T2)))
