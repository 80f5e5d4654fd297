"""Rank methods as explicit matrices, measured on simples and on whole spaces.

A rank method is a linear map between coordinatized spaces.  Tensor spaces
use the row-major entry order of :class:`~rankbarriers.spaces.Tensor`;
polynomial spaces P(n,d) use the graded-lex monomial order of
:func:`~rankbarriers.spaces.monomials`.  A tensor space with two factors is a
matrix space, and the method is then a matrix-rank method.

The brute-force oracles at the bottom compute exact tensor and Waring rank
over small prime fields by breadth-first search in the additive group,
stepping by simples.  They are only meant for desk-scale sizes.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, prod
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (CharacteristicError, DegenerateMethodError, OracleUnavailableError,
                     SearchSizeError, ShapeError, ValidationError)
from .exact import Fp, Matrix, is_prime, mat_rank, rank_mod_p, to_rational
from .spaces import (HomogPoly, Tensor, comon_embed, flatten, group, monomials, power_of_linear,
                     simple_tensor)

__all__ = [
    "SpaceDescriptor", "RankMethod", "RankCertificate", "PotencyEstimate",
    "make_flattening_method", "make_grouping_method", "make_catalecticant_method",
    "random_method", "apply",
    "element_rank", "mu_on_simples_sampled", "mu_on_space_sampled", "measure_potency",
    "exhaustive_potency", "lower_bound_certificate", "brute_trank", "brute_wrank",
    "trank_table", "max_search", "matmul_tensor", "w_tensor", "diagonal_tensor",
]

DEFAULT_MAX_SEARCH = 1 << 22


def max_search() -> int:
    """Search cap, overridable through RANKBARRIERS_MAX_SEARCH."""
    raw = os.environ.get("RANKBARRIERS_MAX_SEARCH")
    if raw is None:
        return DEFAULT_MAX_SEARCH
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"RANKBARRIERS_MAX_SEARCH={raw!r} is not an integer") from None


# ---------------------------------------------------------------------------
# spaces and methods
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceDescriptor:
    """``kind`` is "tensor" (``shape`` = dims) or "waring" (``shape`` = (n, d))."""

    kind: str
    shape: tuple

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(int(x) for x in self.shape))
        if self.kind == "tensor":
            if not self.shape or any(x < 1 for x in self.shape):
                raise ShapeError(f"bad tensor dims {self.shape}")
        elif self.kind == "waring":
            if len(self.shape) != 2 or self.shape[0] < 1 or self.shape[1] < 1:
                raise ShapeError(f"waring space needs (n, d), got {self.shape}")
        else:
            raise ShapeError(f"unknown space kind {self.kind!r}")

    @classmethod
    def tensor(cls, dims: Sequence[int]) -> "SpaceDescriptor":
        return cls("tensor", tuple(dims))

    @classmethod
    def waring(cls, n: int, d: int) -> "SpaceDescriptor":
        return cls("waring", (n, d))

    @property
    def dimension(self) -> int:
        if self.kind == "tensor":
            return prod(self.shape)
        n, d = self.shape
        return comb(n + d - 1, d)

    @property
    def is_matrix_space(self) -> bool:
        return self.kind == "tensor" and len(self.shape) == 2

    def coords(self, v) -> tuple:
        if self.kind == "tensor":
            if not isinstance(v, Tensor) or v.dims != self.shape:
                raise ShapeError(f"expected a tensor of dims {self.shape}")
            return v.entries
        if isinstance(v, Matrix):
            raise ShapeError("a matrix is not an element of a polynomial space")
        if not isinstance(v, HomogPoly) or (v.n, v.d) != self.shape:
            raise ShapeError(f"expected a polynomial in P{self.shape}")
        return v.coordinates()

    def element(self, coords: Sequence):
        if len(coords) != self.dimension:
            raise ShapeError("coordinate vector has the wrong length")
        if self.kind == "tensor":
            return Tensor(self.shape, tuple(coords))
        return HomogPoly.from_coordinates(*self.shape, coords)

    def random_simple_coords(self, rng: random.Random, bound: int) -> tuple:
        """A simple element with integer parameters drawn from [-bound, bound]."""
        if self.kind == "tensor":
            vecs = [[rng.randint(-bound, bound) for _ in range(n)] for n in self.shape]
            return simple_tensor(vecs).entries
        n, d = self.shape
        return power_of_linear([rng.randint(-bound, bound) for _ in range(n)], d).coordinates()

    def to_json(self) -> dict:
        if self.kind == "tensor":
            return {"kind": "tensor", "dims": list(self.shape)}
        return {"kind": "waring", "n": self.shape[0], "d": self.shape[1]}

    @classmethod
    def from_json(cls, obj: dict) -> "SpaceDescriptor":
        try:
            if obj["kind"] == "tensor":
                return cls.tensor(obj["dims"])
            return cls.waring(obj["n"], obj["d"])
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed space JSON: {exc}") from exc


@dataclass(frozen=True)
class RankMethod:
    source: SpaceDescriptor
    target: SpaceDescriptor
    matrix: Matrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.dimension, self.source.dimension):
            raise ShapeError(
                f"method matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.dimension}x{self.source.dimension}")

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": self.matrix.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "RankMethod":
        try:
            return cls(SpaceDescriptor.from_json(obj["source"]),
                       SpaceDescriptor.from_json(obj["target"]),
                       Matrix.from_json(obj["matrix"]))
        except KeyError as exc:
            raise ShapeError(f"malformed method JSON: missing {exc}") from exc


def _permutation_method(source: SpaceDescriptor, target: SpaceDescriptor, images: Sequence[int]):
    # images[target_flat] = source_flat
    N = source.dimension
    one, zero = Fraction(1), Fraction(0)
    entries = [zero] * (len(images) * N)
    for row, src in enumerate(images):
        entries[row * N + src] = one
    return RankMethod(source, target, Matrix(len(images), N, tuple(entries)))


def make_grouping_method(n: int, d: int, parts: Sequence[Sequence[int]]) -> RankMethod:
    """Ten(n,d) -> Ten(n^|I_1|, ..., n^|I_k|) by clubbing factor blocks."""
    dims = (n,) * d
    index_tensor = Tensor(dims, tuple(range(n ** d)))
    g = group(index_tensor, parts)
    return _permutation_method(SpaceDescriptor.tensor(dims), SpaceDescriptor.tensor(g.dims),
                               g.entries)


def make_flattening_method(n: int, d: int, left: Sequence[int]) -> RankMethod:
    left = sorted(set(left))
    if not left or len(left) >= d or any(not 0 <= i < d for i in left):
        raise ShapeError("flattening needs a nonempty proper subset of factor positions")
    right = [i for i in range(d) if i not in left]
    return make_grouping_method(n, d, [left, right])


def make_catalecticant_method(n: int, d: int, a: int) -> RankMethod:
    """P(n,d) -> M_{n^a, n^(d-a)}: flatten the symmetric tensor of f at positions 0..a-1.

    Powers l^d go to rank-one matrices.
    """
    if not 0 < a < d:
        raise ShapeError("need 0 < a < d")
    source = SpaceDescriptor.waring(n, d)
    target = SpaceDescriptor.tensor((n ** a, n ** (d - a)))
    columns = []
    for e in monomials(n, d):
        columns.append(flatten(comon_embed(HomogPoly.monomial(e)), range(a)).entries)
    rows = target.dimension
    entries = tuple(columns[j][i] for i in range(rows) for j in range(len(columns)))
    return RankMethod(source, target, Matrix(rows, len(columns), entries))


def random_method(source: SpaceDescriptor, target: SpaceDescriptor, rng: random.Random,
                  bound: int = 5) -> RankMethod:
    rows, cols = target.dimension, source.dimension
    entries = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(rows * cols))
    return RankMethod(source, target, Matrix(rows, cols, entries))


def apply(phi: RankMethod, v):
    """phi(v) as an element of the target space."""
    return phi.target.element(phi.matrix.mul_vec(phi.source.coords(v)))


def _coords_rank(space: SpaceDescriptor, coords: Sequence, rank_oracle=None) -> int:
    if space.kind == "tensor" and len(space.shape) == 1:
        return int(any(coords))
    if space.is_matrix_space:
        return mat_rank(Matrix(space.shape[0], space.shape[1], tuple(coords)))
    if rank_oracle is None:
        raise OracleUnavailableError(
            f"no rank oracle for target {space.kind}{space.shape}; supply one")
    return rank_oracle(space.element(coords))


def element_rank(space: SpaceDescriptor, v, rank_oracle=None) -> int:
    """Target-side rank: matrix rank for matrix spaces, otherwise ``rank_oracle``."""
    return _coords_rank(space, space.coords(v), rank_oracle)


def mu_on_simples_sampled(phi: RankMethod, trials: int = 50, bound: int = 5, seed: int = 0,
                          rank_oracle: Optional[Callable] = None) -> int:
    """Max target rank over random simples: a lower estimate of mu_phi(S)."""
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        img = phi.matrix.mul_vec(phi.source.random_simple_coords(rng, bound))
        best = max(best, _coords_rank(phi.target, img, rank_oracle))
    return best


def mu_on_space_sampled(phi: RankMethod, trials: int = 20, bound: int = 5, seed: int = 0,
                        rank_oracle: Optional[Callable] = None) -> int:
    """Max target rank over random elements of the source space.

    For matrix targets the generic rank is attained off a proper Zariski
    closed set, so integer sampling finds mu_phi(V) with high probability.
    """
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        v = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(phi.source.dimension))
        best = max(best, _coords_rank(phi.target, phi.matrix.mul_vec(v), rank_oracle))
    return best


@dataclass(frozen=True)
class PotencyEstimate:
    mu_space: int
    mu_simples: int

    @property
    def potency(self) -> Fraction:
        if self.mu_simples == 0:
            raise DegenerateMethodError("method vanishes on every sampled simple")
        return Fraction(self.mu_space, self.mu_simples)

    def to_json(self) -> dict:
        return {"mu_space": self.mu_space, "mu_simples": self.mu_simples,
                "potency": f"{self.potency.numerator}/{self.potency.denominator}"
                if self.potency.denominator != 1 else str(self.potency.numerator)}


def measure_potency(phi: RankMethod, trials: int = 30, bound: int = 5, seed: int = 0,
                    rank_oracle: Optional[Callable] = None) -> PotencyEstimate:
    """Sampled potency over Q; mu on simples is a lower estimate, so the ratio leans high."""
    return PotencyEstimate(
        mu_on_space_sampled(phi, trials, bound, seed, rank_oracle),
        mu_on_simples_sampled(phi, trials, bound, seed + 1, rank_oracle))


def _residue_matrix(m: Matrix, p: int) -> np.ndarray:
    out = np.zeros((m.rows, m.cols), dtype=np.int64)
    for i in range(m.rows):
        for j, x in enumerate(m.row(i)):
            if isinstance(x, Fp):
                out[i, j] = x.value
            else:
                q = to_rational(x)
                out[i, j] = q.numerator * pow(q.denominator, -1, p) % p
    return out


def _simple_parameters(dims: Sequence[int], p: int) -> list:
    """One parameter tuple per distinct nonzero simple tensor over F_p.

    Factors after the first are normalized to have first nonzero coordinate 1.
    """
    def nonzero(n, normalized):
        for v in itertools.product(range(p), repeat=n):
            if not any(v):
                continue
            if normalized and next(x for x in v if x) != 1:
                continue
            yield v
    per_mode = [list(nonzero(n, j > 0)) for j, n in enumerate(dims)]
    return list(itertools.product(*per_mode))


def _simple_codes(dims: Sequence[int], p: int) -> np.ndarray:
    """Residue vectors (rows) of all distinct nonzero simple tensors over F_p."""
    rows = []
    for vecs in _simple_parameters(dims, p):
        flat = [1]
        for v in vecs:
            flat = [a * b % p for a in flat for b in v]
        rows.append(flat)
    return np.unique(np.array(rows, dtype=np.int64), axis=0)


def _guard(count: int, what: str):
    cap = max_search()
    if count > cap:
        raise SearchSizeError(f"{what} needs {count} states, cap is {cap} "
                              f"(raise RANKBARRIERS_MAX_SEARCH to allow)")


def _bfs_distances(generators: np.ndarray, p: int, N: int) -> np.ndarray:
    """Word length of every vector of F_p^N in the generators (-1 if unreachable)."""
    total = p ** N
    _guard(total, "full rank table")
    powers = p ** np.arange(N - 1, -1, -1, dtype=np.int64)
    codes = np.arange(total, dtype=np.int64)
    digits = (codes[:, None] // powers[None, :]) % p
    dist = np.full(total, -1, dtype=np.int64)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        found = []
        fd = digits[frontier]
        for g in generators:
            nb = ((fd + g) % p) @ powers
            nb = nb[dist[nb] == -1]
            if nb.size:
                nb = np.unique(nb)
                dist[nb] = level
                found.append(nb)
        frontier = np.unique(np.concatenate(found)) if found else np.array([], dtype=np.int64)
    return dist


def trank_table(dims: Sequence[int], p: int) -> np.ndarray:
    """Tensor rank over F_p of every tensor with the given dims, indexed by code.

    The code of a tensor is its row-major entry vector read as a base-p
    number, first entry most significant.
    """
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    return _bfs_distances(_simple_codes(dims, p), p, prod(dims))


def _tensor_residues(t: Tensor, p: Optional[int]):
    ps = {x.p for x in t.entries if isinstance(x, Fp)}
    if len(ps) > 1:
        raise ValidationError("entries from different prime fields")
    if ps:
        q = ps.pop()
        if p is not None and p != q:
            raise ValidationError(f"tensor lives over F_{q}, asked for F_{p}")
        p = q
    if p is None:
        raise ValidationError("brute-force rank needs a prime field; pass p")
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    res = []
    for x in t.entries:
        if isinstance(x, Fp):
            res.append(x.value)
        else:
            q = to_rational(x)
            res.append(q.numerator * pow(q.denominator, -1, p) % p)
    return tuple(res), p


def _bfs_word_length(target: tuple, generators: np.ndarray, p: int, r_max: int) -> Optional[int]:
    """Least r <= r_max with target a sum of r generators, by BFS from target."""
    if not any(target):
        return 0
    gens = [tuple(int(x) for x in g) for g in generators]
    gen_set = set(gens)
    cap = max_search()
    frontier = {target}
    seen = {target}
    for r in range(1, r_max + 1):
        # one more generator reaches zero iff the remainder is itself a generator
        if any(f in gen_set for f in frontier):
            return r
        if r == r_max:
            break
        nxt = set()
        for f in frontier:
            for g in gens:
                h = tuple((a - b) % p for a, b in zip(f, g))
                if h not in seen:
                    seen.add(h)
                    nxt.add(h)
            if len(seen) > cap:
                raise SearchSizeError(f"rank search visited more than {cap} states")
        frontier = nxt
        if not frontier:
            break
    return None


def brute_trank(t: Tensor, r_max: int, p: Optional[int] = None) -> Optional[int]:
    """Exact tensor rank over F_p if it is at most ``r_max``, else ``None``."""
    target, p = _tensor_residues(t, p)
    nsimple = prod(p ** n - 1 for n in t.dims) // (p - 1) ** (t.degree - 1)
    _guard(min(p ** len(target), nsimple * max(1, r_max)), "tensor rank search")
    return _bfs_word_length(target, _simple_codes(t.dims, p), p, r_max)


def _power_codes(n: int, d: int, p: int) -> np.ndarray:
    rows = set()
    for ell in itertools.product(range(p), repeat=n):
        if any(ell):
            coords = power_of_linear(list(ell), d).coordinates()
            rows.add(tuple(int(c) % p for c in coords))
    return np.array(sorted(rows), dtype=np.int64)


def brute_wrank(f: HomogPoly, r_max: int, p: int) -> Optional[int]:
    """Exact Waring rank over F_p (p > d) if at most ``r_max``, else ``None``.

    Simples are the d-th powers of linear forms themselves, no extra scalars.
    """
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if p <= f.d:
        raise CharacteristicError(f"Waring rank over F_{p} needs p > d = {f.d}")
    target = []
    for c in f.coordinates():
        if isinstance(c, Fp):
            target.append(c.value)
        else:
            q = to_rational(c)
            target.append(q.numerator * pow(q.denominator, -1, p) % p)
    _guard(min(p ** len(target), (p ** f.n) * max(1, r_max)), "Waring rank search")
    return _bfs_word_length(tuple(target), _power_codes(f.n, f.d, p), p, r_max)


def exhaustive_potency(phi: RankMethod, p: int, rank_table: Optional[np.ndarray] = None
                       ) -> PotencyEstimate:
    """Exact potency of ``phi`` reduced mod p, over all of F_p^N.

    Matrix targets use rank mod p; other tensor targets need a precomputed
    :func:`trank_table` for the target dims.
    """
    src = phi.source
    N = src.dimension
    _guard(p ** N, "exhaustive potency")
    M = _residue_matrix(phi.matrix, p)
    tgt = phi.target
    if not tgt.is_matrix_space and rank_table is None:
        raise OracleUnavailableError("non-matrix target needs a rank table")
    powers = p ** np.arange(tgt.dimension - 1, -1, -1, dtype=np.int64)

    def ranks(vectors: np.ndarray) -> np.ndarray:
        images = (vectors @ M.T) % p
        if tgt.is_matrix_space:
            r, c = tgt.shape
            return np.array([rank_mod_p(img.reshape(r, c).tolist(), p) for img in images])
        return rank_table[images @ powers]

    all_v = np.array(list(itertools.product(range(p), repeat=N)), dtype=np.int64)
    mu_space = int(ranks(all_v).max())
    if src.kind == "tensor":
        simples = _simple_codes(src.shape, p)
    else:
        simples = _power_codes(*src.shape, p)
    mu_simples = int(ranks(simples).max()) if len(simples) else 0
    return PotencyEstimate(mu_space, mu_simples)


@dataclass(frozen=True)
class RankCertificate:
    element_id: str
    rank: int
    mu_simples: int
    lower_bound: int

    def to_json(self) -> dict:
        return {"element": self.element_id, "target_rank": self.rank,
                "mu_simples": self.mu_simples, "lower_bound": self.lower_bound}


def lower_bound_certificate(phi: RankMethod, v, mu_simples: int, element_id: str = "v",
                            rank_oracle: Optional[Callable] = None) -> RankCertificate:
    """rk_S(v) >= ceil(rank(phi(v)) / mu_phi(S))."""
    if mu_simples <= 0:
        raise DegenerateMethodError("mu on simples must be positive")
    r = _coords_rank(phi.target, phi.matrix.mul_vec(phi.source.coords(v)), rank_oracle)
    return RankCertificate(element_id, r, mu_simples, ceil(Fraction(r, mu_simples)))


# ---------------------------------------------------------------------------
# named tensors used throughout the tests and the CLI
# ---------------------------------------------------------------------------

def matmul_tensor(a: int, b: int, c: int) -> Tensor:
    """<a,b,c>: sum of e_{ij} x e_{jk} x e_{ki} in (ab, bc, ca)."""
    dims = (a * b, b * c, c * a)
    t = [Fraction(0)] * prod(dims)
    for i in range(a):
        for j in range(b):
            for k in range(c):
                x, y, z = i * b + j, j * c + k, k * a + i
                t[(x * dims[1] + y) * dims[2] + z] += 1
    return Tensor(dims, tuple(t))


def w_tensor() -> Tensor:
    """e0e0e1 + e0e1e0 + e1e0e0 in (2,2,2)."""
    return Tensor.from_function((2, 2, 2), lambda ix: Fraction(int(sum(ix) == 1)))


def diagonal_tensor(n: int, d: int = 3) -> Tensor:
    return Tensor.from_function((n,) * d, lambda ix: Fraction(int(len(set(ix)) == 1)))
