"""Closed-form potency bounds for rank methods, as exact integers.

Every calculator is a plain function; :data:`FORMULAS` maps the CLI's formula
ids onto them together with the parameters they take.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import Callable, Sequence

from . import grading
from .errors import DomainError

__all__ = [
    "BoundReport", "FORMULAS", "report", "pot_bound_matrix_tensor", "pot_bound_matrix_waring",
    "pot_bound_Tk_tensor", "pot_bound_Tk_waring", "pot_bound_Wk_tensor",
    "pot_bound_Wk_waring", "basic_subspace_bound", "improved_waring_bound",
    "improved_tensor_bound", "triple_bound", "smh_bound", "border_pot_bound_Tk_tensor",
    "border_pot_bound_Tk_waring", "trivial_flattening_potency", "trivial_Tk_potency",
    "lifting_exponent", "n_degree",
]


def _need(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def lifting_exponent(d: int, k: int) -> int:
    """floor((k-1) d / k)."""
    return (k - 1) * d // k


def trivial_flattening_potency(n: int, d: int) -> int:
    """Potency n^floor(d/2) of the balanced flattening."""
    _need(n >= 1 and d >= 1, "need n, d >= 1")
    return n ** (d // 2)


def trivial_Tk_potency(n: int, d: int, k: int) -> int:
    """Order of the trivial grouping into k blocks, n^floor((k-1)d/k)."""
    _need(n >= 1 and d >= 1 and k >= 2, "need n, d >= 1 and k >= 2")
    return n ** lifting_exponent(d, k)


def pot_bound_matrix_tensor(n: int, d: int) -> int:
    _need(n >= 1 and d >= 1, "need n, d >= 1")
    return 2 ** d * n ** (d // 2)


def pot_bound_matrix_waring(n: int, d: int) -> int:
    _need(n >= 1 and d >= 1, "need n, d >= 1")
    return grading.Y(n, d) + grading.Z(n, d)


def pot_bound_Tk_tensor(n: int, d: int, k: int) -> int:
    _need(n >= 1 and d >= 1 and k >= 2, "need n, d >= 1 and k >= 2")
    return k ** d * n ** lifting_exponent(d, k)


def pot_bound_Tk_waring(n: int, d: int, k: int) -> int:
    """Sum of upsilon(mu, n) over all weak compositions mu of d into k parts."""
    _need(n >= 1 and d >= 1 and k >= 2, "need n, d >= 1 and k >= 2")
    return sum(grading.upsilon(mu, n) for mu in grading.enumerate_Pp(d, k))


def pot_bound_Wk_tensor(n: int, d: int, k: int) -> int:
    return 2 ** (k - 1) * pot_bound_Tk_tensor(n, d, k)


def pot_bound_Wk_waring(n: int, d: int, k: int) -> int:
    return 2 ** (k - 1) * pot_bound_Tk_waring(n, d, k)


def basic_subspace_bound(dims: Sequence[int]) -> int:
    """Rank bound for a basic subspace: min over p of prod_{i != p} dims[i]."""
    _need(len(dims) >= 2, "need at least two factors")
    _need(all(x >= 0 for x in dims), "dimensions must be nonnegative")
    return min(prod(dims[:p]) * prod(dims[p + 1:]) for p in range(len(dims)))


def improved_waring_bound(n_plus_1: int, d: int) -> int:
    """N(n+1, d) for degree-d forms in n+1 variables."""
    _need(n_plus_1 >= 1 and d >= 1, "need n+1 >= 1 and d >= 1")
    n = n_plus_1 - 1
    if d % 2 == 1:
        k = (d - 1) // 2
        return 2 * comb(n + k, k)
    k = (d - 2) // 2
    return comb(n + k, k) + comb(n + k + 1, k + 1)


def improved_tensor_bound(n_plus_1: int, d: int) -> int:
    """M(n+1, d) for tensors in Ten(n+1, d)."""
    _need(n_plus_1 >= 1 and d >= 2, "need n+1 >= 1 and d >= 2")
    n = n_plus_1 - 1
    h = d // 2
    if d % 2 == 1:
        return 2 * sum(comb(d, i) * n ** i for i in range(h + 1))
    return 2 * sum(comb(d, i) * n ** i for i in range(h)) + comb(d, h) * n ** h


def triple_bound(n1: int, n2: int, n3: int) -> int:
    _need(min(n1, n2, n3) >= 1, "need all dimensions >= 1")
    return 2 * n1 + 2 * n2 + 2 * n3 - 4


def smh_bound(ns: Sequence[int], ds: Sequence[int]) -> int:
    """Y + Z for set-multihomogeneous rank on P(n_1+1, d_1) x ... x P(n_k+1, d_k)."""
    _need(len(ns) == len(ds) and len(ns) >= 1, "need equal-length nonempty vectors")
    d = sum(ds)
    return (grading.count_smh_monomials(ns, ds, d // 2)
            + grading.count_smh_monomials(ns, ds, d - d // 2 - 1))


def border_pot_bound_Tk_tensor(n: int, d: int, k: int) -> int:
    # the border-rank barrier has the same form as the rank barrier
    return pot_bound_Tk_tensor(n, d, k)


def border_pot_bound_Tk_waring(n: int, d: int, k: int) -> int:
    return pot_bound_Tk_waring(n, d, k)


def n_degree(f: Callable[[int], int], max_degree: int = 64) -> int:
    """Degree in n of a polynomial-in-n calculator, by finite differences.

    Evaluates at n = 1 .. max_degree + 2; the highest nonvanishing difference
    order is the degree.
    """
    values = [f(n) for n in range(1, max_degree + 3)]
    degree = 0
    order = 0
    while len(values) > 1:
        if any(values):
            degree = order
        values = [b - a for a, b in zip(values, values[1:])]
        order += 1
    if any(values):
        degree = order
    return degree


@dataclass
class BoundReport:
    formula: str
    params: dict
    value: int
    provenance: str

    def to_json(self) -> dict:
        return {"formula": self.formula, "params": self.params, "value": str(self.value),
                "provenance": self.provenance}


# id -> (function, parameter names, provenance)
FORMULAS = {
    "matrix-tensor": (pot_bound_matrix_tensor, ("n", "d"), "matrix-rank barrier, tensor rank"),
    "matrix-waring": (pot_bound_matrix_waring, ("n", "d"), "matrix-rank barrier, Waring rank"),
    "tk-tensor": (pot_bound_Tk_tensor, ("n", "d", "k"), "T_k barrier, tensor rank"),
    "tk-waring": (pot_bound_Tk_waring, ("n", "d", "k"), "T_k barrier, Waring rank (upsilon sum)"),
    "wk-tensor": (pot_bound_Wk_tensor, ("n", "d", "k"), "W_k barrier, tensor rank"),
    "wk-waring": (pot_bound_Wk_waring, ("n", "d", "k"), "W_k barrier, Waring rank"),
    "border-tk-tensor": (border_pot_bound_Tk_tensor, ("n", "d", "k"), "border T_k barrier, tensors"),
    "border-tk-waring": (border_pot_bound_Tk_waring, ("n", "d", "k"), "border T_k barrier, Waring"),
    "improved-waring": (improved_waring_bound, ("n_plus_1", "d"), "N(n+1,d), cactus-matching"),
    "improved-tensor": (improved_tensor_bound, ("n_plus_1", "d"), "M(n+1,d), cactus-matching"),
    "triple": (triple_bound, ("n1", "n2", "n3"), "2n1+2n2+2n3-4"),
    "basic-subspace": (basic_subspace_bound, ("dims",), "basic subspace rank bound"),
    "smh": (smh_bound, ("ns", "ds"), "set-multihomogeneous Y+Z"),
    "trivial-flattening": (trivial_flattening_potency, ("n", "d"), "balanced flattening"),
    "trivial-tk": (trivial_Tk_potency, ("n", "d", "k"), "trivial k-block grouping"),
}


def report(formula: str, **params) -> BoundReport:
    try:
        fn, names, provenance = FORMULAS[formula]
    except KeyError:
        raise DomainError(f"unknown formula {formula!r}; choose from {sorted(FORMULAS)}") from None
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise DomainError(f"formula {formula} needs parameters {missing}")
    args = [params[p] for p in names]
    value = fn(*args)
    return BoundReport(formula, {p: params[p] for p in names}, value, provenance)
