"""Command-line front end: ``rankbarriers <subcommand> ...``.

Every run prints one JSON object on stdout.  Numbers are strings ("p/q")
so exactness survives the trip.  Exit status: 0 success, 2 validation
error, 1 internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import barriers, borderrank, elusive, grading, methods, series, spaces
from .errors import ValidationError
from .exact import Fp, format_rational, mat_rank, parse_rational

SCHEMA_VERSION = "1"


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _s(x) -> str:
    if isinstance(x, Fp):
        return str(x.value)
    if isinstance(x, Fraction):
        return format_rational(x)
    return str(x)


def _load_json(arg: str):
    """Inline JSON, ``@path``, or a path to an existing file."""
    text = arg
    if arg.startswith("@"):
        path = arg[1:]
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
    elif not arg.lstrip().startswith(("{", "[")) and os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _rational_list(text: str) -> list:
    return [parse_rational(x.strip()) for x in text.split(",") if x.strip()]


def _named_tensor(spec: str) -> spaces.Tensor:
    name, _, args = spec.partition(":")
    if name == "w":
        return methods.w_tensor()
    if name == "matmul":
        a, b, c = _int_list(args)
        return methods.matmul_tensor(a, b, c)
    if name == "diagonal":
        vals = _int_list(args)
        return methods.diagonal_tensor(*vals)
    raise UsageError(f"unknown named tensor {spec!r}; use w, matmul:a,b,c or diagonal:n[,d]")


def _tensor_arg(ns) -> spaces.Tensor:
    if getattr(ns, "named", None):
        return _named_tensor(ns.named)
    if getattr(ns, "tensor", None):
        return spaces.Tensor.from_json(_load_json(ns.tensor))
    raise UsageError("give --tensor JSON or --named NAME")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bound(ns) -> dict:
    params = {"n": ns.n, "d": ns.d, "k": ns.k, "n1": ns.n1, "n2": ns.n2, "n3": ns.n3,
              "n_plus_1": ns.n_plus_1,
              "dims": _int_list(ns.dims) if ns.dims else None,
              "ns": _int_list(ns.ns) if ns.ns else None,
              "ds": _int_list(ns.ds) if ns.ds else None}
    rep = barriers.report(ns.formula, **params)
    out = rep.to_json()
    out["params"] = {k: (list(map(_s, v)) if isinstance(v, list) else _s(v))
                     for k, v in out["params"].items()}
    return out


def cmd_flatten_rank(ns) -> dict:
    t = _tensor_arg(ns)
    left = _int_list(ns.left)
    mat = spaces.flatten(t, left)
    rank = mat_rank(mat)
    out = {"dims": list(map(_s, t.dims)), "left": list(map(_s, left)), "rank": _s(rank),
           "certificate": {"mu_simples": "1", "lower_bound": _s(rank)}}
    if ns.sample_potency:
        if len(set(t.dims)) != 1:
            raise UsageError("potency sampling needs equal local dimensions")
        phi = methods.make_flattening_method(t.dims[0], t.degree, left)
        est = methods.measure_potency(phi, trials=ns.trials, bound=ns.bound, seed=ns.seed)
        out["potency_estimate"] = {k: _s(v) for k, v in est.to_json().items()}
        out["seed"] = _s(ns.seed)
    return out


def cmd_glynn(ns) -> dict:
    d = ns.d
    if d < 1:
        raise UsageError("--d must be >= 1")
    terms = spaces.glynn_decompose(d, list(range(d)), d, p=ns.p)
    expanded = spaces.expand_waring(terms, d)
    target = spaces.HomogPoly.monomial((1,) * d)
    if ns.p is not None:
        verified = all((expanded.coefficient(e) - target.coefficient(e)) == 0
                       for e in spaces.monomials(d, d))
    else:
        verified = expanded == target
    return {"d": _s(d), "p": None if ns.p is None else _s(ns.p),
            "count": _s(len(terms)),
            "terms": [{"coeff": _s(c), "form": [_s(x) for x in getattr(f, "coefficients", f)]}
                      for c, f in terms],
            "verified": bool(verified)}


def cmd_comon(ns) -> dict:
    f = spaces.HomogPoly.from_json(_load_json(ns.poly))
    t = spaces.comon_embed(f)
    back = spaces.comon_project(t)
    return {"tensor": t.to_json(), "symmetric": t.is_symmetric(), "round_trip": back == f}


def cmd_brute_rank(ns) -> dict:
    if ns.poly:
        f = spaces.HomogPoly.from_json(_load_json(ns.poly))
        r = methods.brute_wrank(f, ns.r_max, ns.p)
        kind = "waring"
    else:
        t = _tensor_arg(ns)
        r = methods.brute_trank(t, ns.r_max, p=ns.p)
        kind = "tensor"
    return {"kind": kind, "p": _s(ns.p), "r_max": _s(ns.r_max),
            "rank": None if r is None else _s(r),
            "exceeds_r_max": r is None}


def cmd_degenerate(ns) -> dict:
    t = _tensor_arg(ns)
    if ns.action == "verify":
        if ns.witness == "w":
            w = borderrank.w_tensor_witness()
        elif ns.witness:
            w = borderrank.DegenerationWitness.from_json(_load_json(ns.witness))
        else:
            raise UsageError("verify needs --witness JSON (or 'w' for the built-in W witness)")
        return {"verified": borderrank.verify_degeneration(t, w), "r": _s(w.r), "q": _s(w.q)}
    w = borderrank.search_degeneration(t, ns.r, ns.q_max, ns.eps_deg, _rational_list(ns.pool))
    if w is None:
        return {"found": False}
    return {"found": True, "witness": w.to_json(),
            "verified": borderrank.verify_degeneration(t, w)}


def _sqrt_demo(order: int) -> dict:
    z, y = series.Poly.var(0, 2), series.Poly.var(1, 2)
    P = y * y - z
    spec = series.find_regular_center(P)
    p = series.hensel_lift(spec, order)
    L = series.PolyMap(1, [series.Poly.var(0, 1)])
    M = series.PolyMap(1, [series.Poly.var(0, 1) ** 2])
    ok = series.verify_transfer(L, M, [spec.center], [p], order)
    return {"verified": ok, "order": _s(order), "center": [_s(spec.center)],
            "seed": _s(spec.seed), "series": p.to_json()}


def cmd_transfer(ns) -> dict:
    if ns.demo:
        if ns.demo != "sqrt":
            raise UsageError(f"unknown demo {ns.demo!r}")
        return _sqrt_demo(ns.order)
    if ns.lift:
        obj = _load_json(ns.lift)
        try:
            P = series.Poly.from_json(obj["P"])
            if obj.get("center") is None:
                spec = series.find_regular_center(P)
                if spec is None:
                    raise UsageError("no regular integer center found within the budget")
            else:
                spec = series.AlgebraicFunctionSpec(P, parse_rational(str(obj["center"])),
                                                    parse_rational(str(obj["seed"])))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"lift spec needs P, center, seed: {exc}") from None
        p = series.hensel_lift(spec, ns.order)
        return {"center": [_s(spec.center)], "seed": _s(spec.seed), "order": _s(ns.order),
                "series": p.to_json()}
    if ns.spec:
        obj = _load_json(ns.spec)
        try:
            L = series.PolyMap.from_json(obj["L"])
            M = series.PolyMap.from_json(obj["M"])
            c = [parse_rational(str(x)) for x in obj["c"]]
            ps = [series.MultiSeries.from_json(s) if "n" in s else series.UniSeries.from_json(s)
                  for s in obj["p"]]
        except (KeyError, TypeError) as exc:
            raise UsageError(f"transfer spec needs L, M, c, p: {exc}") from None
        ok = series.verify_transfer(L, M, c, ps, ns.order)
        return {"verified": ok, "order": _s(ns.order), "center": [_s(x) for x in c]}
    raise UsageError("give --demo, --lift or --spec")


def cmd_elusive(ns) -> dict:
    if ns.action == "cover":
        targets = _rational_list(ns.targets)
        a = elusive.monomial_cover_feasible(targets, ns.r)
        out = {"targets": [_s(t) for t in targets], "r": _s(ns.r), "feasible": a is not None}
        if a is not None:
            out["assignment"] = a.to_json()
        return out
    if ns.action == "linear":
        polys = _load_json(ns.polys)
        if not isinstance(polys, list) or not all(isinstance(p, list) for p in polys):
            raise UsageError("--polys must be a JSON list of coefficient lists")
        polys = [[parse_rational(str(c)) for c in p] for p in polys]
        return {"elusive": elusive.is_linearly_elusive(polys), "m": _s(len(polys))}
    gens = _rational_list(ns.gens)
    target = parse_rational(ns.target)
    return {"member": elusive.dspan_member(target, gens, ns.d), "target": _s(target),
            "gens": [_s(g) for g in gens], "d": _s(ns.d)}


def cmd_count(ns) -> dict:
    what = ns.what
    if what == "sp":
        items = [[sorted(b) for b in part] for part in grading.enumerate_SP(ns.d, ns.k)]
        return {"what": what, "count": _s(len(items)),
                "items": [[[_s(i) for i in b] for b in part] for part in items]
                if ns.list else None}
    if what == "pp":
        items = grading.enumerate_Pp(ns.d, ns.k)
        return {"what": what, "count": _s(len(items)),
                "items": [[_s(x) for x in mu] for mu in items] if ns.list else None}
    if what == "monomials":
        return {"what": what, "count": _s(grading.count_monomials_leq(ns.n, ns.D))}
    if what == "y":
        return {"what": what, "count": _s(grading.Y(ns.n, ns.d))}
    if what == "z":
        return {"what": what, "count": _s(grading.Z(ns.n, ns.d))}
    if what == "smh":
        return {"what": what, "count": _s(grading.count_smh_monomials(
            _int_list(ns.ns), _int_list(ns.ds), ns.D))}
    if what == "upsilon":
        return {"what": what, "count": _s(grading.upsilon(_int_list(ns.mu), ns.n))}
    raise UsageError(f"unknown count {what!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rankbarriers", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    b = sub.add_parser("bound", help="evaluate a potency bound formula")
    b.add_argument("--formula", required=True, choices=sorted(barriers.FORMULAS))
    for name in ("n", "d", "k", "n1", "n2", "n3"):
        b.add_argument(f"--{name}", type=int)
    b.add_argument("--n-plus-1", dest="n_plus_1", type=int)
    b.add_argument("--dims", help="comma-separated, for basic-subspace")
    b.add_argument("--ns", help="comma-separated block sizes, for smh")
    b.add_argument("--ds", help="comma-separated block degrees, for smh")

    def tensor_source(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--tensor", help="tensor JSON, inline or @file")
        g.add_argument("--named", help="w | matmul:a,b,c | diagonal:n[,d]")

    f = sub.add_parser("flatten-rank", help="rank of a flattening and the implied bound")
    tensor_source(f)
    f.add_argument("--left", required=True, help="0-based factor positions, comma-separated")
    f.add_argument("--sample-potency", action="store_true")
    f.add_argument("--trials", type=int, default=30)
    f.add_argument("--bound", type=int, default=5)
    f.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("glynn", help="Waring decomposition of x_0 ... x_{d-1}")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--p", type=int, default=None, help="work over F_p (p > d)")

    c = sub.add_parser("comon", help="symmetric tensor of a form")
    c.add_argument("--poly", required=True, help="polynomial JSON, inline or @file")

    br = sub.add_parser("brute-rank", help="exact rank over F_p by exhaustive search")
    tensor_source(br)
    br.add_argument("--poly", help="Waring rank of this form instead")
    br.add_argument("--p", type=int, required=True)
    br.add_argument("--r-max", dest="r_max", type=int, default=4)

    dg = sub.add_parser("degenerate", help="verify or search eps-degenerations")
    dg.add_argument("action", choices=["verify", "search"])
    tensor_source(dg)
    dg.add_argument("--witness", help="witness JSON, or 'w' for the built-in W witness")
    dg.add_argument("--r", type=int, default=2)
    dg.add_argument("--q-max", dest="q_max", type=int, default=2)
    dg.add_argument("--eps-deg", dest="eps_deg", type=int, default=1)
    dg.add_argument("--pool", default="0,1,-1")

    t = sub.add_parser("transfer", help="power series lifting and transfer checks")
    t.add_argument("--demo", help="sqrt")
    t.add_argument("--lift", help='{"P": poly in (z,y), "center": c, "seed": b}')
    t.add_argument("--spec", help='{"L": map, "M": map, "c": shift, "p": [series]}')
    t.add_argument("--order", type=int, default=series.DEFAULT_ORDER)

    e = sub.add_parser("elusive", help="toy elusiveness checks")
    e.add_argument("action", choices=["cover", "linear", "dspan"])
    e.add_argument("--targets", default="")
    e.add_argument("--r", type=int, default=1)
    e.add_argument("--polys", default="[]")
    e.add_argument("--target", default="0")
    e.add_argument("--gens", default="")
    e.add_argument("--d", type=int, default=1)

    n = sub.add_parser("count", help="grading enumerations and counts")
    n.add_argument("what", choices=["sp", "pp", "monomials", "y", "z", "smh", "upsilon"])
    n.add_argument("--n", type=int, default=1)
    n.add_argument("--d", type=int, default=1)
    n.add_argument("--k", type=int, default=1)
    n.add_argument("--D", type=int, default=0)
    n.add_argument("--ns", default="")
    n.add_argument("--ds", default="")
    n.add_argument("--mu", default="")
    n.add_argument("--list", action="store_true")
    return p


COMMANDS = {
    "bound": cmd_bound, "flatten-rank": cmd_flatten_rank, "glynn": cmd_glynn,
    "comon": cmd_comon, "brute-rank": cmd_brute_rank, "degenerate": cmd_degenerate,
    "transfer": cmd_transfer, "elusive": cmd_elusive, "count": cmd_count,
}


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """(exit code, JSON-ready dict) for one invocation."""
    try:
        ns = build_parser().parse_args(argv)
        if ns.command is None:
            raise UsageError(f"choose a subcommand: {', '.join(COMMANDS)}")
        payload = COMMANDS[ns.command](ns)
        payload = {"schema_version": SCHEMA_VERSION, "command": ns.command, **payload}
        return 0, payload
    except ValidationError as exc:
        return 2, {"schema_version": SCHEMA_VERSION, "error": str(exc),
                   "kind": type(exc).__name__}
    except Exception as exc:  # noqa: BLE001 - top-level guard
        return 1, {"schema_version": SCHEMA_VERSION, "error": f"internal error: {exc}",
                   "kind": type(exc).__name__}


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, payload = run(argv)
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
