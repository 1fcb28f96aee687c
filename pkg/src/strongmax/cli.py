"""Command-line front end.

Subcommands: maximal, weights, cover, verify, demo. All outputs are
deterministic for a fixed configuration and seed: report files contain no
timestamps (wall-clock metadata goes to a separate `<out>.meta.json`
sidecar that is excluded from any comparison/hash). Validation or parse
errors print a machine-readable JSON object to stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from . import verify as verify_mod
from .covering import RectFamily, cf_select, scattered_select
from .grid import Basis, GridFunction, Rect, read_grid, write_grid
from .maximal import MaximalQuery, multilinear_fractional_maximal
from .verify import VerificationReport, _jsonify
from .weights import (
    WeightVector,
    a_infty_classify,
    ap_constant,
    multi_weight_constant_ap,
    multi_weight_constant_apq,
    power_bump_check,
    reverse_doubling_constant,
    tauberian_constant_estimate,
)


class CliError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="strongmax",
        description="Discrete-grid maximal operators, Orlicz calculus, and "
                    "rectangle weight classes.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, grids: bool = True):
        if grids:
            p.add_argument("--grid", action="append", default=[],
                           help="input grid file (repeatable)")
        p.add_argument("--basis", choices=["all", "dyadic", "cubes"], default="all")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("maximal", help="evaluate the multilinear fractional maximal")
    common(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--alpha", type=float, default=0.0)

    p = sub.add_parser("weights", help="weight-class constants and classifications")
    common(p)
    p.add_argument("--class", dest="klass", required=True,
                   choices=["ap", "apq", "apvec", "ainfty", "rd", "tauberian", "bump"])
    p.add_argument("--p", type=float, action="append", default=[],
                   help="exponent p_i (repeatable for multi-weight classes)")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--r", type=float, default=1.5)
    p.add_argument("--gamma", type=float, default=0.5)

    p = sub.add_parser("cover", help="rectangle selection algorithms")
    common(p)
    p.add_argument("--rects", default=None,
                   help="JSON file with [{'lo': [...], 'hi': [...]}, ...]; "
                        "omitted: random rectangles from the seed")
    p.add_argument("--count", type=int, default=50,
                   help="random family size when --rects is omitted")
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)

    p = sub.add_parser("verify", help="run theorem verification checks")
    common(p, grids=False)
    p.add_argument("--theorem", action="append", default=None,
                   help=f"selector (repeatable); available: {', '.join(verify_mod.JOBS)}")

    p = sub.add_parser("demo", help="counterexample + endpoint walkthrough")
    common(p, grids=False)
    return top


def _load_grids(paths: list[str], need: int | None = None) -> list[GridFunction]:
    if not paths:
        raise CliError("at least one --grid is required")
    grids = [read_grid(p) for p in paths]
    for g in grids:
        if g.values.size == 0:
            raise CliError(f"empty grid input: degenerate")
    if need is not None and len(grids) != need:
        raise CliError(f"expected {need} grid(s), got {len(grids)}")
    return grids


def _emit(payload: dict, args, default_name: str) -> None:
    """Write the report deterministically; timestamps go to a sidecar."""
    if args.format == "csv":
        text = _to_csv(payload)
    else:
        text = json.dumps(payload, sort_keys=True, indent=2, default=_jsonify) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        with open(args.out + ".meta.json", "w") as fh:
            json.dump({"written_at_unix": time.time(), "command": default_name}, fh)
    else:
        sys.stdout.write(text)


def _to_csv(payload: dict) -> str:
    """Flatten report rows to (name, lhs, rhs, ratio, passed) CSV series."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["name", "lhs", "rhs", "ratio", "passed"])

    def rows(name: str, obj):
        if isinstance(obj, dict) and {"lhs", "rhs"} <= set(obj):
            w.writerow([name, obj.get("lhs"), obj.get("rhs"),
                        obj.get("ratio"), obj.get("passed")])
            return
        if isinstance(obj, dict):
            for k in sorted(obj):
                rows(f"{name}/{k}" if name else str(k), obj[k])
            return
        w.writerow([name, "", "", obj, ""])

    rows("", payload)
    return buf.getvalue()


def _cmd_maximal(args) -> int:
    grids = _load_grids(args.grid)
    m = args.m
    if len(grids) == 1 and m > 1:
        grids = grids * m
    query = MaximalQuery(basis=Basis(args.basis), alpha=args.alpha, m=m)
    out = multilinear_fractional_maximal(grids, query)
    if args.out:
        write_grid(out, args.out)
    else:
        sys.stdout.write(" ".join(repr(float(v)) for v in out.values.ravel()) + "\n")
    return 0


def _cmd_weights(args) -> int:
    grids = _load_grids(args.grid)
    basis = Basis(args.basis)
    ps = args.p or [2.0] * len(grids)
    payload: dict = {"class": args.klass, "basis": args.basis}
    if args.klass == "ap":
        (w,) = _load_grids(args.grid, need=1)
        c, witness = ap_constant(w, ps[0], basis, return_witness=True)
        payload.update({"constant_or_bound": c, "witness_rect": witness, "p": ps[0]})
    elif args.klass in ("apq", "apvec"):
        wv = WeightVector(tuple(grids), tuple(ps), q=args.q, alpha=args.alpha)
        fn = multi_weight_constant_apq if args.klass == "apq" else multi_weight_constant_ap
        payload.update({"constant_or_bound": fn(wv, basis),
                        "ps": ps, "q": args.q, "alpha": args.alpha})
    elif args.klass == "ainfty":
        (w,) = _load_grids(args.grid, need=1)
        rep = a_infty_classify(w, rng=np.random.default_rng(args.seed))
        payload.update({
            "classification": rep.classification,
            "passes": rep.passes,
            "witness_rect": rep.witness_axis,
            "scale_profile": [
                {"axis": fam["axis"], "points": fam["points"]} for fam in rep.families
            ],
        })
    elif args.klass == "rd":
        (w,) = _load_grids(args.grid, need=1)
        payload["constant_or_bound"] = reverse_doubling_constant(w)
    elif args.klass == "tauberian":
        (w,) = _load_grids(args.grid, need=1)
        rep = tauberian_constant_estimate(w, basis, args.gamma, seed=args.seed)
        payload.update({"constant_or_bound": rep.max_ratio,
                        "witness_rect": rep.witness, "gamma": args.gamma,
                        "note": "certified lower bound over structured + random sets"})
    elif args.klass == "bump":
        if len(grids) < 2:
            raise CliError("bump needs m weight grids plus v as the last --grid")
        *ws, v = grids
        wv = WeightVector(tuple(ws), tuple(ps[: len(ws)]), q=args.q, alpha=args.alpha)
        rep = power_bump_check(wv, v, args.r, basis)
        payload.update({"constant_or_bound": rep["constant"],
                        "witness_rect": rep["witness"], "r": args.r})
    _emit(payload, args, "weights")
    return 0


def _parse_rects(path: str) -> list[Rect]:
    with open(path) as fh:
        raw = json.load(fh)
    return [Rect(tuple(r["lo"]), tuple(r["hi"])) for r in raw]


def _cmd_cover(args) -> int:
    grids = _load_grids(args.grid)
    w = grids[0]
    if args.rects:
        rects = _parse_rects(args.rects)
    else:
        rng = np.random.default_rng(args.seed)
        rects = []
        for _ in range(args.count):
            lo = [int(rng.integers(0, s)) for s in w.shape]
            hi = [int(rng.integers(l, s)) for l, s in zip(lo, w.shape)]
            rects.append(Rect(tuple(lo), tuple(hi)))
    fam = RectFamily(w.shape, w.cell_size, tuple(rects))
    sel = cf_select(fam, args.theta)
    sc = scattered_select(fam, args.lam, w)
    payload = {
        "cf": {
            "kept": sel.kept,
            "c_emp": sel.c_emp,
            "union_before": sel.union_before,
            "union_after": sel.union_after,
            "packing": sel.packing,
            "scattered_check": sel.scattered_check,
        },
        "scattered": {
            "kept": sc.kept,
            "scattered_check": sc.scattered_check,
            "chain_constant": sc.chain_constant,
        },
        "theta": args.theta,
        "lambda": args.lam,
    }
    _emit(payload, args, "cover")
    return 0


def _cmd_verify(args) -> int:
    reports = verify_mod.run_all(seed=args.seed, theorems=args.theorem)
    payload = {name: rep.to_dict() for name, rep in sorted(reports.items())}
    _emit(payload, args, "verify")
    failed = [n for n, r in reports.items() if r.skipped is None and r.passed is False]
    return 1 if failed else 0


def _cmd_demo(args) -> int:
    rep35 = verify_mod.prop35_counterexample()
    # endpoint walkthrough: unit indicator, m = 1, alpha = 0, n = 1
    n_cells = 512
    h = 4.0 / n_cells
    vals = np.zeros(n_cells)
    lo = int(1.5 / h)
    vals[lo : lo + int(1.0 / h)] = 1.0
    f = GridFunction((n_cells,), (h,), vals)
    rep_end = verify_mod.endpoint_check([f], 0.5)

    rows = [
        ("rd-vs-a-infty counterexample", "", "", "PASS" if rep35.passed else "FAIL"),
    ]
    for nkey, det in sorted(rep35.stats.items()):
        rows.append((f"  reverse doubling ({nkey})", f"{det['reverse_doubling']:.4f}",
                     f">= {det['rd_bound']:.1f}", "ok"))
        rows.append((f"  A-infty fails ({nkey})", str(det["a_infty_fails"]), "True", "ok"))
    rows.append(("endpoint: unit indicator, lam=1/2",
                 f"lhs={rep_end.lhs:.6f}", f"rhs={rep_end.rhs:.6f}",
                 f"ratio={rep_end.ratio:.4f}"))
    width = max(len(r[0]) for r in rows) + 2
    lines = [f"{r[0]:<{width}}{r[1]:>16}{r[2]:>16}{r[3]:>14}" for r in rows]
    table = "\n".join(lines) + "\n"
    sys.stdout.write(table)
    if args.out:
        payload = {"counterexample": rep35.to_dict(), "endpoint": rep_end.to_dict()}
        _emit(payload, args, "demo")
    return 0 if (rep35.passed and rep_end.passed) else 1


_COMMANDS = {
    "maximal": _cmd_maximal,
    "weights": _cmd_weights,
    "cover": _cmd_cover,
    "verify": _cmd_verify,
    "demo": _cmd_demo,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except Exception as exc:  # argument/validation/IO errors -> JSON on stderr
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
