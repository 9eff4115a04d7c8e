"""Command-line interface: one JSON (or CSV) record per query."""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional

from . import __version__
from .digraph import shortest_path_space
from .errors import DualPathMismatch, RHomotopyError, SearchBudgetExceeded
from .formats import parse_digraph, parse_matrix, parse_points
from .generators import generate
from .intervals import BELOW_EQ, format_interval, parse_interval
from .linalg import Coefficients
from .minimal_model import DEFAULT_BUDGET, jumping_points, minimal_model
from .space import DEFAULT_TAU, QMetSpace, is_inf, verify_homotopy_chain
from .spectral import (
    CE_PAGE_FORMULA,
    IMAGE_FORMULA,
    PLAIN_HOMOLOGY,
    magnitude_homology,
    mpss_page,
    mpss_page_ce,
    persistent_sh,
    reachability_homology,
    sh,
)

SCHEMA = 1
COMMANDS = (
    "validate", "minimal-model", "jumping-points", "nested-models", "magnitude",
    "path-homology", "reachability", "spectral", "persistence", "mpss", "verify",
)
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return "inf" if is_inf(v) else v
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


# --- input -----------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_space(args) -> Optional[QMetSpace]:
    if args.matrix:
        return parse_matrix(_read(args.matrix), tau=args.tau)
    if args.digraph:
        return shortest_path_space(parse_digraph(_read(args.digraph)))
    if args.points:
        return parse_points(_read(args.points), args.metric, tau=args.tau)
    if args.generate:
        params = {}
        for item in args.param or []:
            key, sep, value = item.partition("=")
            if not sep:
                raise UsageError(f"--param expects key=value, got {item!r}")
            params[key] = value
        params.setdefault("tau", args.tau)
        return generate(args.generate, params)
    return None


def number_parser(X: QMetSpace, snaps: Optional[list] = None) -> Callable[[str], object]:
    """Backend-aware number reader.

    Float spaces: decimals that agree with exactly one achieved distance up
    to the printed precision are snapped to it, and the snap is recorded.
    Exact spaces: decimals are read as exact fractions.
    """
    achieved = X.finite_values() if X.backend == "float" else []

    def number(text: str):
        t = text.strip()
        if X.backend != "float":
            try:
                v = Fraction(t)
            except ValueError:
                raise UsageError(f"cannot read {text!r} as an exact number") from None
            return int(v) if v.denominator == 1 else v
        try:
            v = float(Fraction(t)) if "/" in t else float(t)
        except ValueError:
            raise UsageError(f"cannot read {text!r} as a number") from None
        if "." in t and "e" not in t.lower() and snaps is not None:
            decimals = len(t.split(".", 1)[1])
            half = 0.5 * 10.0 ** (-decimals)
            near = [c for c in achieved if abs(c - v) <= half]
            if len(near) == 1 and near[0] != v:
                snaps.append({"from": t, "to": near[0]})
                return near[0]
        return v

    return number


def _intervals(args, X, snaps):
    number = number_parser(X, snaps)
    if not args.interval:
        raise UsageError("this command needs at least one --interval")
    return [parse_interval(text, number) for text in args.interval]


def _radius(args, X, snaps):
    if args.r is None:
        raise UsageError("this command needs --r")
    r = number_parser(X, snaps)(args.r)
    if r < 0:
        raise UsageError("--r must be nonnegative")
    return r


def _coefficients(args) -> Coefficients:
    try:
        return Coefficients.parse(args.coeff, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- parallel helpers (top level so they pickle) -------------------------

def _spectral_task(task):
    X, r, n, I, coeff, bound = task
    t0 = time.perf_counter()
    res = sh(X, r, n, I, coeff, bound)
    return res.rank, list(res.torsion), res.provenance, time.perf_counter() - t0


def _map(fn, tasks, jobs):
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


# --- commands --------------------------------------------------------------

def record(command, query, result, provenance, wall_time):
    return {
        "schema": SCHEMA,
        "command": command,
        "query": jsonable(query),
        "result": jsonable(result),
        "provenance": provenance,
        "wall_time": round(wall_time, 6),
        "version": __version__,
    }


def _labels(X, idx):
    return [X.labels[i] for i in idx]


def cmd_validate(args, X):
    t0 = time.perf_counter()
    result = {
        "points": len(X),
        "backend": X.backend,
        "symmetric": X.is_symmetric(),
        "distinct_distances": len(X.finite_values()),
    }
    return [record("validate", {}, result, "validator", time.perf_counter() - t0)], EXIT_OK


def cmd_minimal_model(args, X):
    snaps = []
    r = _radius(args, X, snaps)
    t0 = time.perf_counter()
    res = minimal_model(X, r, budget=args.budget, seed=args.seed)
    result = {
        "subset": _labels(X, res.subset),
        "size": len(res.subset),
        "retraction": [res.model.labels[v] for v in res.retraction.assignment],
        "certificate_length": len(res.certificate),
        "certificate_valid": verify_homotopy_chain(res.certificate),
    }
    status = EXIT_OK if result["certificate_valid"] else EXIT_MISMATCH
    q = {"r": r, "snapped": snaps} if snaps else {"r": r}
    return [record("minimal-model", q, result, "search", time.perf_counter() - t0)], status


def cmd_jumping_points(args, X):
    t0 = time.perf_counter()
    jp = jumping_points(X, budget=args.budget, seed=args.seed, verify=args.verify)
    result = {
        "points": list(jp.points),
        "model_sizes": [len(X)] + list(jp.model_sizes),
        "ratios": [str(f) for f in jp.ratios],
        "merged": [list(g) for g in jp.merged],
    }
    return [record("jumping-points", {"verify": args.verify}, result, "search", time.perf_counter() - t0)], EXIT_OK


def cmd_nested_models(args, X):
    t0 = time.perf_counter()
    jp = jumping_points(X, budget=args.budget, seed=args.seed)
    models = [{"r": p, "subset": _labels(X, m.subset)} for p, m in zip(jp.points, jp.models)]
    return [record("nested-models", {}, {"models": models}, "search", time.perf_counter() - t0)], EXIT_OK


def _require_n(args):
    if args.n is None:
        raise UsageError("this command needs --n")
    return args.n


def cmd_magnitude(args, X):
    n = _require_n(args)
    snaps = []
    coeff = Coefficients.parse(args.coeff, args.p) if args.coeff != "Q" else Coefficients("Z")
    out = []
    for I in _intervals(args, X, snaps):
        if not (I.R.kind == BELOW_EQ and I.L.a == I.R.a):
            raise UsageError("magnitude homology takes singleton intervals {l}")
        t0 = time.perf_counter()
        h = magnitude_homology(X, n, I.R.a, coeff)
        q = {"n": n, "interval": format_interval(I), "coefficients": str(coeff)}
        if snaps:
            q["snapped"] = snaps
        out.append(record("magnitude", q, {"rank": h.rank, "torsion": list(h.torsion)}, PLAIN_HOMOLOGY,
                          time.perf_counter() - t0))
    return out, EXIT_OK


def cmd_path_homology(args, X):
    n = _require_n(args)
    t0 = time.perf_counter()
    a, b = mpss_page(X, 2, n, n), mpss_page_ce(X, 2, n, n)
    result = {"rank": a, "ce_rank": b}
    status = EXIT_OK if a == b else EXIT_MISMATCH
    return [record("path-homology", {"n": n}, result, f"{IMAGE_FORMULA}+{CE_PAGE_FORMULA}",
                   time.perf_counter() - t0)], status


def cmd_reachability(args, X):
    n = _require_n(args)
    if args.degree_bound is None:
        raise UsageError("reachability needs an explicit --degree-bound (at least n+1)")
    t0 = time.perf_counter()
    h = reachability_homology(X, n, args.degree_bound, Coefficients.parse(args.coeff, args.p)
                              if args.coeff != "Q" else Coefficients("Z"))
    q = {"n": n, "degree_bound": args.degree_bound}
    return [record("reachability", q, {"rank": h.rank, "torsion": list(h.torsion)}, PLAIN_HOMOLOGY,
                   time.perf_counter() - t0)], EXIT_OK


def cmd_spectral(args, X):
    n = _require_n(args)
    snaps = []
    r = _radius(args, X, snaps)
    coeff = _coefficients(args)
    intervals = _intervals(args, X, snaps)
    tasks = [(X, r, n, I, coeff, args.degree_bound) for I in intervals]
    out = []
    for I, (rank, torsion, prov, wall) in zip(intervals, _map(_spectral_task, tasks, args.jobs)):
        q = {"r": r, "n": n, "interval": format_interval(I), "coefficients": str(coeff),
             "degree_bound": args.degree_bound}
        if snaps:
            q["snapped"] = snaps
        out.append(record("spectral", q, {"rank": rank, "torsion": torsion}, prov, wall))
    return out, EXIT_OK


def cmd_persistence(args, X):
    n = _require_n(args)
    snaps = []
    r = _radius(args, X, snaps) if args.r is not None else X.coerce(0)
    t0 = time.perf_counter()
    dgm = persistent_sh(X, r, n, _coefficients(args))
    result = {"bars": [list(b) for b in dgm.bars], "axis": list(dgm.axis), "ranks": list(dgm.ranks)}
    return [record("persistence", {"r": r, "n": n}, result, IMAGE_FORMULA, time.perf_counter() - t0)], EXIT_OK


def cmd_mpss(args, X):
    page = args.page
    if args.interval:
        ells = []
        for I in _intervals(args, X, None):
            if not (I.R.kind == BELOW_EQ and I.L.a == I.R.a):
                raise UsageError("page queries take singleton intervals {l}")
            ells.append(I.R.a)
    else:
        ells = list(range(args.max_ell + 1))
    degrees = [args.n] if args.n is not None else list(range(args.max_n + 1))
    out, status = [], EXIT_OK
    for n in degrees:
        for ell in ells:
            t0 = time.perf_counter()
            a, b = mpss_page(X, page, n, ell), mpss_page_ce(X, page, n, ell)
            if a != b:
                status = EXIT_MISMATCH
            out.append(record("mpss", {"page": page, "n": n, "l": ell}, {"rank": a, "ce_rank": b},
                              f"{IMAGE_FORMULA}+{CE_PAGE_FORMULA}", time.perf_counter() - t0))
    return out, status


def cmd_verify(args, X):
    from .generators import named_digraph
    from .verify import run_all

    targets = [("input", X)] if X is not None else [
        (name, shortest_path_space(named_digraph(name))) for name in ("lev", "pentagon", "diamond")
    ]
    out, status = [], EXIT_OK
    for name, space in targets:
        t0 = time.perf_counter()
        checks = run_all(space)
        failed = [c for c in checks if not c.ok]
        if failed:
            status = EXIT_MISMATCH
        suites = sorted({c.suite for c in checks})
        result = {
            "checks": len(checks),
            "failed": len(failed),
            "suites": {s: sum(1 for c in checks if c.suite == s) for s in suites},
            "failures": [{"suite": c.suite, "name": c.name, "detail": c.detail} for c in failed],
        }
        out.append(record("verify", {"target": name}, result, "dual-path", time.perf_counter() - t0))
    return out, status


HANDLERS = {
    "validate": cmd_validate,
    "minimal-model": cmd_minimal_model,
    "jumping-points": cmd_jumping_points,
    "nested-models": cmd_nested_models,
    "magnitude": cmd_magnitude,
    "path-homology": cmd_path_homology,
    "reachability": cmd_reachability,
    "spectral": cmd_spectral,
    "persistence": cmd_persistence,
    "mpss": cmd_mpss,
    "verify": cmd_verify,
}


# --- output ----------------------------------------------------------------

def write_csv(records, stream):
    if not records:
        return
    command = records[0]["command"]
    w = csv.writer(stream, lineterminator="\n")
    if command == "persistence":
        w.writerow(["n", "r", "birth", "death"])
        for rec in records:
            for b, d in rec["result"]["bars"]:
                w.writerow([rec["query"]["n"], rec["query"]["r"], b, d])
        return
    keys_q = list(records[0]["query"].keys())
    keys_r = [k for k, v in records[0]["result"].items() if not isinstance(v, (dict, list)) or k == "torsion"]
    w.writerow(keys_q + keys_r + ["provenance"])
    for rec in records:
        row = [rec["query"].get(k) for k in keys_q]
        for k in keys_r:
            v = rec["result"].get(k)
            row.append(";".join(map(str, v)) if isinstance(v, list) else v)
        w.writerow(row + [rec["provenance"]])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rhomotopy", description="r-homotopy invariants of finite quasimetric spaces")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--matrix", metavar="FILE", help="distance matrix ('-' for stdin)")
    src.add_argument("--digraph", metavar="FILE", help="edge list, one 'u v' per line")
    src.add_argument("--points", metavar="FILE", help="point cloud, one point per line")
    src.add_argument("--generate", metavar="KIND",
                     help="circle_arc, circle, grid, cycle, discontinuity, lev, pentagon, diamond, double-diamond")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="generator parameter (repeatable)")
    p.add_argument("--metric", default="euclidean", choices=("euclidean", "manhattan", "chebyshev"))
    p.add_argument("--r", help="homotopy radius")
    p.add_argument("--n", type=int, help="homological degree")
    p.add_argument("--interval", action="append", help="interval such as '{1}', '[0,2)', '(-inf,3]' or R")
    p.add_argument("--coeff", default="Q", help="Z, Q or Fp")
    p.add_argument("--p", type=int, help="prime for --coeff Fp")
    p.add_argument("--degree-bound", type=int, help="highest degree to materialize")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.add_argument("--tau", type=float, default=DEFAULT_TAU, help="float grouping tolerance")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent queries")
    p.add_argument("--seed", type=int, help="randomize search order")
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--verify", action="store_true", help="jumping-points: also probe the plateaus")
    p.add_argument("--page", type=int, default=2, help="mpss: page number s >= 1")
    p.add_argument("--max-n", type=int, default=2, help="mpss: highest degree")
    p.add_argument("--max-ell", type=int, default=5, help="mpss: highest level")
    return p


def main(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        X = load_space(args)
        if X is None and args.command != "verify":
            raise UsageError("no input: pass --matrix, --digraph, --points or --generate")
        records, status = HANDLERS[args.command](args, X)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DualPathMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UsageError, RHomotopyError, OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv":
        write_csv(records, stdout)
    else:
        for rec in records:
            stdout.write(json.dumps(rec, ensure_ascii=False) + "\n")
    stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
