"""Command line: compute, route, check, generate and explore.

Exit codes: 0 success, 1 hypothesis violated, 2 verification failure
(formula and oracle disagree, or an output fails the axioms), 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

from . import __version__
from .errors import (CannotIsolateError, DimensionMismatchError, GDrazinError,
                     HypothesisViolatedError, InfeasibleConfigurationError, ParseError)
from .formulas import ROUTES, route_arity, run_route, target_matrix
from .generator import MAX_DIM, GenConfig, generate_instance, perturb_to_violate
from .hypotheses import HYPOTHESIS_IDS, ROUTE_OF, arity, check_hypothesis, labels
from .matrix import Matrix
from .oracle import drazin, satisfies_axioms
from .scalar import DEFAULT_POLICY, EXACT, FLOAT

EXIT_OK, EXIT_VIOLATED, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _dump(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_matrices(paths, count, mode):
    """Matrices from one file each, or all of them from one file.

    A single file may hold a list of matrix objects or a generator manifest
    with a ``matrices`` mapping.
    """
    objs = []
    for p in paths:
        obj = _read_json(p)
        if isinstance(obj, dict) and "matrices" in obj:
            objs.extend(obj["matrices"].values())
        elif isinstance(obj, list):
            objs.extend(obj)
        else:
            objs.append(obj)
    if len(objs) != count:
        raise _InputError(f"expected {count} matrices, got {len(objs)}")
    try:
        mats = [Matrix.from_json(o) for o in objs]
    except ParseError as exc:
        raise _InputError(str(exc)) from exc
    return [m.with_mode(mode) for m in mats]


def _discrepancy(x: Matrix, y: Matrix) -> float:
    return (x - y).max_abs()


def _matches(x: Matrix, y: Matrix) -> bool:
    return x == y if x.mode == EXACT else x.close_to(y, DEFAULT_POLICY)


# -- commands -----------------------------------------------------------------

def cmd_compute(args) -> int:
    mode = FLOAT if args.float else EXACT
    (a,) = _load_matrices([args.matrix], 1, mode)
    if not a.is_square:
        raise _InputError("matrix must be square")
    data = drazin(a)
    _dump({"inverse": data.inverse.to_json(), "index": data.index,
           "projector": data.projector.to_json()})
    if not satisfies_axioms(a, data.inverse, data.index):
        print("verification failed: output does not satisfy the axioms", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_route(args) -> int:
    mode = FLOAT if args.float else EXACT
    mats = _load_matrices(args.inputs, route_arity(args.route), mode)
    try:
        res = run_route(args.route, *mats, force=args.force)
    except HypothesisViolatedError as exc:
        _dump({"route": args.route, "hypothesis": exc.report.to_json(), "verdict": "violated"})
        return EXIT_VIOLATED
    except DimensionMismatchError as exc:
        raise _InputError(str(exc)) from exc
    oracle = drazin(target_matrix(args.route, *mats)).inverse
    match = _matches(res.inverse, oracle)
    body = res.to_json()
    body.update({"oracle": oracle.to_json(), "discrepancy": _discrepancy(res.inverse, oracle),
                 "match": match})
    _dump(body)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_check(args) -> int:
    mode = FLOAT if args.float else EXACT
    mats = _load_matrices(args.inputs, arity(args.id), mode)
    try:
        rep = check_hypothesis(args.id, *mats)
    except DimensionMismatchError as exc:
        raise _InputError(str(exc)) from exc
    _dump(rep.to_json())
    return EXIT_OK if rep.satisfied else EXIT_VIOLATED


def cmd_generate(args) -> int:
    try:
        inst = generate_instance(GenConfig(args.id, args.dim, args.seed,
                                           mode=FLOAT if args.float else EXACT))
    except InfeasibleConfigurationError as exc:
        raise _InputError(str(exc)) from exc
    _dump(inst.manifest())
    return EXIT_OK


def run_trial(job) -> dict:
    """One exploration trial; module level so worker processes can run it."""
    hid, dim, seed, index, violate, mode = job
    route = ROUTE_OF[hid]
    cfg = GenConfig(hid, dim, seed, mode=mode).trial(index)
    rec = {"index": index, "seed": cfg.seed, "id": hid, "route": route,
           "violated": False, "note": None}
    try:
        inst = generate_instance(cfg)
        if violate:
            try:
                inst = perturb_to_violate(inst, hid, violate, seed=cfg.seed)
                rec["violated"] = True
            except CannotIsolateError:
                rec["note"] = f"cannot isolate condition {violate}; ran unperturbed"
        rep = check_hypothesis(hid, *inst.mats)
        rec["hypothesis"] = rep.to_json()
        res = run_route(route, *inst.mats, force=rec["violated"])
        oracle = drazin(target_matrix(route, *inst.mats)).inverse
        rec["discrepancy"] = _discrepancy(res.inverse, oracle)
        rec["status"] = "match" if _matches(res.inverse, oracle) else "mismatch"
        rec["identities_hold"] = res.identities_hold
    except GDrazinError as exc:
        rec.update(status="error", note=f"{type(exc).__name__}: {exc}",
                   discrepancy=None, identities_hold=None, hypothesis=None)
    return rec


def explore(hid, trials, dim, seed, violate=None, jobs=1, mode=EXACT) -> dict:
    """Run ``trials`` seeded trials and return the report body (without timing)."""
    work = [(hid, dim, seed, i, violate, mode) for i in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run_trial, work))
    else:
        records = [run_trial(w) for w in work]
    records.sort(key=lambda r: r["index"])
    passed = sum(r["status"] == "match" for r in records)
    failed = sum(r["status"] == "mismatch" for r in records)
    errors = sum(r["status"] == "error" for r in records)
    residuals = [r["discrepancy"] for r in records if r["discrepancy"] is not None]
    clean = [r for r in records if not r["violated"]]
    return {
        "config": {"id": hid, "route": ROUTE_OF[hid], "trials": trials, "dim": dim,
                   "seed": seed, "violate": violate, "mode": mode},
        "trials": records,
        "summary": {"trials": trials, "passed": passed, "failed": failed, "errors": errors,
                    "violated": trials - len(clean),
                    "max_residual": max(residuals, default=0.0),
                    "ok": all(r["status"] == "match" for r in clean)},
        "version": __version__,
    }


def _canonical_command(args) -> list[str]:
    """Command echo without --jobs and --out, which never change the results."""
    cmd = ["gdrazin", "explore", args.id, "--trials", str(args.trials),
           "--dim", str(args.dim), "--seed", str(args.seed)]
    if args.violate is not None:
        cmd += ["--violate", str(args.violate)]
    if args.float:
        cmd.append("--float")
    return cmd


def cmd_explore(args) -> int:
    if args.trials < 0 or not 1 <= args.dim <= MAX_DIM or args.jobs < 1:
        raise _InputError(f"need trials >= 0, 1 <= dim <= {MAX_DIM}, jobs >= 1")
    if args.violate is not None and not 1 <= args.violate <= len(labels(args.id)):
        raise _InputError(f"{args.id} has conditions 1..{len(labels(args.id))}")
    started = datetime.now(timezone.utc).isoformat()
    t0 = time.perf_counter()
    body = explore(args.id, args.trials, args.dim, args.seed, args.violate, args.jobs,
                   FLOAT if args.float else EXACT)
    report = {"command": _canonical_command(args), **body,
              "timing": {"started": started, "elapsed_seconds": time.perf_counter() - t0}}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _dump(report, fh)
    else:
        _dump(report)
    return EXIT_OK if body["summary"]["ok"] else EXIT_MISMATCH


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gdrazin",
                                description="Drazin inverse formulas checked against an oracle.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="Drazin inverse, index and spectral idempotent")
    c.add_argument("matrix")
    c.add_argument("--float", action="store_true")
    c.set_defaults(func=cmd_compute)

    r = sub.add_parser("route", help="run one formula route and compare with the oracle")
    r.add_argument("route", choices=ROUTES)
    r.add_argument("inputs", nargs="+")
    r.add_argument("--force", action="store_true", help="run even if the hypothesis fails")
    r.add_argument("--float", action="store_true")
    r.set_defaults(func=cmd_route)

    k = sub.add_parser("check", help="evaluate a condition set")
    k.add_argument("id", choices=HYPOTHESIS_IDS)
    k.add_argument("inputs", nargs="+")
    k.add_argument("--float", action="store_true")
    k.set_defaults(func=cmd_check)

    g = sub.add_parser("generate", help="print a seeded instance manifest")
    g.add_argument("id", choices=HYPOTHESIS_IDS)
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--float", action="store_true")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("explore", help="seeded campaign over generated instances")
    e.add_argument("id", choices=HYPOTHESIS_IDS)
    e.add_argument("--trials", type=int, default=10)
    e.add_argument("--dim", type=int, default=2)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--violate", type=int, default=None, metavar="K")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--out", default=None)
    e.add_argument("--float", action="store_true")
    e.set_defaults(func=cmd_explore)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; bad parameters are exit 3 here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


__all__ = ["main", "build_parser", "explore", "run_trial"]
