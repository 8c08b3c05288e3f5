"""Command-line interface: ``reltc plan | verify | zcl | bounds``.

Exit codes: 0 success, 1 a verification check failed, 2 unreadable or
invalid input, 3 a query could not be dispatched, 4 inconsistent bounds.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import report_from_spec
from .cohomology import load_algebra, load_map, relative_zcl_lower_bound, zcl_lower_bound
from .errors import InconsistentBounds, InvalidPresentation, ReltcError, UnsupportedFamily
from .planners import path_to_json, planner_to_json
from .scenarios import load_scenario, resolve

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_DISPATCH, EXIT_BOUNDS = 0, 1, 2, 3, 4
DEFAULT_N = 10_000


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _plain(v):
    return v.tolist() if isinstance(v, np.ndarray) else v


# ------------------------------------------------------------------ plan

def _resolve_scenario(path):
    try:
        sc = load_scenario(path)
        fam = resolve(sc.planner_spec)
    except UnsupportedFamily as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from exc
    except InvalidPresentation as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from exc
    return sc, fam


def _csv_rows(query_id: int, record: dict, lifted: bool) -> list[list]:
    rows = []
    for s in record["samples"]:
        pts = np.asarray(s["point"], dtype=float)
        if pts.ndim == 1:
            pts = pts[None, :]
        for robot, p in enumerate(pts):
            coords = p[:-1] if lifted else p
            row = [query_id, robot, repr(float(s["t"]))] + [repr(float(c)) for c in coords]
            if lifted:
                row.append(repr(float(p[-1])))
            rows.append(row)
    return rows


def cmd_plan(args) -> int:
    sc, fam = _resolve_scenario(args.scenario)
    samples = args.samples if args.samples is not None else sc.samples
    fmt = args.format or sc.format
    planner = fam.planner
    records = []
    for qid, (a, b) in enumerate(sc.queries):
        try:
            rule = planner.select(a, b)
            path = rule.section(a, b)
        except ReltcError as exc:
            echo = json.dumps({"query_id": qid, "start": _plain(a), "end": _plain(b)})
            raise _Fail(EXIT_DISPATCH, f"query {qid} not dispatched ({type(exc).__name__}: {exc}): {echo}") from exc
        rec = path_to_json(rule.id, path, samples)
        rec = {"query_id": qid, "start": _plain(a), "end": _plain(b), **rec}
        records.append(rec)

    if fmt == "json":
        _emit(_dumps({"planner": planner_to_json(planner), "family": fam.family, "queries": records}), args.out)
        return EXIT_OK

    lifted = planner.meta.get("family") in ("lifted", "corrupted-lift")
    width = None
    rows = []
    for rec in records:
        try:
            r = _csv_rows(rec["query_id"], rec, lifted)
        except (TypeError, ValueError) as exc:
            raise _Fail(EXIT_INPUT, f"csv export needs coordinate-valued paths ({fam.family})") from exc
        rows.extend(r)
        print(f"query {rec['query_id']}: rule {rec['rule']}", file=sys.stderr)
    if rows:
        width = len(rows[0]) - 3 - (1 if lifted else 0)
    header = ["query_id", "robot_index", "t"] + [f"coord_{i}" for i in range(width or 0)]
    if lifted:
        header.append("height")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    _, fam = _resolve_scenario(args.scenario)
    N = DEFAULT_N if args.samples is None else args.samples
    report = fam.verify(N, args.seed)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "passed", "key", "value"])
        for c in report.checks:
            for k, v in c.evidence.items():
                w.writerow([c.name, c.passed, k, json.dumps(v)])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(report.dumps() + "\n", args.out)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


# ------------------------------------------------------------------ zcl

def cmd_zcl(args) -> int:
    try:
        A = load_algebra(args.algebra)
        maps = [load_map(m, source=A) for m in (args.map or [])]
    except InvalidPresentation as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from exc
    if len(maps) > 2:
        raise _Fail(EXIT_INPUT, "at most two restriction maps (for Y1 and Y2)")
    if maps:
        i1, i2 = maps[0], maps[-1]
        res = relative_zcl_lower_bound(A, i1, i2)
        quantity = "TC_X(Y×Y)" if len(maps) == 1 or args.map[0] == args.map[-1] else "TC_X(Y1×Y2)"
    else:
        res = zcl_lower_bound(A)
        quantity = "TC"
    out = {"statement": f"{quantity} ≥ {res.tc_lower}", "algebra": str(args.algebra),
           "maps": [str(m) for m in (args.map or [])], **res.to_json()}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["statement", "zcl", "tc_lower", "witness"])
        w.writerow([out["statement"], res.length, res.tc_lower, " ".join(out["witness"])])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_dumps(out), args.out)
    print(f"{out['statement']}  witness {out['witness']}", file=sys.stderr)
    return EXIT_OK


# ------------------------------------------------------------------ bounds

def cmd_bounds(args) -> int:
    path = Path(args.spec)
    try:
        spec = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc.strerror}") from exc
    try:
        report = report_from_spec(spec, path.parent)
    except InconsistentBounds as exc:
        raise _Fail(EXIT_BOUNDS, str(exc)) from exc
    except ReltcError as exc:
        raise _Fail(EXIT_INPUT, f"{type(exc).__name__}: {exc}") from exc
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "lower", "lower_by", "upper", "upper_by"])
        lo, hi = report.lower, report.upper
        w.writerow([report.quantity, lo.value if lo else "", lo.by if lo else "",
                    hi.value if hi else "", hi.by if hi else ""])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_dumps(report.to_json()), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ entry

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="output format (default json)")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = argparse.ArgumentParser(prog="reltc", description="Motion planners and bounds for relative topological complexity.")
    p.add_argument("--version", action="version", version=f"reltc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("plan", parents=[common], help="dispatch scenario queries and export sampled paths")
    sp.add_argument("scenario")
    sp.add_argument("--samples", type=int, help="time samples per path (default from scenario, else 101)")
    sp.set_defaults(func=cmd_plan)

    sv = sub.add_parser("verify", parents=[common], help="run the audit suite on a scenario's planner")
    sv.add_argument("scenario")
    sv.add_argument("--samples", "-N", type=int, help=f"number of sampled input pairs (default {DEFAULT_N})")
    sv.set_defaults(func=cmd_verify)

    sz = sub.add_parser("zcl", parents=[common], help="zero-divisor cup-length lower bound")
    sz.add_argument("algebra")
    sz.add_argument("--map", action="append", metavar="MAP",
                    help="restriction map file; give once for Y x Y or twice for Y1 x Y2")
    sz.set_defaults(func=cmd_zcl)

    sb = sub.add_parser("bounds", parents=[common], help="combine certified bounds from a spec file")
    sb.add_argument("spec")
    sb.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None and args.command != "plan":
        args.format = "json"
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"reltc {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
