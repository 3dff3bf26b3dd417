"""Command-line front end.

    fuzzychoice run SCENARIO.json [--seed N] [--out PATH] [--quiet]
    fuzzychoice reproduce TABLE_ID [--out DIR] [--tolerance T] [--quiet]

Exit codes: 0 success, 1 schema/input error, 2 domain error raised by a
model, 3 a reproduction check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .reproduce import TABLE_IDS, UnknownTableError, reproduce
from .scenario import SchemaError, load_scenario, run_scenario

EXIT_OK, EXIT_SCHEMA, EXIT_DOMAIN, EXIT_CHECK_FAILED = 0, 1, 2, 3


def _write(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_run(args) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    if args.seed is not None:
        scenario.seed = args.seed
    try:
        artifact = run_scenario(scenario)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    out = args.out
    if out is None and scenario.output:
        out = scenario.base_dir / scenario.output
    _write(artifact.render(), out)
    if not args.quiet:
        dest = f" -> {out}" if out else ""
        print(f"{scenario.kind}: {artifact.summary}{dest}", file=sys.stderr)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    try:
        rep = reproduce(args.table_id, args.tolerance)
    except UnknownTableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        _write(rep.checks_csv(), args.out / f"{rep.table_id}.checks.csv")
        if rep.curve is not None:
            _write(rep.curve, args.out / f"{rep.table_id}.curve.csv")
    if not args.quiet:
        sys.stdout.write(rep.checks_csv())
        verdict = "PASS" if rep.passed else "FAIL"
        print(f"{rep.table_id}: {verdict}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzychoice", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="validate and execute a JSON scenario")
    run.add_argument("scenario", type=Path)
    run.add_argument("--seed", type=int, default=None, help="RNG seed (overrides the scenario's)")
    run.add_argument("--out", type=Path, default=None, help="result file (default: scenario 'output' or stdout)")
    run.add_argument("--tolerance", type=float, default=None, help=argparse.SUPPRESS)
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(func=cmd_run)

    rep = sub.add_parser("reproduce", help="re-derive a published table or figure")
    rep.add_argument("table_id", metavar="TABLE_ID", help=", ".join(TABLE_IDS))
    rep.add_argument("--out", type=Path, default=None, help="directory for checks/curve CSV files")
    rep.add_argument("--tolerance", type=float, default=None, help="override every PASS/FAIL threshold")
    rep.add_argument("--seed", type=int, default=None, help=argparse.SUPPRESS)
    rep.add_argument("--quiet", action="store_true")
    rep.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_SCHEMA
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
