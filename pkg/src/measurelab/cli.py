"""Command-line interface.

Verbs: ``list`` the catalog, ``describe`` one scenario as JSON, ``run``
catalog scenarios, ``check-file`` a user-supplied scenario document.
Exit status: 0 when every check matched its expectation, 1 when any
check came back off-expectation, 2 for usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import MeasureLabError, ScenarioError
from .reporting import render_plots, render_rows
from .runner import Overrides, run_many
from .scenarios import catalog, find_scenario, validate


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None,
                   help="override the scenario tolerance")
    p.add_argument("--n-max", type=int, default=None,
                   help="override the sequence length")
    p.add_argument("--resolution", type=int, default=None,
                   help="override the dyadic ring resolution")
    p.add_argument("--depth", type=int, default=None,
                   help="override the quadrature subdivision depth")
    p.add_argument("--seed", type=int, default=None,
                   help="override the seed for sampled directions")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="report format (default csv)")
    p.add_argument("--out", default=None,
                   help="write the report here instead of stdout")
    p.add_argument("--plots", action="store_true",
                   help="render one PNG per scenario next to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="measurelab",
        description="run convergence and limit-interchange checks on "
                    "finite measures over boxes")
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("list", help="list catalog scenarios")

    p_desc = sub.add_parser("describe", help="print one scenario as JSON")
    p_desc.add_argument("name")

    p_run = sub.add_parser("run", help="run catalog scenarios")
    p_run.add_argument("names", nargs="*",
                       help="scenario names (default: the whole catalog)")
    _add_run_flags(p_run)

    p_file = sub.add_parser("check-file",
                            help="validate and run a scenario JSON file")
    p_file.add_argument("path")
    _add_run_flags(p_file)

    return parser


def _overrides(args) -> Overrides:
    return Overrides(tol=args.tol, n_max=args.n_max,
                     resolution=args.resolution, depth=args.depth,
                     seed=args.seed)


def _emit(rows, args) -> int:
    text = render_rows(rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plots:
        directory = os.path.dirname(os.path.abspath(args.out)) if args.out else os.getcwd()
        for path in render_plots(rows, directory):
            print(f"wrote {path}", file=sys.stderr)
    return 0 if all(r.ok for r in rows) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verb == "list":
        for sc in catalog():
            print(f"{sc.name:20s} {sc.title}")
        return 0

    if args.verb == "describe":
        try:
            sc = find_scenario(args.name)
        except ScenarioError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(json.dumps(sc.to_json(), indent=2))
        return 0

    if args.verb == "run":
        try:
            scenarios = ([find_scenario(n) for n in args.names]
                         if args.names else catalog())
            rows = run_many(scenarios, _overrides(args))
        except MeasureLabError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        return _emit(rows, args)

    if args.verb == "check-file":
        try:
            with open(args.path) as fh:
                data = json.load(fh)
        except OSError as exc:
            print(f"error: {args.path}: {exc.strerror or exc}", file=sys.stderr)
            return 2
        except json.JSONDecodeError as exc:
            print(f"error: {args.path}:{exc.lineno}:{exc.colno}: {exc.msg}",
                  file=sys.stderr)
            return 2
        try:
            scenario = validate(data)
            rows = run_many([scenario], _overrides(args))
        except MeasureLabError as exc:
            print(f"error: {args.path}: {exc}", file=sys.stderr)
            return 2
        return _emit(rows, args)

    parser.error(f"unknown verb {args.verb!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
