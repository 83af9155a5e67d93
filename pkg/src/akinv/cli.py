"""Command-line driver: ``akinv run|check|fmt <script>``.

Exit codes: 0 all checks pass, 1 some check fails, 2 an error (including
parse errors and unreadable files).  Resource caps come from the
environment: ``AKINV_GB_MAX_STEPS``, ``AKINV_MEMBER_BOUND`` and
``AKINV_REWRITE_MAX_DEPTH``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dsl import parse, print_script
from .expr import ParseError
from .runner import RunOptions, run


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="akinv", description="Exponential-map and conductor checks from .ak scripts.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name, help_ in (
        ("run", "run a script and print a table (or JSON with --json)"),
        ("check", "run a script and print only the verdict (or JSON with --json)"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("script", type=Path)
        p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
        p.add_argument("--bound", type=int, help="default bound for iterative and push")
        p.add_argument("--pool-degree", type=int, help="default candidate-pool degree for rewrite")
        p.add_argument("--seed", type=int, help="accepted for randomized suites; core results ignore it")
        p.add_argument("--timing", action="store_true", help="include per-command seconds")
    p = sub.add_parser("fmt", help="print a script in canonical form")
    p.add_argument("script", type=Path)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        text = args.script.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"akinv: cannot read {args.script}: {exc}", file=sys.stderr)
        return 2
    try:
        script = parse(text)
    except ParseError as exc:
        print(f"{args.script}:{exc}", file=sys.stderr)
        return 2
    if args.cmd == "fmt":
        sys.stdout.write(print_script(script))
        return 0
    opts = RunOptions(bound=args.bound, pool_degree=args.pool_degree, seed=args.seed, timing=args.timing)
    report = run(script, opts)
    if args.json:
        sys.stdout.write(report.dumps())
    elif args.cmd == "run":
        sys.stdout.write(report.table())
    else:
        c = report.counts()
        print(f"{report.status.upper()}: {c['pass']} pass, {c['fail']} fail, {c['error']} error")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
