"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or limit error,
3 semantic input error (e.g. a pair that is not an interval).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from tamari_lab import limits, series
from tamari_lab.intervals import (
    NotAnIntervalError,
    interval_decomposition,
    is_indecomposable,
    parse_interval,
)
from tamari_lab.newintervals import closed_new_count, count_new, decoupage
from tamari_lab.tamari import build_poset
from tamari_lab.trees import TreeParseError, catalan, enumerate_binary_trees
from tamari_lab.verify import CHECKS, run_checks

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SEMANTIC = 3

SERIES_NAMES = ("Phi", "phi", "Theta", "theta", "psi", "nu")
# phi and theta are printed from y^1 (sums over n >= 1); psi and nu from y^0
SERIES_START = {"phi": 1, "theta": 1, "psi": 0, "nu": 0}


class UsageError(Exception):
    pass


def _count(what: str, n: int):
    if n < 0:
        raise UsageError("n must be non-negative")
    limits.check_limit(n, "count size")
    if what == "trees":
        return len(enumerate_binary_trees(n)), catalan(n)
    if n < 1:
        raise UsageError("n must be at least 1")
    if what == "intervals":
        return build_poset(n).relation_count(), series.closed_interval_count(n)
    if what == "indecomposable":
        from tamari_lab.intervals import enumerate_intervals

        return sum(1 for i in enumerate_intervals(n) if is_indecomposable(i)), None
    if what == "new":
        return count_new(n), closed_new_count(n) if n >= 2 else None
    raise UsageError(f"unknown count target {what!r}")


def cmd_count(args) -> int:
    value, formula = _count(args.what, args.n)
    row = {"what": args.what, "n": args.n, "count": value}
    if args.formula:
        row["formula"] = formula
        row["agree"] = None if formula is None else formula == value
    _emit_rows([row], args.format)
    if args.formula and formula is not None and formula != value:
        return EXIT_FAIL
    return EXIT_OK


def _emit_rows(rows: List[dict], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows if len(rows) != 1 else rows[0], sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            print(" ".join(f"{k}={v}" for k, v in row.items()))


def _monomial_text(c: int, i: int, n: int) -> str:
    parts = [f"x^{i}" if i > 1 else "x"] if i else []
    parts.append(f"y^{n}" if n > 1 else "y")
    return "*".join(([str(c)] if c != 1 else []) + parts)


def _row_text(n: int, coeffs: List[int]) -> str:
    terms = [_monomial_text(c, i, n) for i, c in enumerate(coeffs) if c]
    return " + ".join(terms) or "0"


def cmd_series(args) -> int:
    table = series.series_table(args.name, args.order)
    if args.name in ("Phi", "Theta"):
        if args.format == "json":
            print(json.dumps([{"yDegree": n, "xPolynomial": cs} for n, cs in table]))
        elif args.format == "csv":
            print("yDegree,xDegree,coeff")
            for n, cs in table:
                for i, c in enumerate(cs):
                    if c:
                        print(f"{n},{i},{c}")
        else:
            for n, cs in table:
                print(_row_text(n, cs))
        return EXIT_OK
    start = SERIES_START[args.name]
    coeffs = table[start:]
    if args.format == "json":
        print(json.dumps({"name": args.name, "start": start, "coefficients": coeffs}))
    elif args.format == "csv":
        print("yDegree,coeff")
        for k, c in enumerate(coeffs, start=start):
            print(f"{k},{c}")
    else:
        print(",".join(str(c) for c in coeffs))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.check == "all":
        names = list(CHECKS)
    elif args.check in CHECKS:
        names = [args.check]
    else:
        raise UsageError(
            f"unknown check {args.check!r}; choose from all, {', '.join(CHECKS)}"
        )
    report = run_checks(names, args.order, maxi8_path=args.maxi8_data)
    if args.format == "json":
        print(json.dumps(report.to_json(timings=args.timings), indent=2))
    else:
        for item in report.items:
            status = "PASS" if item.passed else "FAIL"
            extra = f"  ({item.error})" if item.error else ""
            timing = f" {item.elapsed:.3f}s" if args.timings else ""
            print(f"{status} {item.name} order={item.order}{timing}{extra}")
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_decompose(args) -> int:
    interval = parse_interval(args.interval)
    factors = interval_decomposition(interval)
    print(json.dumps({"factors": [f.to_json() for f in factors],
                      "text": [str(f) for f in factors]}))
    return EXIT_OK


def cmd_decoupage(args) -> int:
    interval = parse_interval(args.interval)
    print(json.dumps(decoupage(interval).to_json()))
    return EXIT_OK


def cmd_poset(args) -> int:
    print(json.dumps(build_poset(args.n).to_json()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tamari-lab", description="Tamari interval enumeration and checks."
    )
    parser.add_argument(
        "--limit",
        type=int,
        help=f"raise the enumeration cap (default {limits.DEFAULT_LIMIT}, "
        f"or ${limits.ENV_VAR})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count trees or intervals of one size")
    p.add_argument("what", choices=["trees", "intervals", "indecomposable", "new"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--formula", action="store_true", help="compare with closed form")
    p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", help="print generating-function coefficients")
    p.add_argument("name", choices=SERIES_NAMES)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--check", default="all")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--format", choices=["plain", "json"], default="json")
    p.add_argument(
        "--timings", action="store_true", help="include elapsed times (not deterministic)"
    )
    p.add_argument("--maxi8-data", help="alternative coefficient file for maxi8")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="maximal /-decomposition of an interval")
    p.add_argument("interval", help="'lo;hi' in tree text form")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("decoupage", help="decoupage of an interval into new ones")
    p.add_argument("interval", help="'lo;hi' in tree text form")
    p.set_defaults(func=cmd_decoupage)

    p = sub.add_parser("poset", help="Hasse diagram of one Tamari lattice as JSON")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_poset)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    saved = os.environ.get(limits.ENV_VAR)
    if args.limit is not None:
        os.environ[limits.ENV_VAR] = str(args.limit)
    try:
        return args.func(args)
    except (limits.LimitError, UsageError, TreeParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotAnIntervalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    finally:
        if saved is None:
            os.environ.pop(limits.ENV_VAR, None)
        else:
            os.environ[limits.ENV_VAR] = saved


if __name__ == "__main__":
    sys.exit(main())
