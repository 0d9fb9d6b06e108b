"""Command line: ``exactreals eval`` and ``exactreals bench``."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError
from .expr import ParseError, agrees_with_oracle, evaluate, parse
from .oracle import agrees_with_golden

log = logging.getLogger(__name__)

CSV_COLUMNS = ("expr", "digits", "correct", "nanos")

# Expressions whose digits are checked against the checked-in golden files;
# everything else is checked against the mpmath evaluation of the same tree.
GOLDEN_EXPRESSIONS = {"pi": "pi", "exp(1)": "e", "sqrt(2)": "sqrt2"}

DEFAULT_SUITE = [
    ("pi", 300),
    ("exp(exp(exp(1/2)))", 25),
    ("exp(pi)-pi", 25),
    ("arctan(pi)", 25),
    ("sqrt(2)", 3000),
    ("pi", 2000),
]


@dataclass
class BenchRow:
    expr: str
    digits: int
    correct: bool
    nanos: int
    error: str | None = None


def check_digits(src: str, digits: int, result: str) -> bool:
    golden = GOLDEN_EXPRESSIONS.get("".join(src.split()))
    if golden is not None:
        return agrees_with_golden(result, golden, digits)
    return agrees_with_oracle(result, parse(src), digits)


def run_row(src: str, digits: int, witness: int | None = None) -> BenchRow:
    start = time.perf_counter_ns()
    try:
        tree = parse(src)
        result = evaluate(tree, digits, witness)
    except (ParseError, DomainError) as err:
        return BenchRow(src, digits, False, time.perf_counter_ns() - start, str(err))
    nanos = time.perf_counter_ns() - start
    return BenchRow(src, digits, check_digits(src, digits, result), nanos)


def bench(suite, witness: int | None = None) -> list[BenchRow]:
    rows = []
    for src, digits in suite:
        row = run_row(src, digits, witness)
        log.info("%s @ %d digits: %s in %.3fs", src, digits,
                 "ok" if row.correct else "FAILED", row.nanos / 1e9)
        rows.append(row)
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.expr, r.digits, "true" if r.correct else "false", r.nanos])
    return buf.getvalue()


def read_suite(path) -> list[tuple[str, int]]:
    """Suite file: CSV rows ``expr,digits``; a header row and ``#`` comments
    are allowed."""
    suite = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if [c.strip() for c in row[:2]] == ["expr", "digits"]:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'expr,digits'")
            suite.append((row[0].strip(), int(row[1])))
    return suite


def _cmd_eval(args) -> int:
    try:
        print(evaluate(args.expr, args.digits, args.witness))
    except (ParseError, DomainError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


def _cmd_bench(args) -> int:
    suite = read_suite(args.suite) if args.suite else DEFAULT_SUITE
    rows = bench(suite, args.witness)
    text = rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    for r in rows:
        if r.error:
            print(f"error in {r.expr!r}: {r.error}", file=sys.stderr)
    return 0 if all(r.correct for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exactreals", description="Exact real arithmetic.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression to N decimals")
    ev.add_argument("expr")
    ev.add_argument("--digits", type=int, default=20)
    ev.add_argument("--witness", type=int, default=None,
                    help="assert 2^K <= |x| for divisors and sqrt arguments "
                         "whose bound cannot be derived")
    ev.set_defaults(func=_cmd_eval)

    be = sub.add_parser("bench", help="time a suite and verify its digits")
    be.add_argument("--suite", help="CSV file of expr,digits rows")
    be.add_argument("--csv", help="write the report here instead of stdout")
    be.add_argument("--witness", type=int, default=None)
    be.set_defaults(func=_cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    if getattr(args, "digits", 0) < 0:
        print("error: --digits must be non-negative", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
