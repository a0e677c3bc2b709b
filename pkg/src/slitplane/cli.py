"""Command-line interface.

    slitplane table --order 4
    slitplane series u --order 5
    slitplane closed-form --i-range 1..3 --n-range 1..5 --verify
    slitplane check --order 24
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import gf, identities
from .gf import ClosedFormQuery
from .identities import KNOWN, PASSED
from .walks import enumerate_walks

FORMATS = ("csv", "json", "plain")


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("order must be >= 1")
    return value


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _plain(rows) -> str:
    return "".join(" ".join(str(v) for v in row) + "\n" for row in rows)


def cmd_table(args) -> tuple[str, int]:
    table = enumerate_walks(args.order)
    rows = list(table.nonzero())
    if args.format == "csv":
        return _csv(["n", "i", "j", "count"], rows), 0
    if args.format == "json":
        return _json([dict(zip(("n", "i", "j", "count"), r)) for r in rows]), 0
    return _plain(rows), 0


def cmd_series(args) -> tuple[str, int]:
    named = gf.named_series(args.name, args.order)
    terms = [(n, ex, ey, str(c)) for n, ex, ey, c in named.series.items()]
    if args.format == "csv":
        return _csv(["n", "ex", "ey", "coeff"], terms), 0
    if args.format == "json":
        return _json({
            "name": named.name,
            "order": args.order,
            "description": named.description,
            "text": named.series.to_text(),
            "terms": [dict(zip(("n", "ex", "ey", "coeff"), t)) for t in terms],
        }), 0
    return named.series.to_text() + "\n", 0


def cmd_closed_form(args) -> tuple[str, int]:
    queries = [ClosedFormQuery(i, n) for i in args.i_range for n in args.n_range if n >= i]
    if not queries:
        raise gf.DomainError("no (i, n) pair with i >= 1 and n >= i in the given ranges")
    top = max(q.n for q in queries)
    delta = gf.delta_diagonal_series(2 * top)
    table = enumerate_walks(2 * top) if args.verify else None
    rows, status = [], 0
    for q in queries:
        neg = gf.closed_form_a_diag_neg(q)
        pos = neg + delta[2 * q.n].coefficient(0, q.i)
        if table is not None:
            if (neg, pos) != (table.count(2 * q.n, -q.i, -q.i), table.count(2 * q.n, q.i, q.i)):
                status = 1
        rows.append((q.i, q.n, neg, pos, "yes" if table is not None else "no"))
    header = ["i", "n", "a_neg", "a_pos", "dp_checked"]
    if args.format == "csv":
        return _csv(header, rows), status
    if args.format == "json":
        return _json([{k: (str(v) if k.startswith("a_") else v) for k, v in zip(header, r)}
                      for r in rows]), status
    return _plain(rows), status


def cmd_check(args) -> tuple[str, int]:
    records = []
    for entry in identities.suite(seed=args.seed, oracle_order=args.oracle_order):
        start = time.perf_counter()
        reports = identities.run_entry(entry, args.order)
        millis = round((time.perf_counter() - start) * 1000, 1) if args.timings else None
        for r in reports:
            rec = r.as_dict()
            rec["millis"] = millis
            records.append(rec)
    failed = [r for r in records if r["status"] not in (PASSED, KNOWN)]
    status = 1 if failed else 0
    if args.format == "json":
        return _json(records), status
    rows = [(r["name"], r["order"], r["status"],
             json.dumps(r["first_mismatch"]) if r["first_mismatch"] else "") for r in records]
    if args.format == "csv":
        return _csv(["name", "order", "status", "first_mismatch"], rows), status
    lines = [f"{status_:<18} {name} (order {order}) {mm}".rstrip() for name, order, status_, mm in rows]
    counts = {s: sum(r["status"] == s for r in records) for s in (PASSED, KNOWN, "failed")}
    lines.append(", ".join(f"{v} {k}" for k, v in counts.items()))
    return "\n".join(lines) + "\n", status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slitplane", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order, fmt):
        if order is not None:
            p.add_argument("--order", type=positive, default=order)
        p.add_argument("--format", choices=FORMATS, default=fmt)
        p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("table", help="walk counts a_{i,j}(n) as rows n,i,j,count")
    common(p, 4, "csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("series", help="print a named generating function")
    p.add_argument("name", choices=sorted(gf.CATALOG))
    common(p, 10, "plain")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("closed-form", help="diagonal counts a_{-i,-i}(2n), a_{i,i}(2n)")
    common(p, None, "csv")
    p.add_argument("--i-range", type=parse_range, default=range(1, 5))
    p.add_argument("--n-range", type=parse_range, default=range(1, 8))
    p.add_argument("--verify", action="store_true", help="cross-check against the walk DP")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("check", help="run every identity check")
    common(p, 24, "json")
    p.add_argument("--oracle-order", type=positive, default=identities.ORACLE_ORDER,
                   help="cap for checks against the walk DP (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized kernel instances")
    p.add_argument("--timings", action="store_true", help="fill in per-check millis")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = args.func(args)
    except (gf.DomainError, gf.UnknownSeries) as exc:
        parser.error(str(exc))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
