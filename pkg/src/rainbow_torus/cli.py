"""Command-line front end: construct, verify, exact, bounds, sweep, report.

Exit codes: 0 success, 1 internal error, 2 usage or applicability error,
3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bounds, report
from .errors import ApplicabilityError, CapacityError, InputError, RainbowError
from .oracle import exact
from .patterns import construct_upper
from .rdf_core import parse, serialize, verify

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def int_range(text: str) -> range:
    """'3..8' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False, separators=(",", ":")) + "\n")


def cmd_construct(args) -> int:
    cons = construct_upper(args.m, args.n, args.recipe)
    sys.stdout.write(serialize(cons.assignment, args.format).decode())
    if args.format == "json":
        sys.stdout.write("\n")
    print(f"recipe {cons.recipe}, weight {cons.claimed_weight}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
    a = parse(data, args.format, args.k)
    _emit_json(verify(a).to_json_dict())
    return EXIT_OK


def cmd_exact(args) -> int:
    res = exact(args.m, args.n, args.k, args.engine, workers=args.workers)
    out = {"value": res.value, "engine": res.engine, "elapsed_ms": res.elapsed_ms}
    if args.witness:
        out["witness"] = serialize(res.witness, "grid").decode()
    _emit_json(out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    _emit_json(bounds.bound_set(args.m, args.n).to_json_dict())
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = report.sweep(args.m, args.n, with_exact=not args.no_exact, workers=args.workers)
    text = report.rows_to_csv(rows)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_report(args) -> int:
    if args.which == "known-table":
        n_range = args.n or range(3, 13)
        if args.json:
            _emit_json({"n": list(n_range), **report.known_table(n_range)})
        else:
            print(report.render_known_table(n_range))
    elif args.which == "ub-comparison":
        if args.json:
            _emit_json(report.ub_comparison())
        else:
            print(report.render_ub_comparison())
    else:
        data = report.conjecture(args.m or range(3, 6), args.n or range(3, 13))
        if args.json:
            _emit_json({str(m): [list(c) for c in cells] for m, cells in data.items()})
        else:
            print(report.render_conjecture(data))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbow-torus",
                                description="2-rainbow domination on products of two cycles")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="print a verified upper-bound construction")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--recipe", default=None, help="e.g. F1, PROP45_B3, TRANSPOSE_OF(PROP46)")
    c.add_argument("--format", choices=["grid", "json"], default="grid")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a serialized assignment")
    v.add_argument("input", nargs="?", default="-", help="path, or - for stdin")
    v.add_argument("--format", choices=["grid", "json"], default="grid")
    v.add_argument("--k", type=int, choices=[1, 2], default=None)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exact", help="exact rainbow domination number")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--k", type=int, choices=[1, 2], default=2)
    e.add_argument("--engine", choices=["auto", "dp", "brute"], default="auto")
    e.add_argument("--witness", action="store_true")
    e.add_argument("--workers", type=int, default=1)
    e.set_defaults(func=cmd_exact)

    b = sub.add_parser("bounds", help="lower/upper bounds and known values")
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sweep", help="CSV of bounds, constructions and exact values")
    s.add_argument("--m", type=int_range, required=True)
    s.add_argument("--n", type=int_range, required=True)
    s.add_argument("--out", default=None)
    s.add_argument("--no-exact", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("report", help="reproduce tables")
    r.add_argument("which", choices=["known-table", "ub-comparison", "conjecture"])
    r.add_argument("--m", type=int_range, default=None)
    r.add_argument("--n", type=int_range, default=None)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ApplicabilityError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (RainbowError, AssertionError, OSError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
