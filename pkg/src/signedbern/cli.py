"""Command-line front end.

Exit status: 0 when every check passes, 2 for usage errors, 3 when a check
fails (the failing report is written to stderr as JSON).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .algebraic import field_spec
from .asymptotics import (
    estimate_constant,
    fraction_to_decimal,
    generating_function_coeffs,
    recurrence,
    solve_all_roots,
    solve_real_root,
)
from .measure import signed_bernoulli, unsigned_bernoulli
from .oddm import oddm_report
from .sineprod import BoundViolation, scan
from .suite import default_depth, run_verify
from .tree import build_tree, dump_lines, to_dot

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3
PRECISION_ENV = "SIGNEDBERN_PRECISION"


class UsageError(Exception):
    pass


def _ratstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _require_even(m: int, command: str) -> None:
    if m < 2 or m % 2:
        raise UsageError(f"{command} requires even m >= 2, got {m}")


def cmd_table(args) -> tuple[str, int]:
    _require_even(args.m, "table")
    table = recurrence(args.m, args.max_n)
    lam = solve_real_root(args.m, args.precision)
    rows = []
    for n, a in enumerate(table.values):
        ratio = Fraction(a) / lam.mid**n
        rows.append([n, a, _ratstr(Fraction(a, 2**n)), fraction_to_decimal(ratio, 15), 1])
    header = ["n", "a_n", "total_variation", "a_n_lambda_pow_neg_n", "schema_version"]
    if args.format == "json":
        text = _dump_json({
            "schema_version": 1,
            "m": args.m,
            "lambda": lam.decimal(args.precision),
            "rows": [dict(zip(header[:-1], r[:-1])) for r in rows],
        })
    else:
        text = _csv_text(header, rows)
    if args.figure:
        from .plotting import plot_decay

        C = 0.0
        if len(table) >= 2 * args.m + 2:
            C = estimate_constant(table, lam).C_estimate
        plot_decay(args.m, [(n, a / 2**n) for n, a in enumerate(table.values)],
                   float(lam.mid) / 2, C, args.figure)
    return text, EXIT_OK


def cmd_gf(args) -> tuple[str, int]:
    _require_even(args.m, "gf")
    gf = generating_function_coeffs(args.m, args.max_n)
    rec = recurrence(args.m, args.max_n).values
    rows = [[n, c, r, int(c == r)] for n, (c, r) in enumerate(zip(gf, rec))]
    ok = all(row[3] for row in rows)
    if args.format == "json":
        text = _dump_json({"schema_version": 1, "m": args.m, "coefficients": gf, "match": ok})
    else:
        text = _csv_text(["n", "series_coeff", "recurrence", "match"], rows)
    return text, EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_roots(args) -> tuple[str, int]:
    _require_even(args.m, "roots")
    report = solve_all_roots(args.m, precision=args.precision)
    if args.figure:
        from .plotting import plot_roots

        plot_roots(report, args.figure)
    ok = report.dominant and report.below_three_halves and report.interval_check
    return _dump_json(report.to_json(args.precision)), EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_verify(args) -> tuple[str, int]:
    _require_even(args.m, "verify")
    report = run_verify(args.m, depth=args.depth, brute_depth=args.brute_depth,
                        seed=args.seed, jobs=args.jobs)
    data = report.to_json()
    if args.format == "csv":
        rows = [[c["name"], c["level"], int(c["passed"]), c["detail"]] for c in data["checks"]]
        text = _csv_text(["check", "level", "passed", "detail"], rows)
    else:
        text = _dump_json(data)
    if not report.passed:
        sys.stderr.write(_dump_json({"failures": [c.to_dict() for c in report.failures()]}))
        return text, EXIT_CHECK_FAILED
    return text, EXIT_OK


def cmd_sineprod(args) -> tuple[str, int]:
    try:
        result, grid, values = scan(args.m, args.n, xi_max=args.xi_max,
                                    samples=args.samples, return_grid=True)
    except BoundViolation as e:
        sys.stderr.write(_dump_json({"failure": str(e)}))
        return "", EXIT_CHECK_FAILED
    step = max(1, args.every)
    rows = [[repr(float(x)), repr(float(v))] for x, v in zip(grid[::step], values[::step])]
    text = _csv_text(["xi", "F_n"], rows)
    summary = _dump_json(result.to_json())
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(summary)
    else:
        sys.stderr.write(summary)
    if args.figure:
        from .plotting import plot_sine_product

        plot_sine_product(args.m, args.n, grid[::step], values[::step],
                          float(result.bound), result.argmax_xi, args.figure)
    return text, EXIT_OK


def cmd_oddm(args) -> tuple[str, int]:
    data = oddm_report(args.m, n_max=args.n_max, depth=args.depth)
    return _dump_json(data), EXIT_OK if data["passed"] else EXIT_CHECK_FAILED


def cmd_dump(args) -> tuple[str, int]:
    spec = field_spec(args.m)
    build = unsigned_bernoulli if args.unsigned else signed_bernoulli
    mu = build(spec, args.n)[-1]
    data = mu.to_json()
    data["kind"] = "unsigned" if args.unsigned else "signed"
    data["total_variation"] = _ratstr(mu.total_variation())
    return _dump_json(data), EXIT_OK


def cmd_dump_tree(args) -> tuple[str, int]:
    spec = field_spec(args.m)
    levels, _ = build_tree(spec, args.depth)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(levels[: args.dot_depth + 1]))
    return "\n".join(dump_lines(levels)) + "\n", EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    env_precision = int(os.environ.get(PRECISION_ENV, "30"))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True, help="multinacci degree")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--precision", type=int, default=env_precision,
                        help=f"decimal digits (default ${PRECISION_ENV} or 30)")

    parser = argparse.ArgumentParser(prog="signedbern", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="a_n table (CSV)")
    p.add_argument("--max-n", type=int, default=40)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--figure", help="also render total variation decay to this file")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("gf", parents=[common], help="generating function coefficients")
    p.add_argument("--max-n", type=int, default=200)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("roots", parents=[common], help="characteristic roots (JSON)")
    p.add_argument("--figure", help="also plot the roots to this file")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("verify", parents=[common], help="run every structural check")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--brute-depth", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sineprod", parents=[common], help="sine product scan (CSV + JSON summary)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--xi-max", type=float, default=None)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--every", type=int, default=1, help="emit every k-th grid point")
    p.add_argument("--summary", help="write the JSON summary here (default stderr)")
    p.add_argument("--figure", help="also plot the scan to this file")
    p.set_defaults(func=cmd_sineprod)

    p = sub.add_parser("oddm", parents=[common], help="witness search and odd-m checks (JSON)")
    p.add_argument("--n-max", type=int, default=14, help="witness search length")
    p.add_argument("--depth", type=int, default=12, help="no-decay check depth")
    p.set_defaults(func=cmd_oddm)

    p = sub.add_parser("dump", parents=[common], help="nu^(n) or mu^(n) as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--unsigned", action="store_true")
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("dump-tree", parents=[common], help="pruned tree, one word per line")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--dot", help="also write a DOT graph here")
    p.add_argument("--dot-depth", type=int, default=6)
    p.set_defaults(func=cmd_dump_tree)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "depth", 0) is None and args.command == "dump-tree":
        args.depth = default_depth(args.m)
    try:
        text, status = args.func(args)
    except (UsageError, ValueError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
