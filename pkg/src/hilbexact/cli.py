"""Command-line interface.

    hilbexact coeff -a -1 -b 0 -n 10 --exact
    hilbexact coeff -a 1 -b -2 -n 4 --max-k 2
    hilbexact invariant --surface p2 --signature --n 1..6 --method oracle
    hilbexact table 2
    hilbexact compare -a -1 -b 0 --n-max 6 --k-grid 2,75

Exit codes: 0 success, 2 precondition violation, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN
from fractions import Fraction

import mpmath as mp

from .errors import NonConvergenceError, NoAsymptoticError, PreconditionError, UnsupportedHypothesisError
from .qseries import eta_product_series
from .rademacher import DEFAULT_CONVENTION, EtaExponents, InverseConvention, converge, decimal_string, truncated_sum
from .specfun import DEFAULT_BITS, PrecisionContext
from .surfaces import (
    asymptotic_estimate,
    equidistribution_report,
    euler_hilb,
    signature_hilb,
    specialization_exponents,
    surface_asymptotics,
    surface_from_spec,
)
from .tables import build_table, render_decimal

EXIT_OK, EXIT_PRECONDITION, EXIT_NONCONVERGENCE = 0, 2, 3
VALUE_DIGITS = 25

SIGN_NOTE = (
    "note: Z(-1,-1) uses (α,β) = (-(χ+8h10), 4h10), from direct substitution into the product; "
    "the alternative product form with the factors swapped disagrees with it."
)


@dataclass
class RunConfig:
    precision_bits: int = DEFAULT_BITS
    convention: InverseConvention = DEFAULT_CONVENTION
    round_margin: float = 0.25
    output_format: str = "table"
    max_k: int | None = None  # None: adaptive doubling

    @property
    def ctx(self):
        return PrecisionContext(self.precision_bits)


def parse_range(text):
    """``7`` or ``lo..hi`` (inclusive)."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def parse_grid(text):
    return [int(x) for x in text.split(",") if x]


def _fmt(x):
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return render_decimal(x, 20)
    return decimal_string(x, VALUE_DIGITS)


def _emit_rows(header, rows, fmt):
    """Render a list of row tuples as table, csv or json."""
    if fmt == "json":
        return json.dumps([{h: (v if isinstance(v, (int, str)) or v is None else _fmt(v)) for h, v in zip(header, row)} for row in rows], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else (v if isinstance(v, str) else _fmt(v)) for v in row])
        return buf.getvalue().rstrip("\n")
    cells = [[str(h) for h in header]] + [["" if v is None else (v if isinstance(v, str) else _fmt(v)) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def cmd_coeff(args, cfg):
    exps = EtaExponents(args.alpha, args.beta)
    n = args.n[0]
    if cfg.max_k is None:
        value, report = converge(exps, n, convention=cfg.convention, ctx=cfg.ctx, round_margin=cfg.round_margin)
    else:
        report = truncated_sum(exps, n, cfg.max_k, convention=cfg.convention, ctx=cfg.ctx)
        value = None
    if cfg.output_format == "json":
        d = report.to_dict()
        if value is not None:
            d["exact"] = str(value)
        return json.dumps(d, indent=2)
    header = ["alpha", "beta", "n", "N", "precision_bits", "convention", "value", "exact"]
    row = [args.alpha, args.beta, n, report.N, report.precision_bits, report.convention, report.value, value]
    if cfg.output_format == "csv":
        return _emit_rows(header, [row], "csv")
    if value is not None:
        return f"{value}\n(a({args.alpha},{args.beta};{n}) after N={report.N}, {report.precision_bits} bits, h' convention {report.convention}; last truncation {_fmt(report.value)})"
    return f"{_fmt(report.value)}\n(a_{report.N}({args.alpha},{args.beta};{n}), {report.precision_bits} bits, h' convention {report.convention})"


def cmd_invariant(args, cfg):
    surface = surface_from_spec(args.surface)
    fn = euler_hilb if args.invariant == "euler" else signature_hilb
    rows = []
    for n in args.n:
        if args.method == "exact" and cfg.max_k is not None:
            exps = specialization_exponents(surface, 1, 1) if args.invariant == "euler" else specialization_exponents(surface, -1, 1)
            rep = truncated_sum(exps, n, cfg.max_k, convention=cfg.convention, ctx=cfg.ctx)
            sign = (-1) ** n if args.invariant == "signature" else 1
            rows.append((n, sign * rep.value, "exact", rep.N))
            continue
        value, report = fn(surface, n, method=args.method, ctx=cfg.ctx, convention=cfg.convention,
                           round_margin=cfg.round_margin, with_report=True)
        rows.append((n, value, args.method, report.N if report is not None else None))
    out = _emit_rows(["n", "value", "method", "N_used"], rows, cfg.output_format)
    return out


def cmd_table(args, cfg):
    table = build_table(args.which, convention=cfg.convention, ctx=cfg.ctx)
    if cfg.output_format == "json":
        return json.dumps({
            "table": table.number,
            "caption": table.caption,
            "columns": table.columns,
            "rows": [{"label": label, "values": [_fmt(v) for v in values]} for label, values in table.rows],
        }, indent=2)
    mode = ROUND_DOWN if args.rounding == "trunc" else ROUND_HALF_EVEN
    header = ["n"] + [str(c) for c in table.columns]
    rows = [[label] + [render_decimal(v, 4, mode) for v in values] for label, values in table.rows]
    body = _emit_rows(header, rows, cfg.output_format)
    if cfg.output_format == "csv":
        return body
    how = "truncated" if args.rounding == "trunc" else "rounded"
    return f"Table {table.number}: {table.caption}\n{table.header}\nvalues {how} to 4 decimals\n\n{body}"


def cmd_compare(args, cfg):
    exps = EtaExponents(args.alpha, args.beta)
    oracle = eta_product_series(args.alpha, args.beta, args.n_max)
    rows = []
    for n in range(1, args.n_max + 1):
        if not n > exps.p0:
            continue
        for N in args.k_grid:
            t0 = time.perf_counter()
            rep = truncated_sum(exps, n, N, convention=cfg.convention, ctx=cfg.ctx)
            dt = time.perf_counter() - t0
            row = [n, N, rep.value, oracle[n], abs(rep.value - oracle[n])]
            if not args.no_timing:
                row.append(f"{dt:.6f}")
            rows.append(row)
    header = ["n", "N", "a_N", "oracle", "abs_error"] + ([] if args.no_timing else ["seconds"])
    fmt = "csv" if cfg.output_format == "table" else cfg.output_format
    return _emit_rows(header, rows, fmt)


def cmd_series(args, cfg):
    s = eta_product_series(args.alpha, args.beta, args.order)
    if cfg.output_format == "json":
        return s.to_json()
    return _emit_rows(["n", "coefficient"], list(enumerate(s.coeffs)), cfg.output_format)


def cmd_asymptotics(args, cfg):
    rows = []
    if args.surface:
        surface = surface_from_spec(args.surface)
        for n in args.n:
            exact = euler_hilb(surface, n) if args.invariant == "euler" else signature_hilb(surface, n)
            est = surface_asymptotics(surface, args.invariant, n, cfg.ctx)
            rows.append((n, exact, est, None if est == 0 else mp.mpf(exact) / est))
    else:
        oracle = eta_product_series(args.alpha, args.beta, max(args.n))
        for n in args.n:
            est = asymptotic_estimate(EtaExponents(args.alpha, args.beta), n, cfg.ctx)
            rows.append((n, oracle[n], est, None if est == 0 else mp.mpf(oracle[n]) / est))
    return _emit_rows(["n", "exact", "asymptotic", "ratio"], rows, cfg.output_format)


def cmd_equidistribution(args, cfg):
    rep = equidistribution_report(surface_from_spec(args.surface), args.n_max)
    rows = []
    for n in rep.ns:
        b, c = rep.theta.b[n], rep.theta.c[n]
        rows.append([n] + (["flagged"] * 2 if b is None else list(b))
                    + (["flagged"] * 4 if c is None else [c[key] for key in ((0, 0), (0, 1), (1, 0), (1, 1))]))
    header = ["n", "Theta0", "Theta1", "Theta00", "Theta01", "Theta10", "Theta11"]
    body = _emit_rows(header, rows, cfg.output_format)
    if cfg.output_format != "table":
        return body
    lim_b = ", ".join(str(x) for x in rep.b_limit)
    lim_c = ", ".join(str(rep.c_limit[key]) for key in ((0, 0), (0, 1), (1, 0), (1, 1)))
    lines = [
        f"surface {rep.surface.spec()}: χ={rep.surface.chi}, σ={rep.surface.sigma}, h10={rep.surface.h10}",
        f"b* case {rep.b_case}; predicted (Θ0, Θ1) -> ({lim_b}); deviation at n={rep.ns[-1]}: {_fmt(rep.b_deviation) if rep.b_deviation is not None else 'n/a'}",
        f"c* case {rep.c_case}; predicted (Θ00, Θ01, Θ10, Θ11) -> ({lim_c}); deviation at n={rep.ns[-1]}: {_fmt(rep.c_deviation) if rep.c_deviation is not None else 'n/a'}",
        *rep.notes,
        SIGN_NOTE,
        "",
        body,
    ]
    return "\n".join(lines)


def _common(p):
    p.add_argument("--precision", type=int, default=None, help="working precision in bits (default 128, or $HILB_PRECISION)")
    p.add_argument("--convention", choices=[c.value for c in InverseConvention], default=DEFAULT_CONVENTION.value,
                   help="normalization of h' for odd k")
    p.add_argument("--round-margin", type=float, default=0.25)
    p.add_argument("--format", dest="output_format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out", default=None, help="write output to this path")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--max-k", type=int, default=None, help="truncate the k-sums at N")
    g.add_argument("--adaptive", "--exact", dest="adaptive", action="store_true",
                   help="double N until the value rounds stably (default)")


def build_parser():
    parser = argparse.ArgumentParser(prog="hilbexact", description="Exact formulas for invariants of Hilbert schemes of points on surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="a(α,β;n) from the exact formula")
    p.add_argument("-a", "--alpha", type=int, required=True)
    p.add_argument("-b", "--beta", type=int, required=True)
    p.add_argument("-n", "--n", type=parse_range, required=True)
    _common(p)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("invariant", help="χ(Hilb^n) or σ(Hilb^n) for a surface")
    p.add_argument("--surface", required=True, help="preset name or custom:h10,h20,h11")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--euler", dest="invariant", action="store_const", const="euler")
    g.add_argument("--signature", dest="invariant", action="store_const", const="signature")
    p.add_argument("-n", "--n", type=parse_range, required=True)
    p.add_argument("--method", choices=["exact", "oracle"], default="oracle")
    _common(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("table", help="reproduce a numerical table (1, 2, 4 or 5)")
    p.add_argument("which", type=int, choices=[1, 2, 4, 5])
    p.add_argument("--rounding", choices=["trunc", "round"], default="trunc",
                   help="4-decimal display: truncate (default) or round half-even")
    _common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", help="|a_N - oracle| over n and a grid of N")
    p.add_argument("-a", "--alpha", type=int, required=True)
    p.add_argument("-b", "--beta", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-grid", type=parse_grid, default=[2, 5, 10, 20, 40, 75])
    p.add_argument("--no-timing", action="store_true", help="omit the wall-time column")
    _common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("series", help="exact coefficients of prod (1-q^m)^α (1-q^2m)^β")
    p.add_argument("-a", "--alpha", type=int, required=True)
    p.add_argument("-b", "--beta", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("asymptotics", help="closed-form asymptotics against exact values")
    p.add_argument("-a", "--alpha", type=int)
    p.add_argument("-b", "--beta", type=int)
    p.add_argument("--surface")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--euler", dest="invariant", action="store_const", const="euler")
    g.add_argument("--signature", dest="invariant", action="store_const", const="signature")
    p.add_argument("-n", "--n", type=parse_range, required=True)
    _common(p)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("equidistribution", help="Θ ratios with predicted limits")
    p.add_argument("--surface", required=True)
    p.add_argument("--n-max", type=int, default=25)
    _common(p)
    p.set_defaults(func=cmd_equidistribution)
    return parser


def config_from_args(args, environ=os.environ):
    bits = args.precision
    if bits is None:
        bits = int(environ.get("HILB_PRECISION", DEFAULT_BITS))
    return RunConfig(
        precision_bits=bits,
        convention=InverseConvention(args.convention),
        round_margin=args.round_margin,
        output_format=args.output_format,
        max_k=args.max_k,
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "asymptotics":
        if args.surface and args.invariant is None:
            parser.error("asymptotics --surface needs --euler or --signature")
        if not args.surface and (args.alpha is None or args.beta is None):
            parser.error("asymptotics needs --surface or both -a and -b")
    try:
        cfg = config_from_args(args)
        out = args.func(args, cfg)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (UnsupportedHypothesisError, NoAsymptoticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
