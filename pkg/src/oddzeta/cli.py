"""Command-line front end.

    oddzeta compute --s 7 --method geomean --digits 50
    oddzeta table1 --format pretty
    oddzeta table2 --ns 100,200,500,1000
    oddzeta table3 --ns 3,6,9 --nodes 25 --terms 25
    oddzeta fit --ns 100,200,500,1000,2000
    oddzeta figure --min 2 --max 12 --step 0.05 --out fig1.csv

ODDZETA_DIGITS sets the default precision; --digits wins.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .harness import (
    DEFAULT_TABLE2_NS,
    DEFAULT_TABLE3_NS,
    RunConfig,
    Table,
    emit,
    fit_table,
    render,
    run_figure,
    run_table1,
    run_table2,
    run_table3,
)
from .numerics import ZetaError, format_sci
from .odd_estimator import asymptotic_zeta, zeta_odd_geomean
from .reference_methods import series_sweep, zeta_integral_method
from .zeta_core import Method, zeta_even, zeta_reference

ENV_DIGITS = "ODDZETA_DIGITS"


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None, help=f"decimal digits (env {ENV_DIGITS}, default 40)")
    common.add_argument("--format", choices=["csv", "json", "pretty"], default="csv")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--paper-quirks", action="store_true", help="append notes on known misprints")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="oddzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="evaluate zeta(s) by one method")
    p.add_argument("--s", required=True)
    p.add_argument("--method", choices=[m.value for m in Method if m not in (Method.BOUNDS_L, Method.BOUNDS_R)],
                   default="reference")
    p.add_argument("--nodes", type=int, default=25)
    p.add_argument("--terms", type=int, default=25)

    sub.add_parser("table1", parents=[common], help="geometric-mean values for n = 1..10")

    p = sub.add_parser("table2", parents=[common], help="errors at large n")
    p.add_argument("--ns", type=_int_list, default=list(DEFAULT_TABLE2_NS))

    p = sub.add_parser("table3", parents=[common], help="integral vs series vs geometric mean")
    p.add_argument("--ns", type=_int_list, default=list(DEFAULT_TABLE3_NS))
    p.add_argument("--nodes", type=int, default=25)
    p.add_argument("--terms", type=int, default=25)

    p = sub.add_parser("fit", parents=[common], help="least-squares fit of lg(error) against n")
    p.add_argument("--ns", type=_int_list, default=list(DEFAULT_TABLE2_NS))

    p = sub.add_parser("figure", parents=[common], help="asymptotic formula on a grid of s")
    p.add_argument("--min", dest="s_min", default="2")
    p.add_argument("--max", dest="s_max", default="12")
    p.add_argument("--step", default="0.05")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    digits = args.digits
    if digits is None:
        digits = int(os.environ.get(ENV_DIGITS, 40))
    return RunConfig(
        command=args.command,
        digits=digits,
        method=getattr(args, "method", None),
        s=getattr(args, "s", None),
        ns=getattr(args, "ns", None),
        s_min=getattr(args, "s_min", None),
        s_max=getattr(args, "s_max", None),
        step=getattr(args, "step", None),
        nodes=getattr(args, "nodes", 25),
        terms=getattr(args, "terms", 25),
        format=args.format,
        out=args.out,
        paper_quirks=args.paper_quirks,
    )


def _odd_index(s: Fraction, method: str) -> int:
    if s.denominator != 1 or s.numerator % 2 == 0 or s < 3:
        raise ValueError(f"method {method} needs an odd integer s >= 3, got {s}")
    return (s.numerator - 1) // 2


def compute(config: RunConfig) -> Table:
    ctx = config.ctx
    s = Fraction(config.s)
    method = Method(config.method)
    if s < 2:
        raise ValueError(f"s must be >= 2, got {s}")
    if method is Method.EXACT_EVEN:
        if s.denominator != 1 or s.numerator % 2:
            raise ValueError(f"method exact-even needs an even integer s, got {s}")
        value = zeta_even(s.numerator // 2, ctx).value
    elif method is Method.REFERENCE:
        value = zeta_reference(s, ctx).value
    elif method is Method.GEOMEAN:
        value = zeta_odd_geomean(_odd_index(s, method.value), ctx, with_reference=False).zeta_gm
    elif method is Method.ASYMPTOTIC:
        value = asymptotic_zeta(s, ctx)
    elif method is Method.INTEGRAL:
        value = zeta_integral_method(s, config.nodes, ctx).value
    else:
        n = _odd_index(s, method.value)
        value = series_sweep(n, config.terms, ctx)[n].value
    ref = zeta_reference(s, ctx).value
    mp = ctx.mp
    row = {
        "s": config.s,
        "method": method.value,
        "value": mp.nstr(value, ctx.digits),
        "reference": mp.nstr(ref, ctx.digits),
        "abs_error": format_sci(abs(value - ref), 3),
        "digits": ctx.digits,
    }
    return Table("compute", list(row), [row])


def run(config: RunConfig) -> Table:
    ctx = config.ctx
    if config.command == "compute":
        return compute(config)
    if config.command == "table1":
        return run_table1(ctx)
    if config.command == "table2":
        return run_table2(config.ns, ctx)
    if config.command == "table3":
        return run_table3(config.ns, config.nodes, config.terms, ctx)
    if config.command == "fit":
        return fit_table(config.ns, ctx)
    return run_figure(config.s_min, config.s_max, config.step, ctx)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config(args)
        emit(render(run(config), config), config.out)
    except (ZetaError, ValueError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
