"""Command-line entry point.

Commands: fib, alpha, entry-exponent, contract, verify, report-asymptotics,
series.  Exit codes: 0 success, 1 check failure, 2 usage or cache error,
3 factorization budget exhausted.

Cache path precedence: --cache flag, then the FIBDIRICHLET_CACHE environment
variable, then no cache.  All emissions are byte-deterministic for a given
configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import cache as cache_io
from . import verify as verify_mod
from .contraction import CLOSED_FORMS, alpha_contract_iter
from .fib import CONSTANTS, entry_exponent, fib, rank
from .numtheory import BudgetExceededError, DEFAULT_FACTOR_BUDGET, NAMED_FUNCTIONS
from .verify import (
    EULER_SERIES,
    asymptotic_mangoldt_report,
    ep_weighted_sum,
    euler_product_check,
    pi_alpha,
    run_suite,
)

ENV_CACHE = "FIBDIRICHLET_CACHE"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CONTRACTIBLE = ("mu", "lambda", "phi", "one", "divisor_count")
DEFAULT_ASYMPTOTIC_XS = (5, 12, 30, 60, 200)


@dataclass
class Config:
    """Resolved run configuration; every default works with no config file."""

    cache_path: Optional[str] = None
    factor_budget: int = DEFAULT_FACTOR_BUDGET
    output_format: str = "csv"
    precision: int = 12
    out_path: Optional[str] = None
    x_max_defaults: dict = field(default_factory=lambda: {
        "contract": 24,
        "verify": 25,
        "report-asymptotics": DEFAULT_ASYMPTOTIC_XS,
    })


def _fmt_real(value: float, precision: int) -> str:
    return f"{value:.{precision}g}"


def _normalize(value, precision: int, for_json: bool):
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(_fmt_real(value, precision)) if for_json \
            else _fmt_real(value, precision)
    return value


def emit_rows(rows: list[dict], name: str, config: Config) -> None:
    """Write rows as CSV (header + RFC quoting) or a JSON samples object."""
    if config.output_format == "json":
        samples = [{k: _normalize(v, config.precision, True) for k, v in row.items()}
                   for row in rows]
        text = json.dumps({"report": name, "samples": samples},
                          indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            header = list(rows[0].keys())
            writer.writerow(header)
            for row in rows:
                writer.writerow([_normalize(row[k], config.precision, False)
                                 for k in header])
        text = buf.getvalue()
    if config.out_path:
        with open(config.out_path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cache", help="cache file path (FIBDIRICHLET_CACHE "
                                        "overrides the default, flag wins)")
    parser.add_argument("--budget", type=int,
                        help=f"factorization work budget "
                             f"(default {DEFAULT_FACTOR_BUDGET})")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="emission format (default csv)")
    parser.add_argument("--out", help="write emission to this file")
    parser.add_argument("--precision", type=int, default=12,
                        help="decimal digits for emitted reals (default 12)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibdirichlet",
        description="Exact Dirichlet products at Fibonacci numbers: rank of "
                    "apparition, contractions, and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fib", help="print the n-th Fibonacci number")
    p.add_argument("n", type=int)
    _add_common(p)

    p = sub.add_parser("alpha", help="print the rank of apparition of n")
    p.add_argument("n", type=int)
    _add_common(p)

    p = sub.add_parser("entry-exponent",
                       help="print the largest m with n^m dividing F(rank(n))")
    p.add_argument("n", type=int)
    _add_common(p)

    p = sub.add_parser("contract",
                       help="tabulate an iterated contraction against its "
                            "closed form")
    p.add_argument("fn", choices=CONTRACTIBLE)
    p.add_argument("depth_pos", type=int, nargs="?", metavar="depth")
    p.add_argument("n_max_pos", type=int, nargs="?", metavar="n_max")
    p.add_argument("--depth", type=int, help="contraction depth (default 1)")
    p.add_argument("--n-max", type=int, dest="n_max",
                   help="largest index to tabulate (default 24)")
    _add_common(p)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("check", choices=sorted(verify_mod.SUITE) + ["all"])
    p.add_argument("--x", type=float, help="range or argument for the check")
    p.add_argument("--s", type=float, help="Dirichlet series exponent")
    p.add_argument("--n", type=int, help="truncation length / range bound")
    p.add_argument("--which", choices=sorted(EULER_SERIES),
                   help="series selector for euler-product")
    _add_common(p)

    p = sub.add_parser("report-asymptotics",
                       help="emit exact-vs-predicted growth samples")
    p.add_argument("--x", help="comma-separated sample points "
                               f"(default {','.join(map(str, DEFAULT_ASYMPTOTIC_XS))})")
    _add_common(p)

    p = sub.add_parser("series",
                       help="emit truncated Dirichlet series comparisons")
    p.add_argument("--which", choices=sorted(EULER_SERIES) + ["all"],
                   default="all")
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--n", type=int, default=10_000)
    _add_common(p)

    return parser


def _config_from(args: argparse.Namespace) -> Config:
    config = Config()
    config.cache_path = args.cache or os.environ.get(ENV_CACHE) or None
    if args.budget is not None:
        config.factor_budget = args.budget
    config.output_format = args.format
    config.precision = args.precision
    config.out_path = args.out
    return config


def cmd_scalar(args: argparse.Namespace, config: Config) -> int:
    if args.command == "fib":
        print(fib(args.n))
    elif args.command == "alpha":
        print(rank(args.n))
    else:
        print(entry_exponent(args.n))
    return EXIT_OK


def cmd_contract(args: argparse.Namespace, config: Config) -> int:
    depth = args.depth if args.depth is not None else args.depth_pos
    n_max = args.n_max if args.n_max is not None else args.n_max_pos
    if depth is None:
        depth = 1
    if n_max is None:
        n_max = config.x_max_defaults["contract"]
    if depth < 1:
        raise ValueError("depth must be >= 1")
    f = NAMED_FUNCTIONS[args.fn]
    closed = CLOSED_FORMS.get((args.fn, depth))
    rows = []
    for n in range(1, n_max + 1):
        row: dict = {"n": n}
        try:
            row["direct"] = alpha_contract_iter(f, depth, n,
                                                config.factor_budget)
        except BudgetExceededError:
            row["direct"] = "budget-exceeded"
        if closed is not None:
            row["closed_form"] = closed(n)
            row["match"] = ("yes" if row["direct"] == row["closed_form"]
                            else "no" if isinstance(row["direct"], int) else "")
        else:
            row["closed_form"] = ""
            row["match"] = ""
        rows.append(row)
    emit_rows(rows, f"contract-{args.fn}-depth{depth}", config)
    return EXIT_OK


_CHECK_OVERRIDES: dict[str, dict[str, tuple[str, type]]] = {
    "theorem1": {"x": ("x", float)},
    "corollary-mult": {"n": ("n_max", int)},
    "logprod": {"x": ("x", float)},
    "ep-sum": {"x": ("x", int)},
    "pi-alpha": {"x": ("x", int)},
    "phi-identity": {"x": ("x", float)},
    "phi-recursion": {"x": ("x_max", int)},
    "euler-product": {"s": ("s", float), "n": ("n_terms", int),
                      "which": ("which", str)},
}


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    overrides: dict = {}
    for flag, (kwarg, cast) in _CHECK_OVERRIDES.get(args.check, {}).items():
        value = getattr(args, flag)
        if value is not None:
            overrides[kwarg] = cast(value)
    reports = run_suite(args.check, budget=config.factor_budget, **overrides)
    rows = []
    for rep in reports:
        print(f"{'PASS' if rep.passed else 'FAIL'} {rep.check_name} "
              f"[{rep.parameters}]")
        rows.append({
            "check": rep.check_name,
            "parameters": rep.parameters,
            "passed": rep.passed,
            "residual": rep.residual if isinstance(rep.residual, int)
            else float(rep.residual),
        })
    if config.out_path:
        emit_rows(rows, f"verify-{args.check}", config)
    failing = [r for r in reports if not r.passed]
    if failing:
        print(f"FAILED: {failing[0].check_name} [{failing[0].parameters}]",
              file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_report_asymptotics(args: argparse.Namespace, config: Config) -> int:
    if args.x:
        xs = [int(part) for part in args.x.split(",") if part.strip()]
    else:
        xs = list(config.x_max_defaults["report-asymptotics"])
    rows = []
    for sample in asymptotic_mangoldt_report(xs):
        rows.append({"kind": "log_lcm", "x": sample.x,
                     "exact": sample.exact_as_float(),
                     "predicted": sample.predicted, "ratio": sample.ratio})
    for x in xs:
        try:
            _, sample = ep_weighted_sum(x, config.factor_budget)
            rows.append({"kind": "ep_log_sum", "x": x,
                         "exact": sample.exact_as_float(),
                         "predicted": sample.predicted, "ratio": sample.ratio})
        except BudgetExceededError:
            rows.append({"kind": "ep_log_sum", "x": x,
                         "exact": "budget-exceeded",
                         "predicted": CONSTANTS.lcm_growth_constant * x * x,
                         "ratio": ""})
    bound = verify_mod.PRIMITIVE_COUNT_BOUND
    for x in xs:
        try:
            count = pi_alpha(x, config.factor_budget)
            scaled = count * math.log(x) / (x * x) if x > 1 else 0.0
            rows.append({"kind": "pi_alpha_scaled", "x": x, "exact": scaled,
                         "predicted": bound,
                         "ratio": scaled / bound})
        except BudgetExceededError:
            rows.append({"kind": "pi_alpha_scaled", "x": x,
                         "exact": "budget-exceeded", "predicted": bound,
                         "ratio": ""})
    rows.sort(key=lambda r: (r["kind"], r["x"]))
    emit_rows(rows, "asymptotics", config)
    return EXIT_OK


def cmd_series(args: argparse.Namespace, config: Config) -> int:
    names = sorted(EULER_SERIES) if args.which == "all" else [args.which]
    rows = []
    for name in names:
        rep = euler_product_check(name, args.s, args.n)
        detail = rep.details[0]
        rows.append({
            "which": name, "s": args.s, "N": args.n,
            "zeta_times_series": detail["zeta_N_times_D_N"],
            "polynomial": detail["polynomial"],
            "residual": float(rep.residual),
            "tolerance": detail["tolerance"],
            "passed": rep.passed,
        })
    emit_rows(rows, "series", config)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from(args)

    if config.cache_path and os.path.exists(config.cache_path):
        try:
            cache_io.apply_records(cache_io.load_cache_file(config.cache_path))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE

    try:
        if args.command in ("fib", "alpha", "entry-exponent"):
            status = cmd_scalar(args, config)
        elif args.command == "contract":
            status = cmd_contract(args, config)
        elif args.command == "verify":
            status = cmd_verify(args, config)
        elif args.command == "report-asymptotics":
            status = cmd_report_asymptotics(args, config)
        else:
            status = cmd_series(args, config)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if config.cache_path:
        cache_io.save_cache_file(config.cache_path, cache_io.collect_records())
    return status


if __name__ == "__main__":
    sys.exit(main())
