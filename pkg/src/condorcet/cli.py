"""Command-line entry point.

Every invocation emits a run record (command, parameters, results, seed,
version, wall time) so any published number can be reproduced from its own
output.  Randomized commands accept --seed; when omitted a seed is drawn
and printed with the results.

Exit codes: 0 success, 1 usage or input error, 2 verification violations,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import secrets
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from . import __version__
from .asymptotic import (
    estimate_leading_constant,
    impartial_leading_term,
    min_prob_large_k_rate,
    min_prob_large_n_leading,
)
from .cultures import cyclic_culture, impartial_culture
from .exact import (
    MAX_WINNER_CHECKS,
    condorcet_probability,
    marginal_lower_bound,
    min_condorcet_probability,
)
from .model import MAX_EXPLICIT_SUPPORT, CapExceededError, Culture, load_culture
from .montecarlo import estimate_condorcet_probability, sweep
from .verify import SUITES, run_suites


@dataclass
class RunRecord:
    command: str
    parameters: dict
    results: dict
    seed: Optional[int]
    version: str
    wall_time_ms: int


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this CLI reserves 2 for verification
    violations, so usage errors remap to exit 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_voter_args(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--voters", type=int, help="odd voter count 2k-1 (the native parameterization)"
    )
    group.add_argument("--k", type=int, help="majority threshold k (alias for 2k-1 voters)")


def _resolve_k(args: argparse.Namespace) -> int:
    if args.k is not None:
        if args.k < 1:
            raise ValueError("k must be at least 1")
        return args.k
    voters = args.voters
    if voters < 1 or voters % 2 == 0:
        raise ValueError(f"voter count must be odd and positive, got {voters}")
    return (voters + 1) // 2


def _add_culture_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--culture",
        required=True,
        help="'impartial', 'cyclic' (with --n), or a path to a culture file",
    )
    sub.add_argument("--n", type=int, help="alternative count for named cultures")


def _resolve_culture(args: argparse.Namespace) -> Culture:
    name = args.culture
    if name == "impartial" or name == "cyclic":
        if args.n is None:
            raise ValueError(f"--n is required with --culture {name}")
        if args.n < 1:
            raise ValueError("n must be at least 1")
        return impartial_culture(args.n) if name == "impartial" else cyclic_culture(args.n)
    culture = load_culture(name)
    if args.n is not None and args.n != culture.n:
        raise ValueError(f"--n {args.n} does not match culture file n={culture.n}")
    return culture


def _add_common_output_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "csv", "human"), default="human")
    sub.add_argument("--out", help="also write the rendered report to this path")


def _fraction_fields(value: Fraction) -> Tuple[str, float]:
    return str(value), float(value)


def _cmd_exact(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    k = _resolve_k(args)
    culture = _resolve_culture(args)
    result = condorcet_probability(
        culture,
        k,
        max_winner_checks=args.max_winner_checks,
        max_support=args.max_support,
        workers=args.workers,
    )
    rational, decimal = _fraction_fields(result.value)
    return {
        "value": rational,
        "value_float": decimal,
        "method": result.method,
        "per_alternative": [str(p) for p in result.per_alternative],
        "n": culture.n,
        "k": k,
    }, None


def _cmd_minprob(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    k = _resolve_k(args)
    if args.n < 1:
        raise ValueError("n must be at least 1")
    value = min_condorcet_probability(args.n, k)
    rational, decimal = _fraction_fields(value)
    return {"value": rational, "value_float": decimal, "n": args.n, "k": k}, None


def _cmd_lowerbound(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    k = _resolve_k(args)
    culture = _resolve_culture(args)
    value = marginal_lower_bound(culture, k)
    rational, decimal = _fraction_fields(value)
    return {
        "value": rational,
        "value_float": decimal,
        "method": "marginal_bound",
        "n": culture.n,
        "k": k,
    }, None


def _cmd_simulate(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    k = _resolve_k(args)
    culture = _resolve_culture(args)
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    estimate = estimate_condorcet_probability(
        culture, k, args.samples, seed=seed, workers=args.workers
    )
    return {
        "p_hat": estimate.p_hat,
        "samples": estimate.samples,
        "std_error": estimate.std_error,
        "ci_low": estimate.ci_low,
        "ci_high": estimate.ci_high,
        "seed": estimate.seed,
        "n": culture.n,
        "k": k,
    }, seed


def _cmd_sweep(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    k = _resolve_k(args)
    n_values = [int(part) for part in args.n_values.split(",") if part.strip()]
    if not n_values and args.n_values.strip():
        raise ValueError(f"could not parse --n-values {args.n_values!r}")
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    cells = sweep(args.family, k, n_values, args.samples, seed=seed, workers=args.workers)
    rows = [
        {
            "n": n,
            "k": k,
            "p_hat": est.p_hat,
            "std_error": est.std_error,
            "ci_low": est.ci_low,
            "ci_high": est.ci_high,
            "seed": est.seed,
        }
        for n, est in cells
    ]
    return {"cells": rows}, seed


def _cmd_ck(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    estimate = estimate_leading_constant(
        args.k, target_error=args.target_error, reduced=not args.full
    )
    return {
        "k": estimate.k,
        "value": estimate.value,
        "quadrature_error": estimate.quadrature_error,
        "truncation_bound": estimate.truncation_bound,
        "truncation_a": estimate.truncation_a,
        "total_error": estimate.total_error,
    }, None


def _cmd_asymptote(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    k = _resolve_k(args)
    n = args.n
    if n is None:
        raise ValueError("--n is required")
    if args.mode == "large-n":
        exact = float(min_condorcet_probability(n, k))
        leading = min_prob_large_n_leading(n, k)
        return {
            "mode": "large-n",
            "n": n,
            "k": k,
            "exact_min_prob": exact,
            "leading_term": leading,
            "relative_deviation": abs(exact - leading) / leading,
        }, None
    if args.mode == "large-k":
        rate = min_prob_large_k_rate(n)
        import math

        empirical = -math.log(min_condorcet_probability(n, k)) / k
        return {
            "mode": "large-k",
            "n": n,
            "k": k,
            "decay_rate": rate,
            "empirical_rate": empirical,
            "relative_deviation": abs(empirical - rate) / rate,
        }, None
    if args.constant is None:
        raise ValueError("--constant is required with --mode impartial")
    return {
        "mode": "impartial",
        "n": n,
        "k": k,
        "constant": args.constant,
        "leading_term": impartial_leading_term(n, k, args.constant),
    }, None


def _cmd_verify(args: argparse.Namespace) -> Tuple[dict, Optional[int]]:
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    reports = run_suites([args.suite], seed=seed)
    rows = []
    for report in reports:
        worst = report.worst_witness or {}
        rows.append(
            {
                "name": report.name,
                "trials": report.trials,
                "violations": report.violations,
                "worst_margin": worst.get("margin"),
                "worst_inequality": worst.get("inequality"),
            }
        )
    return {
        "reports": rows,
        "violations_total": sum(r.violations for r in reports),
    }, seed


def build_parser() -> _Parser:
    parser = _Parser(prog="condorcet", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub = subparsers.add_parser("exact", help="exact probability by enumeration")
    _add_culture_args(sub)
    _add_voter_args(sub)
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--max-winner-checks", type=int, default=MAX_WINNER_CHECKS)
    sub.add_argument("--max-support", type=int, default=MAX_EXPLICIT_SUPPORT)
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_exact)

    sub = subparsers.add_parser("minprob", help="closed-form minimum probability")
    sub.add_argument("--n", type=int, required=True)
    _add_voter_args(sub)
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_minprob)

    sub = subparsers.add_parser("lowerbound", help="marginal lower bound")
    _add_culture_args(sub)
    _add_voter_args(sub)
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_lowerbound)

    sub = subparsers.add_parser("simulate", help="Monte Carlo estimate")
    _add_culture_args(sub)
    _add_voter_args(sub)
    sub.add_argument("--samples", type=int, required=True)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--workers", type=int, default=1)
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_simulate)

    sub = subparsers.add_parser("sweep", help="estimates across n for a culture family")
    sub.add_argument("--family", choices=("impartial", "cyclic"), required=True)
    _add_voter_args(sub)
    sub.add_argument("--n-values", required=True, help="comma-separated list, e.g. 200,800")
    sub.add_argument("--samples", type=int, required=True)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--workers", type=int, default=1)
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_sweep)

    sub = subparsers.add_parser("ck", help="orthant-integral constant with error bounds")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--target-error", type=float, default=0.1)
    sub.add_argument("--full", action="store_true", help="skip the dimension reduction")
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_ck)

    sub = subparsers.add_parser("asymptote", help="closed form against its asymptotic forms")
    sub.add_argument("--mode", choices=("large-n", "large-k", "impartial"), required=True)
    sub.add_argument("--n", type=int, required=True)
    _add_voter_args(sub)
    sub.add_argument("--constant", type=float, help="leading constant for --mode impartial")
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_asymptote)

    sub = subparsers.add_parser("verify", help="run inequality suites")
    sub.add_argument("--suite", default="all", choices=("all",) + tuple(SUITES))
    sub.add_argument("--seed", type=int)
    _add_common_output_args(sub)
    sub.set_defaults(handler=_cmd_verify)

    return parser


def _render_json(record: RunRecord) -> str:
    return json.dumps(asdict(record), indent=2, default=str)


def _csv_rows(record: RunRecord) -> List[List[str]]:
    results = record.results
    if "cells" in results:
        header = ["n", "k", "p_hat", "std_error", "ci_low", "ci_high", "seed"]
        rows = [header]
        for cell in results["cells"]:
            rows.append([str(cell[field]) for field in header])
        return rows
    if "reports" in results:
        header = ["name", "trials", "violations", "worst_margin"]
        rows = [header]
        for report in results["reports"]:
            rows.append([str(report[field]) for field in header])
        rows.append(["violations_total", str(results["violations_total"]), "", ""])
        return rows
    rows = []
    for key, value in results.items():
        if isinstance(value, list):
            value = ";".join(str(v) for v in value)
        rows.append([key, str(value)])
    return rows


def _render_csv(record: RunRecord) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(_csv_rows(record))
    return buffer.getvalue().rstrip("\n")


def _render_human(record: RunRecord) -> str:
    lines = [f"command: {record.command}"]
    results = record.results
    if "cells" in results:
        header = ["n", "k", "p_hat", "std_error", "ci_low", "ci_high", "seed"]
        lines.append("  ".join(header))
        for cell in results["cells"]:
            lines.append("  ".join(str(cell[field]) for field in header))
    elif "reports" in results:
        for report in results["reports"]:
            lines.append(
                f"{report['name']}: trials={report['trials']} "
                f"violations={report['violations']} worst_margin={report['worst_margin']}"
            )
        lines.append(f"violations_total: {results['violations_total']}")
    else:
        for key, value in results.items():
            if isinstance(value, list):
                value = ", ".join(str(v) for v in value)
            lines.append(f"{key}: {value}")
    if record.seed is not None:
        lines.append(f"seed: {record.seed}")
    lines.append(f"version: {record.version}")
    lines.append(f"wall_time_ms: {record.wall_time_ms}")
    return "\n".join(lines)


_RENDERERS: dict = {"json": _render_json, "csv": _render_csv, "human": _render_human}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, execute, print the report, return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        results, seed = args.handler(args)
    except CapExceededError as exc:
        print(f"condorcet: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"condorcet: error: {exc}", file=sys.stderr)
        return 1
    wall_ms = int((time.monotonic() - start) * 1000)
    parameters = {
        key: value
        for key, value in vars(args).items()
        if key not in ("handler", "format", "out") and value is not None
    }
    record = RunRecord(args.command, parameters, results, seed, __version__, wall_ms)
    text = _RENDERERS[args.format](record)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.command == "verify" and results["violations_total"] > 0:
        return 2
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
