"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 invalid input matrix.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import fields

import numpy as np

from . import io as bio
from .dynamics import InvalidOpinionMatrix, validate_initial
from .montecarlo import (
    DEFAULT_STD,
    ExperimentConfig,
    chernoff_trials,
    hoeffding_epsilon,
    run_sweep,
)
from .numerics import symmetric_eigenvalues
from .signed_graph import all_triads_balanced, certify_balance, is_connected, two_faction_partition
from .trajectory import DEFAULT_BUDGET, DEFAULT_ZERO_TOL, run_trajectory

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INVALID = 4

SEED_ENV = "BANDWAGON_SEED"

log = logging.getLogger("bandwagon")


def int_list(text: str) -> list[int]:
    """Parse ``"9,20,100"``, ``"1..10"`` or a mix such as ``"1..3,5"``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None
    if not out or any(v < 1 for v in out):
        raise argparse.ArgumentTypeError(f"values must be positive integers: {text!r}")
    return out


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def unit_interval(text: str) -> float:
    v = positive_float(text)
    if v >= 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1): {text!r}")
    return v


def seed_value(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandwagon",
        description="Signed-appraisal opinion dynamics: simulate, sweep, check balance.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    sim = sub.add_parser("simulate", help="run a single trajectory")
    src = sim.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="CSV", help="initial opinion matrix, one agent per line")
    src.add_argument("--matrix", metavar="SPEC", help='inline matrix, rows separated by ";", e.g. "1,0.1;2,-0.1"')
    sim.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)
    sim.add_argument("--zero-tol", type=positive_float, default=DEFAULT_ZERO_TOL)
    sim.add_argument("--trace", action="store_true", help="print t, V(Y(t)) and the balance flag per step")
    sim.add_argument("--allow-zero-columns", action="store_true")
    sim.add_argument("--json", action="store_true", help="print the outcome as JSON")

    sw = sub.add_parser("sweep", help="Monte Carlo sweep over agent and topic counts")
    sw.add_argument("--config", metavar="JSON", help="experiment config file; flags override its values")
    sw.add_argument("--agents", type=int_list, help="agent counts, e.g. 9,20,100")
    sw.add_argument("--topics", type=int_list, help="topic counts, e.g. 1..10")
    sw.add_argument("--trials", type=positive_int)
    sw.add_argument("--std", type=positive_float, help=f"Gaussian standard deviation (default {DEFAULT_STD:g})")
    sw.add_argument("--seed", type=seed_value, help=f"random seed (env {SEED_ENV} is used if absent)")
    sw.add_argument("--budget", type=positive_int)
    sw.add_argument("--zero-tol", type=positive_float)
    sw.add_argument("--distribution", choices=("gaussian", "uniform"))
    sw.add_argument("--workers", type=positive_int, default=1)
    sw.add_argument("--out", required=True, metavar="PATH", help="results file")
    sw.add_argument("--format", choices=tuple(bio.FORMATTERS), help="output format (default: from extension)")
    sw.add_argument("--svg", metavar="PATH", help="also write the native SVG chart")
    sw.add_argument("--figure", metavar="PATH", help="also render a matplotlib figure (png, pdf, svg)")

    bc = sub.add_parser("balance-check", help="certify structural balance of a sign matrix")
    bc.add_argument("--matrix", required=True, metavar="CSV", help="appraisal matrix with entries -1/0/1")

    ch = sub.add_parser("chernoff", help="trials needed for accuracy epsilon at confidence 1-delta")
    ch.add_argument("--epsilon", type=unit_interval, required=True)
    ch.add_argument("--delta", type=unit_interval, required=True)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _fmt_row(values) -> str:
    return "[" + ", ".join(f"{v:.17g}" for v in values) + "]"


def cmd_simulate(args) -> int:
    if args.input is not None:
        Y0 = bio.read_opinion_csv(args.input, allow_zero_columns=args.allow_zero_columns)
    else:
        Y0 = bio.parse_inline_matrix(args.matrix)
    report = validate_initial(Y0)
    if report.zero_rows:
        raise bio.MatrixFormatError(f"zero row(s) {[i + 1 for i in report.zero_rows]}")
    if report.zero_columns and not args.allow_zero_columns:
        raise bio.MatrixFormatError(f"zero column(s) {[j + 1 for j in report.zero_columns]}")
    status = "accepted" if report.accepted else "accepted with zero columns"
    print(f"initial condition: {Y0.shape[0]} agents x {Y0.shape[1]} topics, {status}")

    out = run_trajectory(Y0, budget=args.budget, zero_tol=args.zero_tol, record_trace=args.trace)
    if args.json:
        doc = {
            "outcome": out.kind.value,
            "hitting_time": out.hitting_time,
            "steps": out.steps,
            "final_lyapunov": out.final_lyapunov,
            "final_appraisals": out.final_appraisals.tolist(),
            "final_opinions": out.final_opinions.tolist(),
        }
        if out.equilibrium is not None:
            doc["faction"] = out.equilibrium.faction.tolist()
            doc["consensus_row"] = out.equilibrium.consensus_row.tolist()
        if out.trace is not None:
            doc["trace"] = [[e.t, e.lyapunov, e.balanced] for e in out.trace]
        print(json.dumps(doc, indent=2))
        return EXIT_OK

    if out.trace is not None:
        print("t,V,balanced")
        for e in out.trace:
            print(f"{e.t},{e.lyapunov:.17g},{int(e.balanced)}")
    print(f"outcome: {out.kind.value}")
    print(f"hitting_time: {out.hitting_time if out.hitting_time is not None else '-'}")
    print(f"steps: {out.steps}")
    print(f"final_lyapunov: {out.final_lyapunov:.17g}")
    print("appraisal sign pattern:")
    print(bio.format_sign_csv(out.final_appraisals), end="")
    if out.equilibrium is not None:
        print("faction: " + ",".join(str(int(v)) for v in out.equilibrium.faction))
        print("consensus_row: " + _fmt_row(out.equilibrium.consensus_row))
    return EXIT_OK


def _load_config(args) -> ExperimentConfig:
    values = {}
    if args.config:
        with open(args.config) as fh:
            values = json.load(fh)
        known = {f.name for f in fields(ExperimentConfig)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    flag_map = {
        "agents": "agent_counts",
        "topics": "topic_counts",
        "trials": "trials",
        "std": "opinion_std",
        "budget": "budget",
        "zero_tol": "zero_tol",
        "distribution": "distribution",
    }
    for flag, key in flag_map.items():
        v = getattr(args, flag)
        if v is not None:
            values[key] = v
    if args.seed is not None:
        values["seed"] = args.seed
    elif os.environ.get(SEED_ENV):
        values["seed"] = seed_value(os.environ[SEED_ENV])
    for key in ("agent_counts", "topic_counts"):
        if key in values:
            values[key] = tuple(values[key])
    return ExperimentConfig(**values)


def cmd_sweep(args) -> int:
    try:
        config = _load_config(args)
    except (ValueError, TypeError, argparse.ArgumentTypeError) as exc:
        print(f"bandwagon sweep: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = run_sweep(config, workers=args.workers)
    fmt = args.format or bio.format_from_path(args.out)
    bio.write_outputs(results, fmt, args.out)
    if args.svg:
        bio.write_outputs(results, "svg", args.svg)
    if args.figure:
        from .plotting import save_sweep_figure

        save_sweep_figure(results, args.figure)
    print(bio.results_csv(results), end="")
    eps = hoeffding_epsilon(config.trials, 0.01)
    print(f"# {config.trials} trials per cell: p_hat within {eps:.4f} of p with confidence 0.99")
    return EXIT_OK


def cmd_balance_check(args) -> int:
    X = bio.read_sign_csv(args.matrix)
    n = X.shape[0]
    cert = certify_balance(X)
    print(f"agents: {n}")
    print(f"balanced: {str(cert.balanced).lower()}")
    if cert.balanced:
        print("faction: " + ",".join(str(int(v)) for v in cert.faction))
    complete = not np.any(X == 0)
    print(f"complete: {str(complete).lower()}")
    if complete and n >= 3:
        print(f"all_triads_balanced: {str(all_triads_balanced(X)).lower()}")
    partition = two_faction_partition(X)
    print(f"two_faction_partition: {'-' if partition is None else ','.join(str(int(v)) for v in partition)}")
    print(f"connected: {str(is_connected(X)).lower()}")
    print(f"in_s_stable: {str(not cert.balanced).lower()}")
    ev = symmetric_eigenvalues(X / n)
    print("eigenvalues(X/N): " + _fmt_row(ev))
    return EXIT_OK


def cmd_chernoff(args) -> int:
    print(chernoff_trials(args.epsilon, args.delta))
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "balance-check": cmd_balance_check,
    "chernoff": cmd_chernoff,
}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%H:%M:%S",
    )
    try:
        return COMMANDS[args.command](args)
    except (bio.MatrixFormatError, InvalidOpinionMatrix) as exc:
        print(f"bandwagon: invalid input matrix: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"bandwagon: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
