"""Seeded Monte Carlo sweeps over group size and topic count.

Each trial draws a Gaussian initial opinion matrix from a random stream keyed
by ``(seed, N, m, trial)``, runs one trajectory and records its outcome.
Per-cell statistics are folded in trial order, so results do not depend on
how many worker processes ran the trials.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .dynamics import validate_initial
from .trajectory import DEFAULT_BUDGET, DEFAULT_ZERO_TOL, OutcomeKind, run_trajectory

log = logging.getLogger(__name__)

DEFAULT_AGENT_COUNTS = (9, 20, 100)
DEFAULT_TOPIC_COUNTS = tuple(range(1, 11))
DEFAULT_TRIALS = 30_000
DEFAULT_STD = 10.0


def chernoff_trials(epsilon: float, delta: float) -> int:
    """Smallest n with ``n >= ln(2/delta) / (2 epsilon^2)``.

    With that many Bernoulli trials the empirical frequency is within
    ``epsilon`` of the true probability with confidence ``1 - delta``
    (two-sided Hoeffding bound).
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    bound = math.log(2.0 / delta) / (2.0 * epsilon * epsilon)
    n = math.ceil(bound)
    # guard against ceil landing one short from rounding in the bound
    while n < bound:
        n += 1
    return max(n, 1)


def hoeffding_epsilon(trials: int, delta: float) -> float:
    """Accuracy guaranteed by ``trials`` samples at confidence ``1 - delta``."""
    return math.sqrt(math.log(2.0 / delta) / (2.0 * trials))


@dataclass(frozen=True)
class ExperimentConfig:
    agent_counts: Sequence[int] = DEFAULT_AGENT_COUNTS
    topic_counts: Sequence[int] = DEFAULT_TOPIC_COUNTS
    trials: int = DEFAULT_TRIALS
    opinion_std: float = DEFAULT_STD
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    zero_tol: float = DEFAULT_ZERO_TOL
    distribution: str = "gaussian"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.opinion_std > 0:
            raise ValueError("opinion_std must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if any(n < 1 for n in self.agent_counts) or any(m < 1 for m in self.topic_counts):
            raise ValueError("agent and topic counts must be positive")
        if self.distribution not in ("gaussian", "uniform"):
            raise ValueError(f"unknown distribution {self.distribution!r}")


@dataclass(frozen=True)
class TrialResult:
    kind: OutcomeKind
    hitting_time: Optional[int]


@dataclass
class CellSummary:
    n_agents: int
    n_topics: int
    trials_run: int = 0
    balanced_count: int = 0
    vanished_count: int = 0
    budget_exceeded_count: int = 0
    hitting_time_total: int = 0

    @property
    def mean_hitting_time(self) -> float:
        if self.balanced_count == 0:
            return math.nan
        return self.hitting_time_total / self.balanced_count

    @property
    def estimated_probability(self) -> float:
        if self.trials_run == 0:
            return math.nan
        return self.balanced_count / self.trials_run

    def add(self, result: TrialResult) -> None:
        self.trials_run += 1
        if result.kind is OutcomeKind.BALANCED:
            self.balanced_count += 1
            self.hitting_time_total += result.hitting_time
        elif result.kind is OutcomeKind.VANISHED:
            self.vanished_count += 1
        else:
            self.budget_exceeded_count += 1

    def as_row(self) -> dict:
        return {
            "n_agents": self.n_agents,
            "n_topics": self.n_topics,
            "trials": self.trials_run,
            "balanced": self.balanced_count,
            "vanished": self.vanished_count,
            "budget_exceeded": self.budget_exceeded_count,
            "p_hat": self.estimated_probability,
            "mean_hitting_time": self.mean_hitting_time,
        }


def trial_stream(seed: int, n_agents: int, n_topics: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, derived only from its coordinates."""
    return np.random.default_rng(np.random.SeedSequence([seed, n_agents, n_topics, trial]))


def sample_initial(
    n_agents: int, n_topics: int, sigma: float, stream: np.random.Generator, distribution: str = "gaussian"
) -> np.ndarray:
    """Draw an N x m opinion matrix with i.i.d. zero-mean entries of scale ``sigma``.

    The whole matrix is redrawn if it happens to contain a zero row or column.
    ``distribution="uniform"`` draws from a zero-mean uniform law with standard
    deviation ``sigma`` instead.
    """
    while True:
        if distribution == "gaussian":
            Y = sigma * stream.standard_normal((n_agents, n_topics))
        else:
            half_width = sigma * math.sqrt(3.0)
            Y = stream.uniform(-half_width, half_width, (n_agents, n_topics))
        if validate_initial(Y).accepted:
            return Y


def run_trial(config: ExperimentConfig, n_agents: int, n_topics: int, trial: int) -> TrialResult:
    stream = trial_stream(config.seed, n_agents, n_topics, trial)
    Y0 = sample_initial(n_agents, n_topics, config.opinion_std, stream, config.distribution)
    out = run_trajectory(Y0, budget=config.budget, zero_tol=config.zero_tol)
    return TrialResult(out.kind, out.hitting_time)


def _run_block(args) -> list[TrialResult]:
    config, n_agents, n_topics, start, stop = args
    return [run_trial(config, n_agents, n_topics, k) for k in range(start, stop)]


def summarize(n_agents: int, n_topics: int, results: Iterable[TrialResult]) -> CellSummary:
    cell = CellSummary(n_agents, n_topics)
    for r in results:
        cell.add(r)
    return cell


def run_cell(config: ExperimentConfig, n_agents: int, n_topics: int, workers: int = 1,
             block_size: int = 250) -> CellSummary:
    blocks = [
        (config, n_agents, n_topics, start, min(start + block_size, config.trials))
        for start in range(0, config.trials, block_size)
    ]
    if workers <= 1:
        results = (r for b in blocks for r in _run_block(b))
        return summarize(n_agents, n_topics, results)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves block order, so aggregation stays in trial order
        results = (r for chunk in pool.map(_run_block, blocks) for r in chunk)
        return summarize(n_agents, n_topics, results)


def run_sweep(config: ExperimentConfig, workers: Optional[int] = 1) -> list[CellSummary]:
    """One :class:`CellSummary` per (N, m) pair, in the order given by the config.

    ``workers=None`` uses every available CPU.
    """
    if workers is None:
        workers = os.cpu_count() or 1
    cells = []
    for n in config.agent_counts:
        for m in config.topic_counts:
            cell = run_cell(config, n, m, workers=workers)
            log.info(
                "N=%d m=%d trials=%d p_hat=%.4f mean_hitting_time=%.3f",
                n, m, cell.trials_run, cell.estimated_probability, cell.mean_hitting_time,
            )
            cells.append(cell)
    return cells
