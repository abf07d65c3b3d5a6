"""Trajectory runs and their classification.

Every trajectory either freezes in finite time at a structurally balanced
modulus-consensus equilibrium ``(p p^T, p a)`` or its opinions decay to zero
while the appraisal matrix stays unbalanced. :func:`run_trajectory` detects
the first case through the (integer-exact) balance of the appraisal matrix and
the second through a max-entry threshold.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .dynamics import (
    InvalidOpinionMatrix,
    ModelState,
    as_opinion_matrix,
    initial_state,
    signed_mean,
    sign_matrix,
    gram,
    step,
    validate_initial,
)
from .signed_graph import certify_balance

DEFAULT_BUDGET = 10_000
DEFAULT_ZERO_TOL = 1e-12


class OutcomeKind(str, enum.Enum):
    BALANCED = "BalancedEquilibrium"
    VANISHED = "VanishedToZero"
    BUDGET_EXCEEDED = "BudgetExceeded"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EquilibriumPoint:
    appraisals: np.ndarray
    opinions: np.ndarray
    faction: np.ndarray
    consensus_row: np.ndarray


@dataclass(frozen=True)
class TraceEntry:
    t: int
    lyapunov: float
    balanced: bool


@dataclass
class TrajectoryOutcome:
    kind: OutcomeKind
    hitting_time: Optional[int]
    final_lyapunov: float
    equilibrium: Optional[EquilibriumPoint] = None
    trace: Optional[list[TraceEntry]] = None
    final_opinions: Optional[np.ndarray] = None
    final_appraisals: Optional[np.ndarray] = None
    # last few opinion matrices, oldest first; kept when record_trace is set
    recent_opinions: Optional[list[np.ndarray]] = None
    steps: int = 0


@dataclass(frozen=True)
class StableSetMembership:
    in_s_stable: bool


def lyapunov(Y) -> float:
    """Sum over topics of the largest absolute opinion."""
    Y = np.asarray(Y, dtype=np.float64)
    if Y.size == 0:
        return 0.0
    return float(np.sum(np.max(np.abs(Y), axis=0)))


def column_maxima(Y) -> np.ndarray:
    return np.max(np.abs(np.asarray(Y, dtype=np.float64)), axis=0)


def is_equilibrium(X, Y, tol: float = 0.0) -> bool:
    """Whether ``(X, Y)`` satisfies ``X = sgn(Y Y^T)`` and ``Y = X Y / N``.

    The sign condition is checked exactly; the opinion condition up to ``tol``
    in the max norm (``tol = 0`` asks for a bit-exact fixed point).
    """
    X = np.asarray(X)
    Y = as_opinion_matrix(Y)
    if X.shape != (Y.shape[0], Y.shape[0]):
        return False
    if not np.array_equal(sign_matrix(gram(Y)), X):
        return False
    return float(np.max(np.abs(Y - signed_mean(X, Y)))) <= tol


def s_stable_membership(X) -> StableSetMembership:
    return StableSetMembership(not certify_balance(X).balanced)


def iterate(Y0) -> Iterator[ModelState]:
    """Yield Y(0), (X(1), Y(1)), (X(2), Y(2)), ... without end."""
    state = initial_state(Y0)
    yield state
    while True:
        state = step(state)
        yield state


def run_trajectory(
    Y0,
    budget: int = DEFAULT_BUDGET,
    zero_tol: float = DEFAULT_ZERO_TOL,
    record_trace: bool = False,
    window: int = 16,
) -> TrajectoryOutcome:
    """Iterate the model from ``Y0`` until it balances, vanishes or runs out of budget.

    At each step the new appraisal matrix is certified first; a balanced one
    means the new opinions already form the equilibrium. Otherwise the step
    counts as vanished once every opinion is below ``zero_tol`` in magnitude.

    Raises:
        InvalidOpinionMatrix: if ``Y0`` has an all-zero row or bad entries.
    """
    if budget < 1:
        raise ValueError("budget must be a positive integer")
    if zero_tol <= 0:
        raise ValueError("zero_tol must be positive")
    Y0 = as_opinion_matrix(Y0)
    report = validate_initial(Y0)
    if report.zero_rows:
        raise InvalidOpinionMatrix(f"zero row(s) in initial opinions: {list(report.zero_rows)}")

    trace = [TraceEntry(0, lyapunov(Y0), False)] if record_trace else None
    recent = deque([Y0], maxlen=window) if record_trace else None

    state = initial_state(Y0)
    for _ in range(budget):
        prev = state
        state = step(state)
        Y, X, t = state.opinions, state.appraisals, state.step_index
        cert = certify_balance(X)
        v = lyapunov(Y)
        if record_trace:
            trace.append(TraceEntry(t, v, cert.balanced))
            recent.append(Y)
        nonzero = bool(np.any(Y != 0.0))
        if cert.balanced and nonzero:
            p = cert.faction
            a = signed_mean(p[None, :], prev.opinions)[0]
            eq = EquilibriumPoint(appraisals=X, opinions=Y, faction=p, consensus_row=a)
            return _outcome(OutcomeKind.BALANCED, t, v, state, trace, recent, equilibrium=eq)
        if float(np.max(np.abs(Y))) < zero_tol:
            return _outcome(OutcomeKind.VANISHED, t, v, state, trace, recent)
    return _outcome(OutcomeKind.BUDGET_EXCEEDED, None, lyapunov(state.opinions), state, trace, recent)


def _outcome(kind, t, v, state, trace, recent, equilibrium=None) -> TrajectoryOutcome:
    return TrajectoryOutcome(
        kind=kind,
        hitting_time=t,
        final_lyapunov=v,
        equilibrium=equilibrium,
        trace=trace,
        final_opinions=state.opinions,
        final_appraisals=state.appraisals,
        recent_opinions=list(recent) if recent is not None else None,
        steps=state.step_index,
    )


def detect_period(trace: Sequence[np.ndarray], window: int) -> Optional[int]:
    """Smallest ``T >= 1`` such that the last ``window`` snapshots repeat with period T.

    Snapshots are compared bit for bit. Returns None when no period fits.
    """
    if window < 1:
        raise ValueError("window must be positive")
    snaps = [np.asarray(y) for y in trace[-window:]]
    n = len(snaps)
    for T in range(1, n):
        if all(np.array_equal(snaps[t + T], snaps[t]) for t in range(n - T)):
            return T
    return None
