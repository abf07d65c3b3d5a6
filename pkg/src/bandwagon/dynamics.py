"""Coupled appraisal/opinion update.

The appraisal matrix is the entrywise sign of the opinion Gram matrix and the
opinions are then averaged through those signs::

    X(t+1) = sgn(Y(t) Y(t)^T)
    Y(t+1) = X(t+1) Y(t) / N

All arithmetic runs in a fixed order so a trajectory is bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


class InvalidOpinionMatrix(ValueError):
    """Raised when an opinion matrix cannot be fed to the update equations."""


def as_opinion_matrix(Y) -> np.ndarray:
    """Return ``Y`` as a 2-D float64 array, rejecting empty or non-finite input."""
    arr = np.array(Y, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidOpinionMatrix(f"opinion matrix must be a non-empty N x m array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidOpinionMatrix("opinion matrix contains NaN or infinite entries")
    # -0.0 and 0.0 are the same opinion
    arr += 0.0
    return arr


@dataclass(frozen=True)
class ValidationReport:
    zero_rows: tuple[int, ...]
    zero_columns: tuple[int, ...]

    @property
    def accepted(self) -> bool:
        return not self.zero_rows and not self.zero_columns


def validate_initial(Y) -> ValidationReport:
    """List the all-zero rows and columns of an initial opinion matrix.

    Indices are zero-based. Only entries exactly equal to 0.0 count.
    """
    Y = as_opinion_matrix(Y)
    nz = Y != 0.0
    rows = tuple(int(i) for i in np.flatnonzero(~nz.any(axis=1)))
    cols = tuple(int(j) for j in np.flatnonzero(~nz.any(axis=0)))
    return ValidationReport(rows, cols)


def sign_matrix(G: np.ndarray) -> np.ndarray:
    """Entrywise sign as int8; exact zero (of either sign) maps to 0."""
    return (G > 0).astype(np.int8) - (G < 0).astype(np.int8)


def gram(Y: np.ndarray) -> np.ndarray:
    """Y Y^T accumulated topic by topic, left to right."""
    N, m = Y.shape
    G = np.zeros((N, N))
    for k in range(m):
        G += np.multiply.outer(Y[:, k], Y[:, k])
    return G


def appraisal_update(Y) -> np.ndarray:
    """New appraisal matrix ``sgn(Y Y^T)``.

    Raises :class:`InvalidOpinionMatrix` if ``Y`` has an all-zero row, since the
    corresponding diagonal entry would be 0.
    """
    Y = as_opinion_matrix(Y)
    X = sign_matrix(gram(Y))
    bad = np.flatnonzero(np.diagonal(X) != 1)
    if bad.size:
        raise InvalidOpinionMatrix(f"zero row(s) in opinion matrix: {bad.tolist()}")
    return X


def signed_mean(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Compute ``X @ Y / N`` as a running mean over the agent index.

    For each output entry the terms ``X[i, k] * Y[k, j]`` are folded in with
    ``mean += (term - mean) / (k + 1)``. In exact arithmetic this is the plain
    average; in floating point it returns a constant sequence unchanged, which
    keeps balanced equilibria exact fixed points (summing N copies of ``a`` and
    dividing by N does not give ``a`` back in general).
    """
    N = X.shape[1]
    if Y.shape[0] != N:
        raise ValueError(f"dimension mismatch: appraisals are {X.shape}, opinions are {Y.shape}")
    Xf = X.astype(np.float64)
    out = np.multiply.outer(Xf[:, 0], Y[0])
    for k in range(1, N):
        term = np.multiply.outer(Xf[:, k], Y[k])
        out += (term - out) / (k + 1)
    # keep -0.0 out of the state
    out += 0.0
    return out


def opinion_update(X, Y) -> np.ndarray:
    """Signed average ``X Y / N``; the divisor is always the agent count."""
    X = np.asarray(X)
    Y = as_opinion_matrix(Y)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"appraisal matrix must be square, got shape {X.shape}")
    return signed_mean(X, Y)


@dataclass(frozen=True)
class ModelState:
    opinions: np.ndarray
    appraisals: Optional[np.ndarray] = None
    step_index: int = 0

    def __post_init__(self):
        if self.appraisals is not None and self.appraisals.shape[0] != self.opinions.shape[0]:
            raise ValueError("appraisal and opinion matrices disagree on the number of agents")


def initial_state(Y0) -> ModelState:
    return ModelState(opinions=as_opinion_matrix(Y0))


def step(state: ModelState) -> ModelState:
    Y = state.opinions
    X = appraisal_update(Y)
    return ModelState(opinions=signed_mean(X, Y), appraisals=X, step_index=state.step_index + 1)
