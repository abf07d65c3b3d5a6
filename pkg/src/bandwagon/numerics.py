"""Small dense symmetric eigenvalue routines (cyclic Jacobi)."""

from __future__ import annotations

import math

import numpy as np

SYMMETRY_TOL = 1e-12
MAX_SWEEPS = 100


class NotSymmetricError(ValueError):
    pass


def _rotate(A: np.ndarray, p: int, q: int) -> None:
    apq = A[p, q]
    if apq == 0.0:
        return
    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    # A <- J^T A J with J the (p, q) Givens rotation
    ap = A[:, p].copy()
    aq = A[:, q].copy()
    A[:, p] = c * ap - s * aq
    A[:, q] = s * ap + c * aq
    rp = A[p, :].copy()
    rq = A[q, :].copy()
    A[p, :] = c * rp - s * rq
    A[q, :] = s * rp + c * rq
    A[p, q] = A[q, p] = 0.0


def _off_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diagonal(A))
    return float(np.linalg.norm(off))


def symmetric_eigenvalues(M) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, ascending.

    Cyclic-by-row Jacobi sweeps run until the off-diagonal Frobenius norm drops
    to ``1e-12 * ||M||_F``.

    Raises:
        NotSymmetricError: if ``M`` is not square or differs from its transpose
            by more than 1e-12 in some entry.
    """
    A = np.array(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {A.shape}")
    if A.size and np.max(np.abs(A - A.T)) > SYMMETRY_TOL:
        raise NotSymmetricError("matrix is not symmetric")
    A = (A + A.T) / 2.0
    n = A.shape[0]
    target = 1e-12 * float(np.linalg.norm(A))
    for _ in range(MAX_SWEEPS):
        if _off_norm(A) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(A, p, q)
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diagonal(A).copy())


def spectral_radius(M) -> float:
    ev = symmetric_eigenvalues(M)
    return float(np.max(np.abs(ev))) if ev.size else 0.0


def default_rank_tol(M: np.ndarray) -> float:
    if M.size == 0:
        return 0.0
    return 1e-9 * max(M.shape) * float(np.max(np.abs(M)))


def singular_values(M) -> np.ndarray:
    """Singular values, descending, as square roots of the eigenvalues of M M^T.

    Eigenvalues of M M^T below ``n * eps * max eigenvalue`` are rounding noise
    from the eigensolver and are reported as exact zeros; without this a
    rank-one matrix would show spurious singular values near sqrt(eps).
    """
    M = np.array(M, dtype=np.float64)
    ev = symmetric_eigenvalues(M @ M.T)
    if ev.size:
        floor = ev.size * np.finfo(np.float64).eps * max(float(ev[-1]), 0.0)
        ev = np.where(ev > floor, ev, 0.0)
    return np.sqrt(ev)[::-1]


def numerical_rank(M, tol: float | None = None) -> int:
    M = np.array(M, dtype=np.float64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if tol is None:
        tol = default_rank_tol(M)
    elif tol <= 0:
        raise ValueError("tol must be positive")
    return int(np.sum(singular_values(M) > tol))
