"""Structural balance and connectivity for signed appraisal matrices.

Appraisal matrices live in the set of symmetric {-1, 0, 1} matrices with unit
diagonal. A complete (zero-free) member is structurally balanced exactly when
it factors as ``p p^T`` for a sign vector ``p``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np


class NotAnAppraisalMatrix(ValueError):
    pass


def check_appraisal_matrix(X) -> np.ndarray:
    """Return ``X`` as an int8 array after checking it is square, symmetric,
    {-1, 0, 1}-valued and has a unit diagonal."""
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise NotAnAppraisalMatrix(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isin(A, (-1, 0, 1))):
        raise NotAnAppraisalMatrix("entries must be -1, 0 or 1")
    A = A.astype(np.int8)
    if not np.array_equal(A, A.T):
        raise NotAnAppraisalMatrix("appraisal matrix must be symmetric")
    if not np.all(np.diagonal(A) == 1):
        raise NotAnAppraisalMatrix("appraisal matrix must have a unit diagonal")
    return A


def is_appraisal_matrix(X) -> bool:
    try:
        check_appraisal_matrix(X)
    except NotAnAppraisalMatrix:
        return False
    return True


def canonical_faction(p) -> np.ndarray:
    """Flip ``p`` so that its first entry is +1."""
    p = np.asarray(p, dtype=np.int8)
    return p if p[0] == 1 else -p


@dataclass(frozen=True)
class BalanceCertificate:
    balanced: bool
    faction: Optional[np.ndarray] = None


def rank_one_sign_check(M) -> Optional[np.ndarray]:
    """Return the canonical ``p`` with ``M == p p^T``, or None.

    Reads the candidate from the first row and verifies every entry.
    """
    M = np.asarray(M)
    p = M[0].astype(np.int8)
    if np.any(p == 0):
        return None
    if not np.array_equal(np.multiply.outer(p, p), M):
        return None
    return canonical_faction(p)


def certify_balance(X) -> BalanceCertificate:
    """Structural-balance certificate for a matrix in the appraisal set.

    Any zero off-diagonal entry means "not balanced": equilibria of the
    dynamics need a complete appraisal network.
    """
    p = rank_one_sign_check(X)
    if p is None:
        return BalanceCertificate(False)
    return BalanceCertificate(True, p)


def is_balanced(X) -> bool:
    return rank_one_sign_check(X) is not None


def all_triads_balanced(X) -> bool:
    """True iff ``X[i,j] * X[j,k] * X[k,i] == 1`` for every triple of distinct
    agents. Only defined for complete sign matrices."""
    A = np.asarray(X).astype(np.int64)
    if np.any(A == 0):
        raise ValueError("triad signs are undefined for matrices with zero entries")
    n = A.shape[0]
    # T[i, j, k] = X_ij X_jk X_ki
    T = A[:, :, None] * A[None, :, :] * A.T[:, None, :]
    i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    distinct = (i != j) & (j != k) & (i != k)
    return bool(np.all(T[distinct] == 1))


def rows_equal_or_opposite(X) -> bool:
    A = np.asarray(X)
    for a in range(A.shape[0]):
        for b in range(a + 1, A.shape[0]):
            if not (np.array_equal(A[a], A[b]) or np.array_equal(A[a], -A[b])):
                return False
    return True


def two_faction_partition(X) -> Optional[np.ndarray]:
    """Search for a labelling into two factions by graph 2-colouring.

    Positive edges must join agents of the same faction, negative edges agents
    of opposite factions. Returns the canonical labelling or None. Works on
    any matrix in the appraisal set; zero entries impose no constraint.
    """
    A = np.asarray(X)
    n = A.shape[0]
    label = np.zeros(n, dtype=np.int8)
    for root in range(n):
        if label[root]:
            continue
        label[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(A[u]):
                if v == u:
                    continue
                want = label[u] * A[u, v]
                if label[v] == 0:
                    label[v] = want
                    queue.append(v)
                elif label[v] != want:
                    return None
    return canonical_faction(label)


def is_connected(X) -> bool:
    """Connectivity of the graph with an edge wherever an off-diagonal entry is nonzero."""
    A = np.asarray(X)
    n = A.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in np.flatnonzero(A[u]):
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return bool(seen.all())
