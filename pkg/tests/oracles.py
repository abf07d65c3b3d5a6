"""Brute-force reference predicates used by the tests.

Nothing here calls into the balance code under test.
"""

import itertools

import numpy as np


def complete_sign_patterns(N):
    """Every symmetric {-1, 1} matrix with unit diagonal."""
    pairs = list(itertools.combinations(range(N), 2))
    for signs in itertools.product([-1, 1], repeat=len(pairs)):
        X = np.eye(N, dtype=int)
        for (i, j), s in zip(pairs, signs):
            X[i, j] = X[j, i] = s
        yield X


def has_outer_factorization(X):
    N = len(X)
    return any(np.array_equal(np.outer(p, p), X) for p in itertools.product([-1, 1], repeat=N))


def rows_pairwise_equal_or_opposite(X):
    N = len(X)
    return all(
        all(X[a][k] == X[b][k] for k in range(N)) or all(X[a][k] == -X[b][k] for k in range(N))
        for a in range(N) for b in range(N)
    )


def has_two_faction_partition(X):
    """Try every split into two (possibly empty) factions."""
    N = len(X)
    for labels in itertools.product([0, 1], repeat=N):
        ok = True
        for i in range(N):
            for j in range(N):
                if i == j or X[i][j] == 0:
                    continue
                same = labels[i] == labels[j]
                if (same and X[i][j] < 0) or (not same and X[i][j] > 0):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def triads_all_balanced(X):
    N = len(X)
    return all(
        X[i][j] * X[j][k] * X[k][i] == 1
        for i, j, k in itertools.permutations(range(N), 3)
    )


def connected_by_union_find(X):
    N = len(X)
    parent = list(range(N))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(N):
        for j in range(i + 1, N):
            if X[i][j] != 0:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(N)}) == 1
