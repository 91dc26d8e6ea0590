"""Brute-force references kept independent of the package's fast paths."""

import itertools

import numpy as np

from sparse_logdet.matrix import from_dense

# the displayed 4x4 matrix of the 2x2 grid
L22 = np.array(
    [
        [4.0, -1.0, -1.0, 0.0],
        [-1.0, 4.0, 0.0, -1.0],
        [-1.0, 0.0, 4.0, -1.0],
        [0.0, -1.0, -1.0, 4.0],
    ]
)


def boolean_power_pattern(M, j):
    """Structural nonzeros of M**j by repeated dense boolean products."""
    B = (np.asarray(M) != 0).astype(np.int64)
    P = B.copy()
    for _ in range(j - 1):
        P = ((P @ B) > 0).astype(np.int64)
    return P > 0


def brute_pivot(M):
    """1 / inv(M)[-1, -1] through an explicit dense inverse."""
    return 1.0 / np.linalg.inv(M)[-1, -1]


def brute_logdet(M):
    sign, val = np.linalg.slogdet(M)
    assert sign > 0
    return val


def brute_estimates(M, m):
    """D^1..D^m straight from the definitions with dense arrays only."""
    M = np.asarray(M)
    n = M.shape[0]
    out = []
    for j in range(1, m + 1):
        P = boolean_power_pattern(M, j)
        total = 0.0
        for i in range(n):
            beta = [c for c in range(i + 1) if P[i, c]]
            total += np.log(brute_pivot(M[np.ix_(beta, beta)]))
        out.append(total)
    return out


def random_spd_dense(n, rng, shift=0.1):
    G = rng.standard_normal((n, n))
    return G @ G.T + shift * np.eye(n)


def random_sparse_spd(n, density, seed):
    """Sparse SPD that is generally not diagonally dominant."""
    rng = np.random.default_rng(seed)
    mask = np.triu(rng.random((n, n)) < density, 1)
    W = np.where(mask, rng.standard_normal((n, n)), 0.0)
    W = W + W.T
    lo = np.linalg.eigvalsh(W)[0]
    M = W + (abs(lo) + 0.5) * np.eye(n)
    return from_dense(M)


def all_subsets(n):
    for r in range(n + 1):
        yield from itertools.combinations(range(n), r)
