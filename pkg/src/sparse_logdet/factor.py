"""Dense factorizations of small SPD submatrices and pivot extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

from .errors import DomainError, NotPositiveDefinite
from .matrix import DenseSubmatrix


@dataclass(frozen=True, eq=False)
class CholeskyFactor:
    """Upper triangular ``R`` with positive diagonal and ``R.T @ R == M``."""

    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def _as_array(M):
    if isinstance(M, DenseSubmatrix):
        M = M.entries
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DomainError("expected a nonempty square matrix")
    return M


def _potrf(M):
    # dpotrf only reads the upper triangle; the input is symmetric by contract
    R, info = lapack.dpotrf(M, lower=0, clean=1, overwrite_a=0)
    if info != 0:
        raise NotPositiveDefinite(f"Cholesky failed at pivot {info}")
    d = np.diagonal(R)
    if not np.all(np.isfinite(d)) or np.any(d <= 0):
        raise NotPositiveDefinite("Cholesky produced a nonpositive or non-finite pivot")
    return R


def cholesky(M) -> CholeskyFactor:
    return CholeskyFactor(_potrf(_as_array(M)))


def pivot_from_array(M: np.ndarray) -> float:
    """Bottom-right LU pivot of a symmetric positive definite array.

    Equal to ``R[-1, -1]**2`` for the Cholesky factor ``R``, and to
    ``1 / inv(M)[-1, -1]``.
    """
    if M.shape[0] == 1:
        p = float(M[0, 0])
        if not (p > 0 and np.isfinite(p)):
            raise NotPositiveDefinite("nonpositive 1x1 pivot")
        return p
    r = _potrf(M)[-1, -1]
    return float(r * r)


def bottom_right_pivot(M) -> float:
    """Return ``(L_i)[-1, -1]``, the reciprocal of the diagonal entry of the
    approximate inverse factor belonging to the submatrix's last row."""
    return pivot_from_array(_as_array(M))


def lu_bottom_right_pivot(M) -> float:
    """Same quantity as :func:`bottom_right_pivot` via unpivoted Gaussian
    elimination (the ``A = LU`` route with unit-upper ``U``)."""
    W = _as_array(M).copy()
    n = W.shape[0]
    for k in range(n - 1):
        p = W[k, k]
        if not (p > 0 and np.isfinite(p)):
            raise NotPositiveDefinite(f"LU elimination met pivot {p} at step {k}")
        W[k + 1:, k + 1:] -= np.outer(W[k + 1:, k], W[k, k + 1:] / p)
    p = float(W[-1, -1])
    if not (p > 0 and np.isfinite(p)):
        raise NotPositiveDefinite(f"LU elimination met final pivot {p}")
    return p
