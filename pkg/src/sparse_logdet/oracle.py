"""Exact log-determinants and principal-minor identities (reference values)."""

from __future__ import annotations

import math

import numpy as np

from .errors import IndexOutOfRange, NotPositiveDefinite, TooLargeForOracle
from .factor import _potrf
from .matrix import SparseSpdMatrix, SubmatrixExtractor

DENSE_LIMIT = 8192


def _logdet_dense(M):
    if M.shape[0] == 0:
        return 0.0
    R = _potrf(M)
    return 2.0 * math.fsum(np.log(np.diagonal(R)))


def _logdet_sparse(A):
    from scipy.sparse.linalg import splu

    # symmetric fill-reducing ordering, diagonal pivots only (SPD needs no more)
    lu =splu(A.to_scipy().tocsc(), permc_spec="MMD_AT_PLUS_A", diag_pivot_thresh=0.0)
    u = lu.U.diagonal()
    if not np.all(np.isfinite(u)) or np.any(u <= 0):
        raise NotPositiveDefinite("sparse LU produced a nonpositive pivot")
    return math.fsum(np.log(u))


def exact_logdet(A: SparseSpdMatrix, dense_limit=DENSE_LIMIT, sparse=False) -> float:
    """``log|A|`` as a sum of logs of Cholesky pivots.

    Orders above ``dense_limit`` raise :class:`TooLargeForOracle` unless
    ``sparse=True``, which switches to SuperLU with symmetric ordering.
    """
    if sparse:
        return _logdet_sparse(A)
    if A.n > dense_limit:
        raise TooLargeForOracle(f"order {A.n} exceeds dense oracle limit {dense_limit}")
    return _logdet_dense(A.to_dense())


def _index_set(A, s):
    s = np.unique(np.asarray(list(s), dtype=np.int64))
    if s.size and (s[0] < 0 or s[-1] >= A.n):
        raise IndexOutOfRange(f"index set outside 0..{A.n - 1}")
    return s


def principal_minor_logdet(A: SparseSpdMatrix, s) -> float:
    """``log|A(s)|``; the empty minor is 1 so its log is 0."""
    s = _index_set(A, s)
    if s.size == 0:
        return 0.0
    return _logdet_dense(SubmatrixExtractor(A)(s))


def hadamard_fischer_check(A: SparseSpdMatrix, alpha, beta, tol=1e-9) -> bool:
    """Check ``|A(a|b)| |A(a&b)| <= |A(a)| |A(b)|`` in log units."""
    a = set(_index_set(A, alpha).tolist())
    b = set(_index_set(A, beta).tolist())
    lhs = principal_minor_logdet(A, a | b)
    rhs = principal_minor_logdet(A, a) + principal_minor_logdet(A, b) - principal_minor_logdet(A, a & b)
    return lhs <= rhs + tol
