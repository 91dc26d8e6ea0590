"""Log-determinant estimates from nested sparse approximate inverse patterns.

For every row ``i`` and power ``j`` the lower-restricted pattern of row ``i``
of ``A^j`` selects a principal submatrix ``A_i``; the log of its bottom-right
LU pivot is row ``i``'s contribution to ``D^j``.  Rows are independent, so
they are farmed out to a process pool in contiguous blocks and folded back in
ascending row order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IndexOutOfRange, NotPositiveDefinite
from .factor import pivot_from_array
from .matrix import (
    INDEX_DTYPE,
    SparseSpdMatrix,
    SubmatrixExtractor,
    _expand_cols,
    _lower_cols,
)


@dataclass(frozen=True)
class EstimateSeries:
    """Estimates ``D^1..D^m`` with pattern sizes and densities."""

    n: int
    D: tuple[float, ...]
    counts: tuple[int, ...]
    x: tuple[float, ...]

    @property
    def m(self) -> int:
        return len(self.D)

    @property
    def saturated(self) -> bool:
        """True when the last pattern equals the previous one."""
        return self.m >= 2 and self.counts[-1] == self.counts[-2]


def _sweep_row(A, extract, i, m, logs, counts):
    """Fill ``logs[:m]`` and ``counts[:m]`` for row ``i``."""
    alpha = A.col_indices[A.row_offsets[i]:A.row_offsets[i + 1]]
    frontier = alpha
    last_size = -1
    value = 0.0
    grown = True
    for j in range(m):
        beta = _lower_cols(alpha, i)
        if beta.size != last_size:
            # nested patterns: equal size means an identical submatrix
            try:
                value = math.log(pivot_from_array(extract(beta)))
            except NotPositiveDefinite as exc:
                raise NotPositiveDefinite(str(exc), row=i) from None
            last_size = beta.size
        logs[j] = value
        counts[j] = beta.size
        if grown and j + 1 < m:
            # alpha_{j+1} = alpha_j | pattern(frontier), since alpha_j already
            # holds the expansion of every older index
            reach = _expand_cols(A, frontier)
            new = np.setdiff1d(reach, alpha, assume_unique=True)
            if new.size == 0:
                grown = False
            else:
                alpha = np.union1d(alpha, new)
                frontier = new


def _sweep_block(A, start, stop, m):
    extract = SubmatrixExtractor(A)
    logs = np.empty((stop - start, m))
    counts = np.empty((stop - start, m), dtype=INDEX_DTYPE)
    for r, i in enumerate(range(start, stop)):
        _sweep_row(A, extract, i, m, logs[r], counts[r])
    return start, logs, counts


_WORKER_MATRIX = None


def _init_worker(n, offsets, cols, vals):
    global _WORKER_MATRIX
    # arrays were validated in the parent; skip the checks
    _WORKER_MATRIX = SparseSpdMatrix(n, offsets, cols, vals)


def _worker_block(start, stop, m):
    return _sweep_block(_WORKER_MATRIX, start, stop, m)


def _check_m(m):
    if int(m) != m or m < 1:
        raise DomainError(f"max power must be a positive integer, got {m}")
    return int(m)


def row_contributions(A: SparseSpdMatrix, i, m) -> list[tuple[float, int]]:
    """``(log pivot, pattern size)`` of row ``i`` for powers ``1..m``."""
    m = _check_m(m)
    i = int(i)
    if not 0 <= i < A.n:
        raise IndexOutOfRange(f"row {i} outside 0..{A.n - 1}")
    logs = np.empty(m)
    counts = np.empty(m, dtype=INDEX_DTYPE)
    _sweep_row(A, SubmatrixExtractor(A), i, m, logs, counts)
    return [(float(a), int(b)) for a, b in zip(logs, counts)]


def default_workers() -> int:
    env = os.environ.get("LOGDET_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _blocks(n, pieces):
    edges = np.linspace(0, n, pieces + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def row_table(A: SparseSpdMatrix, m, workers=1):
    """Per-row log pivots and pattern sizes, both shaped ``(n, m)``."""
    m = _check_m(m)
    workers = int(workers)
    if workers < 1:
        raise DomainError("workers must be >= 1")
    if workers == 1 or A.n < 2 * workers:
        _, logs, counts = _sweep_block(A, 0, A.n, m)
        return logs, counts

    logs = np.empty((A.n, m))
    counts = np.empty((A.n, m), dtype=INDEX_DTYPE)
    blocks = _blocks(A.n, min(A.n, 8 * workers))
    with ProcessPoolExecutor(
        max_workers=workers,
        initializer=_init_worker,
        initargs=(A.n, A.row_offsets, A.col_indices, A.values),
    ) as pool:
        futures = [pool.submit(_worker_block, a, b, m) for a, b in blocks]
        for fut in futures:
            start, block_logs, block_counts = fut.result()
            logs[start:start + len(block_logs)] = block_logs
            counts[start:start + len(block_counts)] = block_counts
    return logs, counts


def estimate_series(A: SparseSpdMatrix, m, workers=1) -> EstimateSeries:
    """Compute ``D^1..D^m`` and the densities of the patterns ``E^1..E^m``.

    The column sums are correctly rounded (``math.fsum``), so the result is
    independent of how rows were split among workers.
    """
    logs, counts = row_table(A, m, workers)
    full = A.n * (A.n + 1) // 2
    totals = [int(c) for c in counts.sum(axis=0)]
    return EstimateSeries(
        n=A.n,
        D=tuple(math.fsum(logs[:, j]) for j in range(logs.shape[1])),
        counts=tuple(totals),
        x=tuple(c / full for c in totals),
    )


def saturation_power(A: SparseSpdMatrix) -> int:
    """Smallest ``m`` with ``pattern(A^m) == pattern(A^(m+1))``.

    This is the largest eccentricity over the connected components of the
    graph of ``A`` (at least 1).  Uses all-pairs BFS, so it is meant for
    small matrices.
    """
    import scipy.sparse as sp
    from scipy.sparse.csgraph import shortest_path

    graph = sp.csr_matrix(
        (np.ones(A.nnz), A.col_indices, A.row_offsets), shape=(A.n, A.n)
    )
    dist = shortest_path(graph, unweighted=True, directed=False)
    finite = dist[np.isfinite(dist)]
    return max(1, int(finite.max()))
