"""Test matrices: restricted grid Laplacians and random diagonally dominant SPD."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridOverflow
from .matrix import INDEX_DTYPE, SparseSpdMatrix, from_triplets

MAX_ORDER = np.iinfo(INDEX_DTYPE).max // 16


@dataclass(frozen=True)
class GridSpec:
    """Cube of side ``N`` in ``d`` dimensions; the matrix order is ``N**d``."""

    N: int
    d: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise DomainError(f"grid side must be an integer >= 2, got {self.N}")
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"grid dimension must be an integer >= 1, got {self.d}")

    @property
    def order(self) -> int:
        n = self.N ** self.d
        if n > MAX_ORDER:
            raise GridOverflow(f"{self.N}**{self.d} exceeds the addressable index range")
        return n

    def __str__(self):
        return f"L({self.N},{self.d})"


def grid_laplacian(spec) -> SparseSpdMatrix:
    """Infinite-lattice Laplacian restricted to an ``N**d`` cube.

    Diagonal entries are ``2d`` everywhere (boundary rows keep the degree of
    the infinite lattice), neighbours along one axis get ``-1``.  Points are
    numbered row-major, last axis fastest.
    """
    if not isinstance(spec, GridSpec):
        spec = GridSpec(*spec)
    N, d = spec.N, spec.d
    n = spec.order
    idx = np.arange(n, dtype=INDEX_DTYPE)
    rows = [idx]
    cols = [idx]
    vals = [np.full(n, 2.0 * d)]
    for axis in range(d):
        stride = N ** (d - 1 - axis)
        coord = (idx // stride) % N
        src = idx[coord < N - 1]
        dst = src + stride
        rows += [src, dst]
        cols += [dst, src]
        vals += [np.full(src.size, -1.0)] * 2
    return from_triplets(n, (np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)))


def random_dd_spd(n, extra_offdiag_per_row, seed) -> SparseSpdMatrix:
    """Random symmetric, strictly diagonally dominant matrix.

    Each row draws ``extra_offdiag_per_row`` partner columns; the mirrored
    pairs get values uniform in ``[-1, 1)``.  The diagonal is one plus the
    absolute row sum of the off-diagonals.
    """
    n = int(n)
    if n < 1:
        raise DomainError("order must be >= 1")
    k = int(extra_offdiag_per_row)
    if k < 0:
        raise DomainError("extra_offdiag_per_row must be >= 0")
    rng = np.random.default_rng(seed)
    pairs = set()
    if n > 1:
        for i in range(n):
            picks = rng.choice(n - 1, size=min(k, n - 1), replace=False)
            for p in picks:
                j = int(p) + (p >= i)
                pairs.add((min(i, j), max(i, j)))
    pairs = sorted(pairs)
    lo = np.array([p[0] for p in pairs], dtype=INDEX_DTYPE)
    hi = np.array([p[1] for p in pairs], dtype=INDEX_DTYPE)
    w = rng.uniform(-1.0, 1.0, size=len(pairs))
    diag = np.ones(n)
    np.add.at(diag, lo, np.abs(w))
    np.add.at(diag, hi, np.abs(w))
    idx = np.arange(n, dtype=INDEX_DTYPE)
    return from_triplets(
        n,
        (
            np.concatenate([idx, lo, hi]),
            np.concatenate([idx, hi, lo]),
            np.concatenate([diag, w, w]),
        ),
    )
