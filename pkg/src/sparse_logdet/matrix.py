"""Sparse symmetric storage and row-pattern machinery.

Patterns are kept per row as sorted integer arrays.  The pattern of ``A^j``
is never materialized; each row is regrown from the pattern of ``A`` by
repeated boolean vector-matrix products (:func:`expand_row`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AsymmetricInput,
    DomainError,
    DuplicateEntry,
    IndexOutOfRange,
    MissingDiagonal,
    NonPositiveDiagonal,
)

INDEX_DTYPE = np.int64


@dataclass(frozen=True, eq=False)
class SparseSpdMatrix:
    """Symmetric positive definite matrix in compressed sparse row form.

    Both triangles are stored.  Construct through :func:`from_triplets` or
    :meth:`from_csr`; both validate symmetry and the diagonal.
    """

    n: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    values: np.ndarray

    @classmethod
    def from_csr(cls, n, row_offsets, col_indices, values) -> "SparseSpdMatrix":
        offsets = np.ascontiguousarray(row_offsets, dtype=INDEX_DTYPE)
        cols = np.ascontiguousarray(col_indices, dtype=INDEX_DTYPE)
        vals = np.ascontiguousarray(values, dtype=np.float64)
        n = int(n)
        if n < 1:
            raise DomainError("matrix order must be at least 1")
        if offsets.shape != (n + 1,) or offsets[0] != 0 or np.any(np.diff(offsets) < 0):
            raise DomainError("row_offsets must be nondecreasing, start at 0, length n+1")
        if cols.shape != vals.shape or cols.shape[0] != offsets[-1]:
            raise DomainError("col_indices/values length does not match row_offsets")
        if cols.size and (cols.min() < 0 or cols.max() >= n):
            raise IndexOutOfRange("column index out of range")
        rows = np.repeat(np.arange(n, dtype=INDEX_DTYPE), np.diff(offsets))
        # strictly increasing columns within each row
        same_row = rows[1:] == rows[:-1]
        if np.any(same_row & (cols[1:] <= cols[:-1])):
            raise DuplicateEntry("column indices must be strictly increasing within a row")
        _check_symmetric_diagonal(n, rows, cols, vals)
        for arr in (offsets, cols, vals):
            arr.flags.writeable = False
        return cls(n, offsets, cols, vals)

    @property
    def nnz(self) -> int:
        return int(self.row_offsets[-1])

    @property
    def density(self) -> float:
        """Fraction of stored entries in the lower triangle, over n(n+1)/2."""
        return pattern_density((self.nnz + self.n) // 2, self.n)

    def row(self, i):
        lo, hi = self.row_offsets[i], self.row_offsets[i + 1]
        return self.col_indices[lo:hi], self.values[lo:hi]

    def diagonal(self) -> np.ndarray:
        rows = np.repeat(np.arange(self.n), np.diff(self.row_offsets))
        out = np.zeros(self.n)
        mask = rows == self.col_indices
        out[rows[mask]] = self.values[mask]
        return out

    def triplets(self):
        """Return ``(rows, cols, values)`` arrays for every stored entry."""
        rows = np.repeat(np.arange(self.n, dtype=INDEX_DTYPE), np.diff(self.row_offsets))
        return rows, self.col_indices.copy(), self.values.copy()

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        rows, cols, vals = self.triplets()
        out[rows, cols] = vals
        return out

    def to_scipy(self):
        import scipy.sparse as sp

        return sp.csr_matrix(
            (self.values, self.col_indices, self.row_offsets), shape=(self.n, self.n)
        )

    def __eq__(self, other):
        if not isinstance(other, SparseSpdMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.col_indices, other.col_indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"SparseSpdMatrix(n={self.n}, nnz={self.nnz})"


@dataclass(frozen=True, eq=False)
class PatternRow:
    """Sorted column-index set of one pattern row."""

    row: int
    cols: np.ndarray

    def __len__(self):
        return int(self.cols.size)

    def __eq__(self, other):
        if not isinstance(other, PatternRow):
            return NotImplemented
        return self.row == other.row and np.array_equal(self.cols, other.cols)

    def __repr__(self):
        return f"PatternRow(row={self.row}, cols={self.cols.tolist()})"


@dataclass(frozen=True, eq=False)
class DenseSubmatrix:
    """Principal submatrix ``A(index_map, index_map)`` as a dense array."""

    entries: np.ndarray
    index_map: np.ndarray

    @property
    def size(self) -> int:
        return int(self.index_map.size)


def _check_symmetric_diagonal(n, rows, cols, vals):
    diag = rows == cols
    present = np.zeros(n, dtype=bool)
    present[rows[diag]] = True
    if not present.all():
        missing = int(np.flatnonzero(~present)[0])
        raise MissingDiagonal(f"diagonal entry ({missing}, {missing}) is missing")
    dvals = vals[diag]
    bad = ~(dvals > 0) | ~np.isfinite(dvals)
    if bad.any():
        k = int(rows[diag][bad][0])
        raise NonPositiveDiagonal(f"diagonal entry ({k}, {k}) is not strictly positive")

    off = ~diag
    r, c, v = rows[off], cols[off], vals[off]
    fwd = np.lexsort((c, r))
    bwd = np.lexsort((r, c))
    if not (
        np.array_equal(r[fwd], c[bwd])
        and np.array_equal(c[fwd], r[bwd])
        and np.array_equal(v[fwd], v[bwd])
    ):
        # locate one offending entry for the message
        mirror = {(int(a), int(b)): float(x) for a, b, x in zip(r, c, v)}
        for (a, b), x in mirror.items():
            if mirror.get((b, a)) != x:
                raise AsymmetricInput(f"entry ({a}, {b}) has no equal mirror ({b}, {a})")
        raise AsymmetricInput("matrix is not symmetric")


def from_triplets(n, triplets) -> SparseSpdMatrix:
    """Build a matrix from ``(i, j, value)`` triplets with 0-based indices.

    Both ``(i, j)`` and ``(j, i)`` must be supplied; no symmetric closure is
    performed.
    """
    n = int(n)
    if n < 1:
        raise DomainError("matrix order must be at least 1")
    if isinstance(triplets, tuple) and len(triplets) == 3 and isinstance(triplets[0], np.ndarray):
        rows, cols, vals = triplets
    else:
        trip = list(triplets)
        rows = np.array([t[0] for t in trip], dtype=INDEX_DTYPE)
        cols = np.array([t[1] for t in trip], dtype=INDEX_DTYPE)
        vals = np.array([t[2] for t in trip], dtype=np.float64)
    rows = np.asarray(rows, dtype=INDEX_DTYPE)
    cols = np.asarray(cols, dtype=INDEX_DTYPE)
    vals = np.asarray(vals, dtype=np.float64)
    if rows.size and (rows.min() < 0 or rows.max() >= n or cols.min() < 0 or cols.max() >= n):
        raise IndexOutOfRange(f"triplet index outside 0..{n - 1}")
    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]
    dup = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
    if dup.any():
        k = int(np.flatnonzero(dup)[0])
        raise DuplicateEntry(f"duplicate entry ({rows[k]}, {cols[k]})")
    offsets = np.zeros(n + 1, dtype=INDEX_DTYPE)
    np.cumsum(np.bincount(rows, minlength=n), out=offsets[1:])
    return SparseSpdMatrix.from_csr(n, offsets, cols, vals)


def identity(n) -> SparseSpdMatrix:
    idx = np.arange(n)
    return from_triplets(n, (idx, idx, np.ones(n)))


def diagonal_matrix(d) -> SparseSpdMatrix:
    d = np.asarray(d, dtype=np.float64)
    idx = np.arange(d.size)
    return from_triplets(d.size, (idx, idx, d))


def from_dense(M) -> SparseSpdMatrix:
    """Convert a dense symmetric array, storing its structural nonzeros."""
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError("expected a square array")
    rows, cols = np.nonzero(M)
    n = M.shape[0]
    # keep every diagonal position so a zero diagonal is reported as nonpositive
    diag = np.arange(n)
    keep = rows != cols
    rows = np.concatenate([rows[keep], diag])
    cols = np.concatenate([cols[keep], diag])
    return from_triplets(n, (rows, cols, M[rows, cols]))


def _check_row(A, i):
    if not 0 <= i < A.n:
        raise IndexOutOfRange(f"row {i} outside 0..{A.n - 1}")


def _gather_positions(offsets, rows):
    """Positions into the CSR column array covering all of ``rows``."""
    starts = offsets[rows]
    lens = offsets[rows + 1] - starts
    total = int(lens.sum())
    shift = np.repeat(starts - np.cumsum(lens) + lens, lens)
    return shift + np.arange(total, dtype=INDEX_DTYPE), lens


def row_pattern(A: SparseSpdMatrix, i) -> PatternRow:
    """Column indices of the stored entries of row ``i`` (full row)."""
    i = int(i)
    _check_row(A, i)
    cols, _ = A.row(i)
    return PatternRow(i, cols.copy())


def _expand_cols(A, cols):
    pos, _ = _gather_positions(A.row_offsets, cols)
    return np.unique(A.col_indices[pos])


def expand_row(alpha: PatternRow, A: SparseSpdMatrix) -> PatternRow:
    """One boolean product ``alpha * E``: union of the patterns of rows in alpha."""
    cols = np.asarray(alpha.cols, dtype=INDEX_DTYPE)
    if cols.size and (cols.min() < 0 or cols.max() >= A.n):
        raise IndexOutOfRange("pattern column outside matrix order")
    return PatternRow(alpha.row, _expand_cols(A, cols))


def _lower_cols(cols, row):
    k = np.searchsorted(cols, row, side="right")
    if k and cols[k - 1] == row:
        return cols[:k]
    return np.append(cols[:k], row)


def lower_restrict(alpha: PatternRow) -> PatternRow:
    """Keep columns ``<= row``; the diagonal is always included."""
    cols = np.asarray(alpha.cols, dtype=INDEX_DTYPE)
    return PatternRow(alpha.row, _lower_cols(cols, alpha.row))


class SubmatrixExtractor:
    """Reusable scratch for pulling dense principal submatrices out of ``A``.

    One instance per worker; not safe to share across concurrent calls.
    """

    def __init__(self, A: SparseSpdMatrix):
        self.A = A
        self._slot = np.full(A.n, -1, dtype=INDEX_DTYPE)

    def __call__(self, cols: np.ndarray) -> np.ndarray:
        A, slot = self.A, self._slot
        k = cols.size
        slot[cols] = np.arange(k)
        try:
            pos, lens = _gather_positions(A.row_offsets, cols)
            target = slot[A.col_indices[pos]]
            mask = target >= 0
            out = np.zeros((k, k))
            src = np.repeat(np.arange(k), lens)
            out[src[mask], target[mask]] = A.values[pos[mask]]
        finally:
            slot[cols] = -1
        return out


def extract_submatrix(A: SparseSpdMatrix, beta: PatternRow) -> DenseSubmatrix:
    cols = np.asarray(beta.cols, dtype=INDEX_DTYPE)
    if cols.size == 0:
        raise DomainError("empty pattern")
    if cols.min() < 0 or cols.max() >= A.n:
        raise IndexOutOfRange("pattern column outside matrix order")
    if np.any(np.diff(cols) <= 0):
        raise DomainError("pattern columns must be strictly increasing")
    return DenseSubmatrix(SubmatrixExtractor(A)(cols), cols.copy())


def pattern_density(total_entries, n) -> float:
    """Number of lower-triangular pattern entries over ``n(n+1)/2``."""
    full = n * (n + 1) // 2
    if n < 1 or not 0 < total_entries <= full:
        raise DomainError(f"entry count {total_entries} outside (0, {full}]")
    return total_entries / full
