"""Matrix Market coordinate files (real, symmetric or general)."""

from __future__ import annotations

import io

import numpy as np

from .errors import DomainError, InputError, ParseError, SinkError, UnsupportedFormat
from .matrix import INDEX_DTYPE, SparseSpdMatrix, from_triplets

BANNER = "%%MatrixMarket"


def _text_lines(source):
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    for raw in source:
        if isinstance(raw, bytes):
            raw = raw.decode("ascii", errors="replace")
        yield raw.rstrip("\r\n")


def read_matrix_market(source) -> SparseSpdMatrix:
    """Parse a coordinate real matrix from a text or binary stream.

    ``symmetric`` files may store either triangle; entries are mirrored.
    ``general`` files must already contain both triangles.
    """
    lines = enumerate(_text_lines(source), start=1)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input", line=1) from None
    tokens = header.split()
    if len(tokens) != 5 or tokens[0] != BANNER:
        raise ParseError("missing %%MatrixMarket header", line=lineno, column=1)
    obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
    if obj != "matrix" or fmt != "coordinate":
        raise UnsupportedFormat(f"only 'matrix coordinate' is supported, got '{obj} {fmt}'")
    if field not in ("real", "integer", "double"):
        raise UnsupportedFormat(f"unsupported field '{field}'")
    if symmetry not in ("symmetric", "general"):
        raise UnsupportedFormat(f"unsupported symmetry '{symmetry}'")

    size = None
    for lineno, line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ParseError("size line must be 'rows cols entries'", line=lineno, column=1)
        try:
            size = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError("non-integer size line", line=lineno, column=1) from None
        break
    if size is None:
        raise ParseError("missing size line", line=lineno)
    nrows, ncols, nnz = size
    if nrows != ncols:
        raise InputError(f"matrix must be square, got {nrows}x{ncols}")
    if nrows < 1 or nnz < 0:
        raise ParseError("invalid dimensions", line=lineno)

    rows = np.empty(nnz, dtype=INDEX_DTYPE)
    cols = np.empty(nnz, dtype=INDEX_DTYPE)
    vals = np.empty(nnz)
    k = 0
    for lineno, line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if k >= nnz:
            raise ParseError(f"more than {nnz} entries", line=lineno)
        parts = stripped.split()
        if len(parts) != 3:
            raise ParseError("entry line must be 'i j value'", line=lineno, column=1)
        for col, text in enumerate(parts[:2], start=1):
            try:
                v = int(text)
            except ValueError:
                raise ParseError(f"bad index '{text}'", line=lineno, column=col) from None
            if not 1 <= v <= nrows:
                raise ParseError(f"index {v} outside 1..{nrows}", line=lineno, column=col)
            (rows if col == 1 else cols)[k] = v - 1
        try:
            vals[k] = float(parts[2])
        except ValueError:
            raise ParseError(f"bad value '{parts[2]}'", line=lineno, column=3) from None
        k += 1
    if k != nnz:
        raise ParseError(f"expected {nnz} entries, found {k}", line=lineno)

    if symmetry == "symmetric":
        off = rows != cols
        rows, cols, vals = (
            np.concatenate([rows, cols[off]]),
            np.concatenate([cols, rows[off]]),
            np.concatenate([vals, vals[off]]),
        )
    return from_triplets(nrows, (rows, cols, vals))


def write_matrix_market(A: SparseSpdMatrix, sink, comment=None) -> None:
    """Write the lower triangle as ``coordinate real symmetric``.

    Values use Python's shortest round-trip ``repr`` so reading back is exact.
    """
    if not isinstance(A, SparseSpdMatrix) or A.n < 1:
        raise DomainError("refusing to write an empty matrix")
    rows, cols, vals = A.triplets()
    lower = cols <= rows
    out = [f"{BANNER} matrix coordinate real symmetric"]
    if comment:
        out += [f"% {c}" for c in comment.splitlines()]
    out.append(f"{A.n} {A.n} {int(lower.sum())}")
    out += [
        f"{i + 1} {j + 1} {float(v)!r}"
        for i, j, v in zip(rows[lower].tolist(), cols[lower].tolist(), vals[lower].tolist())
    ]
    text = "\n".join(out) + "\n"
    try:
        if isinstance(sink, io.TextIOBase):
            sink.write(text)
        else:
            sink.write(text.encode("ascii"))
    except (OSError, ValueError) as exc:
        raise SinkError(f"could not write matrix: {exc}") from exc
