import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import L22
from sparse_logdet.errors import AsymmetricInput, DomainError, MissingDiagonal, ParseError, SinkError, UnsupportedFormat
from sparse_logdet.generators import grid_laplacian, random_dd_spd
from sparse_logdet.matrix import identity
from sparse_logdet.mmio import read_matrix_market, write_matrix_market


def parse(text):
    return read_matrix_market(io.StringIO(text))


def roundtrip(A):
    buf = io.BytesIO()
    write_matrix_market(A, buf)
    buf.seek(0)
    return read_matrix_market(buf), buf.getvalue().decode()


def test_minimal_file():
    A = parse("%%MatrixMarket matrix coordinate real symmetric\n1 1 1\n1 1 4.0\n")
    np.testing.assert_array_equal(A.to_dense(), [[4.0]])


def test_comments_and_blank_lines():
    A = parse(
        "%%MatrixMarket matrix coordinate real symmetric\n% hello\n\n2 2 3\n"
        "1 1 2\n% mid\n2 1 -1\n2 2 2\n"
    )
    np.testing.assert_array_equal(A.to_dense(), [[2, -1], [-1, 2]])


def test_upper_triangle_symmetric_file():
    A = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 2\n1 2 -1\n2 2 2\n")
    np.testing.assert_array_equal(A.to_dense(), [[2, -1], [-1, 2]])


def test_general_file():
    A = parse(
        "%%MatrixMarket matrix coordinate real general\n2 2 4\n1 1 2\n1 2 -1\n2 1 -1\n2 2 2\n"
    )
    np.testing.assert_array_equal(A.to_dense(), [[2, -1], [-1, 2]])


def test_general_file_asymmetric():
    with pytest.raises(AsymmetricInput):
        parse("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 2\n1 2 -1\n2 2 2\n")


def test_missing_diagonal():
    with pytest.raises(MissingDiagonal):
        parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 1 2\n")


def test_grid_roundtrip():
    A = grid_laplacian((2, 2))
    B, text = roundtrip(A)
    assert B == A
    np.testing.assert_array_equal(B.to_dense(), L22)
    assert text.splitlines()[1] == "4 4 8"
    assert len(text.splitlines()) == 2 + 8


def test_identity_writes_three_entries():
    _, text = roundtrip(identity(3))
    lines = text.splitlines()
    assert lines[0] == "%%MatrixMarket matrix coordinate real symmetric"
    assert lines[1:] == ["3 3 3", "1 1 1.0", "2 2 1.0", "3 3 1.0"]


def test_text_sink():
    buf = io.StringIO()
    write_matrix_market(identity(1), buf, comment="one")
    assert buf.getvalue() == "%%MatrixMarket matrix coordinate real symmetric\n% one\n1 1 1\n1 1 1.0\n"


def test_empty_matrix_rejected():
    with pytest.raises(DomainError):
        write_matrix_market(None, io.BytesIO())


def test_sink_error():
    buf = io.BytesIO()
    buf.close()
    with pytest.raises(SinkError):
        write_matrix_market(identity(2), buf)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40), st.integers(0, 4), st.integers(0, 2**32 - 1))
def test_roundtrip_bit_exact(n, k, seed):
    A = random_dd_spd(n, k, seed)
    B, _ = roundtrip(A)
    assert B == A
    assert B.values.tobytes() == A.values.tobytes()


@pytest.mark.parametrize(
    "header",
    [
        "%%MatrixMarket matrix coordinate complex symmetric",
        "%%MatrixMarket matrix coordinate pattern symmetric",
        "%%MatrixMarket matrix array real symmetric",
        "%%MatrixMarket matrix coordinate real hermitian",
    ],
)
def test_unsupported(header):
    with pytest.raises(UnsupportedFormat):
        parse(header + "\n1 1 1\n1 1 4.0\n")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, None),
        ("MatrixMarket matrix coordinate real symmetric\n", 1, 1),
        ("%%MatrixMarket matrix coordinate real symmetric\n1 1\n", 2, 1),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 x 4.0\n", 3, 2),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 3 4.0\n", 3, 2),
        ("%%MatrixMarket matrix coordinate real symmetric\n1 1 1\n1 1 four\n", 3, 3),
        ("%%MatrixMarket matrix coordinate real symmetric\n1 1 2\n1 1 4.0\n", 3, None),
        ("%%MatrixMarket matrix coordinate real symmetric\n1 1 1\n1 1 4.0\n1 1 4.0\n", 4, None),
    ],
)
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.column == column
