"""Matrix file format: lossless round trips and malformed-input rejection."""

import numpy as np
import pytest

from matorder.errors import MalformedInputError
from matorder.fileio import (
    matrix_to_payload,
    matrix_to_text,
    parse_matrix_file,
    parse_matrix_text,
    payload_to_matrix,
    write_matrix_file,
)
from matorder.sampling import random_hermitian


def test_identity_payload_round_trip():
    I = np.eye(2, dtype=complex)
    M = payload_to_matrix(matrix_to_payload(I))
    assert np.array_equal(M, I)


def test_text_round_trip_is_bit_identical():
    # oracle: strict equality of floats and of the serialized text itself
    rng = np.random.default_rng(70)
    for n in (1, 3, 6):
        X = random_hermitian(rng, n) * rng.uniform(1e-8, 1e8)
        text = matrix_to_text(X)
        Y = parse_matrix_text(text)
        assert np.array_equal(X, Y)
        assert matrix_to_text(Y) == text


def test_seventeen_digit_serialization():
    third = np.array([[1.0 / 3.0]], dtype=complex)
    text = matrix_to_text(third)
    assert "0.33333333333333331" in text
    assert np.array_equal(parse_matrix_text(text), third)


def test_file_round_trip(tmp_path):
    rng = np.random.default_rng(71)
    X = random_hermitian(rng, 4)
    path = tmp_path / "x.json"
    write_matrix_file(path, X)
    assert np.array_equal(parse_matrix_file(path), X)


def test_parse_reports_line_and_column():
    with pytest.raises(MalformedInputError) as err:
        parse_matrix_text('{"rows": 2,\n "cols"')
    assert "line 2" in str(err.value)


def test_rejects_shape_mismatch():
    with pytest.raises(MalformedInputError):
        parse_matrix_text('{"rows": 2, "cols": 2, "data": [[[1.0, 0.0]]]}')


def test_rejects_bad_pairs_and_nonfinite():
    with pytest.raises(MalformedInputError):
        parse_matrix_text('{"rows": 1, "cols": 1, "data": [[[1.0]]]}')
    with pytest.raises(MalformedInputError):
        parse_matrix_text('{"rows": 1, "cols": 1, "data": [[[NaN, 0.0]]]}')


def test_rejects_missing_file():
    with pytest.raises(MalformedInputError):
        parse_matrix_file("/nonexistent/matrix.json")


def test_hermitian_flag_validates(tmp_path):
    Z = np.array([[0.0, 1.0], [2.0, 0.0]], dtype=complex)
    path = tmp_path / "z.json"
    write_matrix_file(path, Z)
    parse_matrix_file(path)  # fine without the flag
    with pytest.raises(MalformedInputError):
        parse_matrix_file(path, hermitian=True)
