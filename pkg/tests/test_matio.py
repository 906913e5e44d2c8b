import json

import numpy as np
import pytest

from progchan import MatrixFormatError, dump_matrix, haar_unitary, load_matrix, matrix_to_obj, obj_to_matrix


def test_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    for dim in (2, 4):
        m = haar_unitary(dim, rng)
        path = tmp_path / f"m{dim}.json"
        dump_matrix(m, path)
        np.testing.assert_allclose(load_matrix(path), m, atol=1e-15)


def test_obj_round_trip():
    m = np.array([[1 + 2j, 0], [0.5j, -1]])
    np.testing.assert_allclose(obj_to_matrix(matrix_to_obj(m)), m, atol=1e-15)


def test_missing_keys():
    with pytest.raises(MatrixFormatError):
        obj_to_matrix({"rows": [[1, 2]]})


def test_bad_dim():
    with pytest.raises(MatrixFormatError):
        obj_to_matrix({"dim": 3, "rows": [[[0, 0]] * 3] * 3})


def test_mismatched_rows():
    with pytest.raises(MatrixFormatError):
        obj_to_matrix({"dim": 2, "rows": [[[1, 0], [0, 0]]]})
    with pytest.raises(MatrixFormatError):
        obj_to_matrix({"dim": 2, "rows": [[[1, 0]], [[0, 0]]]})


def test_bad_entry():
    with pytest.raises(MatrixFormatError):
        obj_to_matrix({"dim": 2, "rows": [[[1, 0], "x"], [[0, 0], [1, 0]]]})


def test_unreadable_file(tmp_path):
    with pytest.raises(MatrixFormatError):
        load_matrix(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(MatrixFormatError):
        load_matrix(bad)


def test_json_is_stable(tmp_path):
    m = np.array([[0.1 + 0.25j, 0], [0, 1]])
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    dump_matrix(m, p1)
    dump_matrix(m, p2)
    assert p1.read_text() == p2.read_text()
    assert json.loads(p1.read_text())["dim"] == 2
