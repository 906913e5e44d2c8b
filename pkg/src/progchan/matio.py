"""JSON matrix file format used by the CLI.

A matrix is stored as ``{"dim": n, "rows": [[[re, im], ...], ...]}`` in
row-major order, with n restricted to 2 or 4.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import MatrixFormatError
from .matops import SUPPORTED_DIMS


def matrix_to_obj(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "dim": int(m.shape[0]),
        "rows": [[[float(x.real), float(x.imag)] for x in row] for row in m],
    }


def obj_to_matrix(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "rows" not in obj:
        raise MatrixFormatError("matrix object must have 'dim' and 'rows' keys")
    dim = obj["dim"]
    if dim not in SUPPORTED_DIMS:
        raise MatrixFormatError(f"matrix dim must be 2 or 4, got {dim!r}")
    rows = obj["rows"]
    if len(rows) != dim:
        raise MatrixFormatError(f"expected {dim} rows, got {len(rows)}")
    out = np.zeros((dim, dim), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise MatrixFormatError(f"row {i} has {len(row)} entries, expected {dim}")
        for j, entry in enumerate(row):
            try:
                re, im = entry
                out[i, j] = complex(float(re), float(im))
            except (TypeError, ValueError) as exc:
                raise MatrixFormatError(f"entry ({i},{j}) is not an [re, im] pair") from exc
    return out


def load_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read matrix file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"matrix file {path} is not valid JSON: {exc}") from exc
    return obj_to_matrix(obj)


def dump_matrix(m, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_obj(m), indent=2, sort_keys=True) + "\n")
