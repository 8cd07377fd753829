"""Named-matrix workspace and the shared JSON matrix file format.

A matrix file is a JSON object mapping names to nested arrays of
``[re, im]`` pairs::

    {"A": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}

The Pauli matrices ``sigma1``, ``sigma2``, ``sigma3`` are always available;
loaded files may shadow them.  The default mode count is the largest loaded
matrix dimension (2 when nothing is loaded).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from fermihat.algebra import MAX_MODES, ToleranceConfig
from fermihat.embedding import SIGMA1, SIGMA2, SIGMA3

_BUILTINS = {"sigma1": SIGMA1, "sigma2": SIGMA2, "sigma3": SIGMA3}


class MatrixFileError(ValueError):
    """Matrix file is malformed."""


def matrix_from_json(data, name: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise MatrixFileError(f"matrix {name!r}: expected a nonempty list of rows")
    width = None
    rows = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or not row:
            raise MatrixFileError(f"matrix {name!r}: row {r} is not a nonempty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFileError(f"matrix {name!r}: ragged row {r}")
        entries = []
        for c, cell in enumerate(row):
            if (not isinstance(cell, list) or len(cell) != 2
                    or not all(isinstance(v, (int, float)) for v in cell)):
                raise MatrixFileError(f"matrix {name!r}: entry ({r},{c}) must be "
                                      "a [re, im] pair")
            entries.append(complex(cell[0], cell[1]))
        rows.append(entries)
    return np.array(rows, dtype=complex)


def matrix_to_json(m: np.ndarray) -> list:
    a = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def load_matrix_file(path: str) -> dict[str, np.ndarray]:
    """Load all named matrices from one JSON file (insertion order kept)."""
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MatrixFileError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise MatrixFileError(f"{path}: top level must be an object of named matrices")
    return {name: matrix_from_json(value, name) for name, value in raw.items()}


@dataclass
class Workspace:
    """Named matrices plus the global evaluation settings."""

    matrices: dict[str, np.ndarray] = field(default_factory=dict)
    n_modes: int = 2
    tol: ToleranceConfig = field(default_factory=ToleranceConfig)
    boson_cutoff: int = 3

    @classmethod
    def build(cls, files=(), modes: int | None = None,
              tol: ToleranceConfig | None = None, boson_cutoff: int = 3) -> "Workspace":
        matrices = {k: v.copy() for k, v in _BUILTINS.items()}
        loaded_dims = []
        for path in files:
            for name, mat in load_matrix_file(path).items():
                matrices[name] = mat
                if mat.shape[0] == mat.shape[1]:
                    loaded_dims.append(mat.shape[0])
        if modes is None:
            modes = max(loaded_dims) if loaded_dims else 2
        if not 1 <= modes <= MAX_MODES:
            raise ValueError(f"mode count {modes} outside 1..{MAX_MODES}")
        return cls(matrices=matrices, n_modes=modes,
                   tol=tol if tol is not None else ToleranceConfig(),
                   boson_cutoff=boson_cutoff)
