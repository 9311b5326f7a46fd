"""JSON file formats for states and matrices.

States: {"n_qubits": int, "amplitudes": [[re, im], ...]} with 2^n_qubits
entries, index big-endian.  Matrices: {"rows", "cols", "entries": [[re,
im], ...]} row-major.  Complex numbers are always two-element arrays.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ValidationError
from .linalg import StateVector


def complex_to_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def pairs_to_array(pairs, what: str) -> np.ndarray:
    try:
        arr = np.asarray(pairs, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what}: entries must be [re, im] pairs") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError(f"{what}: entries must be [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def state_to_dict(state: StateVector) -> dict:
    return {
        "n_qubits": state.n_qubits,
        "amplitudes": [complex_to_pair(a) for a in state.amplitudes],
    }


def state_from_dict(data: dict) -> StateVector:
    for key in ("n_qubits", "amplitudes"):
        if key not in data:
            raise ValidationError(f"state file: missing field {key!r}")
    return StateVector(int(data["n_qubits"]), pairs_to_array(data["amplitudes"], "amplitudes"))


def matrix_to_dict(matrix: np.ndarray) -> dict:
    matrix = np.asarray(matrix, dtype=np.complex128)
    return {
        "rows": matrix.shape[0],
        "cols": matrix.shape[1],
        "entries": [complex_to_pair(z) for z in matrix.reshape(-1)],
    }


def matrix_from_dict(data: dict) -> np.ndarray:
    for key in ("rows", "cols", "entries"):
        if key not in data:
            raise ValidationError(f"matrix object: missing field {key!r}")
    rows, cols = int(data["rows"]), int(data["cols"])
    flat = pairs_to_array(data["entries"], "entries")
    if flat.size != rows * cols:
        raise ValidationError(
            f"matrix object: expected {rows * cols} entries, got {flat.size}"
        )
    return flat.reshape(rows, cols)


def load_state(path: str) -> StateVector:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    try:
        return state_from_dict(data)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def save_state(path: str, state: StateVector):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state), fh)
        fh.write("\n")


def basis_to_list(members) -> list[dict]:
    return [matrix_to_dict(m) for m in members]


def load_basis_members(path: str) -> list[np.ndarray]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(data, list):
        raise ValidationError(f"{path}: expected a JSON array of matrix objects")
    try:
        return [matrix_from_dict(item) for item in data]
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
