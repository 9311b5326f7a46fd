"""Entangled 2N-qubit resource channels and their reshaped matrices.

The channel matrix E is the row-major reshape of the 2N-qubit state with
the A-side (first N qubits) as the row index and the B-side (last N) as
the column index.  A channel teleports perfectly exactly when E†E is
2^-N times the identity; the "character matrix" is 2^{N/2}·E, unitary in
exactly that case.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError, ValidationError
from .linalg import DEFAULT_TOL, StateVector, Tolerance, dagger, is_scaled_identity


@dataclass(frozen=True)
class Channel:
    """2N-qubit resource state together with its 2^N x 2^N matrix E."""

    n: int
    state: StateVector = field(repr=False)
    e_matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return 2**self.n


def channel_from_state(state: StateVector, n: int, tol: Tolerance = DEFAULT_TOL) -> Channel:
    """Build a channel from a normalized 2n-qubit state.

    The index split is i = j * 2^n + k with j the A-side row and k the
    B-side column, so the reshape round-trips bit-for-bit.
    """
    if state.n_qubits != 2 * n:
        raise ShapeError(
            f"channel for n={n} needs a {2 * n}-qubit state, got {state.n_qubits} qubits"
        )
    if not state.is_normalized(tol):
        raise ValidationError(f"channel state is not normalized: |norm - 1| = "
                              f"{abs(state.norm() - 1.0):.3e}")
    dim = 2**n
    return Channel(n, state, state.amplitudes.reshape(dim, dim).copy())


def state_from_matrix(matrix: np.ndarray, n: int) -> StateVector:
    """Inverse of the channel reshape: matrix entries back to amplitudes."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    dim = 2**n
    if matrix.shape != (dim, dim):
        raise ShapeError(f"expected a {dim}x{dim} matrix, got {matrix.shape}")
    return StateVector(2 * n, matrix.reshape(-1))


def is_perfect(ch: Channel, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Perfect-channel criterion: E†E = 2^-n times the identity."""
    return is_scaled_identity(dagger(ch.e_matrix) @ ch.e_matrix, 2.0**-ch.n, tol)


def character_matrix(ch: Channel) -> np.ndarray:
    """2^{n/2}·E; unitary iff the channel is perfect."""
    return (2.0 ** (ch.n / 2)) * ch.e_matrix


def concurrence_2q(state: StateVector) -> float:
    """Concurrence |sum_i c_i^2| of a normalized 2-qubit pure state.

    The c_i are the coefficients in the Hill-Wootters magic basis,
    including the i factors on the second and third members; for
    amplitudes (a, b, c, d) the value reduces to 2|ad - bc|.
    """
    if state.n_qubits != 2:
        raise ShapeError(f"concurrence_2q needs a 2-qubit state, got {state.n_qubits} qubits")
    if not state.is_normalized():
        raise ValidationError("state must be normalized")
    from .magic import hill_wootters_basis  # local import to avoid a cycle

    coeffs = [e.overlap(state) for e in hill_wootters_basis()]
    return float(abs(sum(c * c for c in coeffs)))
