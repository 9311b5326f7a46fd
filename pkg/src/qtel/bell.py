"""Generalized Bell measurement bases for 2n-qubit projective measurements.

A basis is the family of 2^{2n} matrices B^(α) obtained by reshaping the
measurement states with the measured-information side as the row index.
The canonical construction applies each quaternary Pauli string to the
first n qubits of a seed state whose matrix already satisfies the
maximal-entanglement condition B†B = 2^-n·1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeError, ValidationError
from .linalg import DEFAULT_TOL, StateVector, Tolerance, dagger, is_scaled_identity
from .pauli import matrix_of, pauli_from_quaternary


@dataclass(frozen=True)
class BellBasis:
    """Family of 2^{2n} measurement-state matrices, each 2^n x 2^n."""

    n: int
    members: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def size(self) -> int:
        return 4**self.n

    def member_state(self, alpha: int) -> StateVector:
        """The measurement state |B^(α)> as a 2n-qubit vector."""
        return StateVector(2 * self.n, self.members[alpha].reshape(-1))


def standard_seed(n: int) -> StateVector:
    """Product of Bell pairs pairing qubit r with qubit n+r; matrix 2^{-n/2}·I."""
    dim = 2**n
    return StateVector(2 * n, np.eye(dim, dtype=np.complex128).reshape(-1) / np.sqrt(dim))


def generate_from_seed(seed: StateVector, tol: Tolerance = DEFAULT_TOL) -> BellBasis:
    """Generate the full basis by Pauli products on the first-n qubits.

    Member α is σ^(α)|B^(0)> with σ^(α) the quaternary Pauli string acting
    on the measured-information side, i.e. B^(α) = P_α · B^(0) as matrices.
    """
    if seed.n_qubits % 2 != 0:
        raise ShapeError(f"seed must have an even qubit count, got {seed.n_qubits}")
    n = seed.n_qubits // 2
    dim = 2**n
    if not seed.is_normalized(tol):
        raise ValidationError("seed state is not normalized")
    b0 = seed.amplitudes.reshape(dim, dim)
    ok, deviation = is_scaled_identity(dagger(b0) @ b0, 2.0**-n, tol)
    if not ok:
        raise ValidationError(
            f"seed is not maximally entangled: max |B†B - 2^-n·1| = {deviation:.3e}"
        )
    members = tuple(matrix_of(pauli_from_quaternary(alpha, n)) @ b0 for alpha in range(4**n))
    return BellBasis(n, members)


def standard_basis(n: int) -> BellBasis:
    return generate_from_seed(standard_seed(n))


def bell_basis_from_members(members, tol: Tolerance = DEFAULT_TOL) -> BellBasis:
    """Accept an arbitrary orthonormal maximally-entangled family.

    Runs the orthonormality, completeness, and per-member maximality checks
    before constructing the basis.
    """
    members = tuple(np.asarray(m, dtype=np.complex128) for m in members)
    dim = members[0].shape[0]
    n = int(dim).bit_length() - 1
    if 2**n != dim or len(members) != 4**n:
        raise ShapeError(f"expected 4^n matrices of size 2^n, got {len(members)} of {dim}")
    for alpha, m in enumerate(members):
        if m.shape != (dim, dim):
            raise ShapeError(f"member {alpha} has shape {m.shape}")
        ok, deviation = is_scaled_identity(dagger(m) @ m, 2.0**-n, tol)
        if not ok:
            raise ValidationError(
                f"member {alpha} is not maximally entangled (deviation {deviation:.3e})"
            )
    basis = BellBasis(n, members)
    ok, deviation = verify_completeness(basis, tol)
    if not ok:
        raise ValidationError(f"family is not complete (deviation {deviation:.3e})")
    return basis


def verify_completeness(basis: BellBasis, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Check sum_α B^(α)_ij B^(α)*_kl = δ_ik δ_jl over all index quadruples."""
    vecs = np.array([m.reshape(-1) for m in basis.members])
    resolution = vecs.T @ vecs.conj()  # (ij),(kl) entry of the completeness sum
    _, deviation = is_scaled_identity(resolution, 1.0, tol)
    return deviation <= tol.abs_eps, deviation


def is_maximal_member(basis: BellBasis, alpha: int, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Per-member condition B^(α)†B^(α) = 2^-n·1."""
    if not 0 <= alpha < basis.size:
        raise DomainError(f"alpha={alpha} out of range for basis of size {basis.size}")
    m = basis.members[alpha]
    ok, _ = is_scaled_identity(dagger(m) @ m, 2.0**-basis.n, tol)
    return ok
