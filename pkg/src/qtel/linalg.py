"""Dense complex linear algebra for 2^N-dimensional states and operators.

Everything here is a thin, shape-checked layer over numpy.  The qubit
convention is fixed once and for all: a basis index i of an n-qubit state
encodes the bit string i_1 i_2 ... i_n big-endian, with qubit 1 the most
significant bit.  Kronecker products put their left factor on the more
significant qubits, so ``kron(a, b)`` acts with ``a`` on the leading
qubits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError, ValidationError

DEFAULT_ABS_EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Absolute comparison tolerance. All quantities here are O(1)."""

    abs_eps: float = DEFAULT_ABS_EPS

    def __post_init__(self):
        if not (self.abs_eps > 0):
            raise ValidationError(f"tolerance must be positive, got {self.abs_eps}")


DEFAULT_TOL = Tolerance()


def as_complex_matrix(a) -> np.ndarray:
    """Coerce input to a 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={m.ndim}")
    return m


def matmul(a, b) -> np.ndarray:
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product, left factor most significant."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def trace(a) -> complex:
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"trace requires a square matrix, got {a.shape}")
    return complex(np.trace(a))


def is_scaled_identity(a, scale: float, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Test whether ``a`` equals ``scale`` times the identity.

    Returns ``(ok, max_deviation)`` where the deviation is the largest
    entrywise distance from the target, reported even on failure.
    """
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got {a.shape}")
    target = scale * np.eye(a.shape[0])
    deviation = float(np.max(np.abs(a - target)))
    return deviation <= tol.abs_eps, deviation


def max_abs_diff(a, b) -> float:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


@dataclass(frozen=True)
class StateVector:
    """Pure state of ``n_qubits`` qubits, amplitudes indexed big-endian."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValidationError(f"n_qubits must be >= 1, got {self.n_qubits}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise ShapeError(
                f"expected {2**self.n_qubits} amplitudes for {self.n_qubits} "
                f"qubits, got {amps.size}"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ValidationError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol.abs_eps

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValidationError("cannot normalize the zero vector")
        return StateVector(self.n_qubits, self.amplitudes / n)

    def permute_qubits(self, order: list[int]) -> "StateVector":
        """Reorder qubits so that new qubit position k holds old qubit order[k].

        Positions are 0-based, qubit 0 most significant.  For example
        ``order=[0, 2, 1, 3]`` moves the interleaved wiring (A1 B1 A2 B2)
        into the canonical A-side-first layout (A1 A2 B1 B2).
        """
        if sorted(order) != list(range(self.n_qubits)):
            raise ValidationError(f"order must be a permutation of 0..{self.n_qubits - 1}")
        tensor = self.amplitudes.reshape((2,) * self.n_qubits)
        return StateVector(self.n_qubits, tensor.transpose(order).reshape(-1))

    def overlap(self, other: "StateVector") -> complex:
        """Inner product <self|other>."""
        if other.n_qubits != self.n_qubits:
            raise ShapeError("qubit count mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def basis_state(n_qubits: int, index: int) -> StateVector:
    if not 0 <= index < 2**n_qubits:
        raise ValidationError(f"basis index {index} out of range for {n_qubits} qubits")
    amps = np.zeros(2**n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    dim = 2**n_qubits
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(n_qubits, v / np.linalg.norm(v))


def haar_random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    # fix the phase ambiguity of QR so the distribution is Haar
    d = np.diagonal(r)
    return q * (d / np.abs(d))
