import numpy as np
import pytest

from qtel.errors import ShapeError, ValidationError
from qtel.linalg import (
    StateVector,
    Tolerance,
    basis_state,
    dagger,
    haar_random_unitary,
    is_scaled_identity,
    kron,
    matmul,
    random_state,
    trace,
)

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


class TestMatmul:
    def test_identity(self):
        m = np.array([[1, 2j], [3, 4]], dtype=complex)
        assert np.array_equal(matmul(I2, m), m)

    def test_sz_times_sx_is_i_sy(self):
        expected = np.array([[0, 1], [-1, 0]], dtype=complex)
        assert np.array_equal(matmul(SZ, SX), expected)
        assert np.allclose(expected, 1j * SY)

    def test_bell_pair_contraction(self):
        # E^T times B^(0)† for a matched Bell pair collapses to half identity
        e = I2 / np.sqrt(2)
        b0 = I2 / np.sqrt(2)
        assert np.allclose(matmul(e.T, dagger(b0)), I2 / 2)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))


class TestDaggerKronTrace:
    def test_dagger_i_sy(self):
        assert np.array_equal(dagger(1j * SY), -1j * SY)

    def test_dagger_involution_exact(self):
        rng = np.random.default_rng(7)
        m = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        assert np.array_equal(dagger(dagger(m)), m)

    def test_kron_left_factor_most_significant(self):
        # kron(I, X) flips the least significant qubit (qubit 2 of 2)
        op = kron(I2, SX)
        v = np.zeros(4)
        v[0b00] = 1
        assert np.array_equal(op @ v, np.eye(4)[0b01])

    def test_kron_associative_exact_on_integers(self):
        rng = np.random.default_rng(3)
        a, b, c = (rng.integers(-3, 4, (2, 2)).astype(complex) for _ in range(3))
        assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))

    def test_trace_sz_zero(self):
        assert trace(SZ) == 0

    def test_trace_cyclic(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            b = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            assert abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12

    def test_trace_requires_square(self):
        with pytest.raises(ShapeError):
            trace(np.ones((2, 3)))


class TestScaledIdentity:
    def test_half_identity(self):
        ok, dev = is_scaled_identity(0.5 * np.eye(2), 0.5)
        assert ok and dev == 0.0

    def test_ghz_gram_deviation(self):
        amps = np.zeros(16)
        amps[0] = amps[15] = 1 / np.sqrt(2)
        e = amps.reshape(4, 4)
        ok, dev = is_scaled_identity(dagger(e) @ e, 0.25)
        assert not ok
        assert dev == pytest.approx(0.25, abs=1e-15)

    def test_two_bell_pairs(self):
        e = np.eye(4) / 2
        ok, _ = is_scaled_identity(dagger(e) @ e, 0.25)
        assert ok

    def test_reports_deviation_on_failure(self):
        ok, dev = is_scaled_identity(np.eye(3), 0.5, Tolerance(1e-12))
        assert not ok and dev == pytest.approx(0.5)


class TestStateVector:
    def test_length_check(self):
        with pytest.raises(ShapeError):
            StateVector(2, np.ones(3))

    def test_nan_rejected(self):
        with pytest.raises(ValidationError):
            StateVector(1, np.array([np.nan, 0.0]))

    def test_normalization(self):
        s = StateVector(1, np.array([3.0, 4.0]))
        assert not s.is_normalized()
        assert s.normalized().norm() == pytest.approx(1.0)

    def test_basis_state_big_endian(self):
        # index 0b10 sets qubit 1 (most significant) to |1>
        s = basis_state(2, 0b10)
        assert s.amplitudes[2] == 1

    def test_permute_qubits_interleaved_to_sides(self):
        # |q0 q1 q2 q3> = |0011>; moving (A1 B1 A2 B2) -> (A1 A2 B1 B2)
        s = basis_state(4, 0b0011)
        permuted = s.permute_qubits([0, 2, 1, 3])
        assert permuted.amplitudes[0b0101] == 1

    def test_permute_roundtrip(self):
        rng = np.random.default_rng(5)
        s = random_state(3, rng)
        assert np.array_equal(
            s.permute_qubits([2, 0, 1]).permute_qubits([1, 2, 0]).amplitudes,
            s.amplitudes,
        )

    def test_overlap(self):
        assert basis_state(1, 0).overlap(basis_state(1, 1)) == 0


def test_haar_random_unitary_is_unitary():
    rng = np.random.default_rng(42)
    u = haar_random_unitary(8, rng)
    assert np.allclose(dagger(u) @ u, np.eye(8), atol=1e-12)


def test_tolerance_must_be_positive():
    with pytest.raises(ValidationError):
        Tolerance(0.0)
