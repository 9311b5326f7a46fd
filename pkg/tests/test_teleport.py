import numpy as np
import pytest

from qtel.bell import generate_from_seed, standard_basis
from qtel.channel import channel_from_state, state_from_matrix
from qtel.errors import ShapeError, ValidationError
from qtel.linalg import StateVector, basis_state, haar_random_unitary, random_state
from qtel.teleport import (
    composite_expand,
    correction_unitary,
    kernel_operator,
    masfi_1q,
    run_protocol,
    transformation_operator,
)

SZ = np.diag([1.0, -1.0]).astype(complex)


def bell_channel():
    return channel_from_state(StateVector(2, np.array([1, 0, 0, 1]) / np.sqrt(2)), 1)


def two_bell_channel():
    return channel_from_state(StateVector(4, np.eye(4).reshape(-1) / 2), 2)


def ghz_channel():
    amps = np.zeros(16)
    amps[0] = amps[15] = 1 / np.sqrt(2)
    return channel_from_state(StateVector(4, amps), 2)


def schmidt_channel(lam):
    amps = np.zeros(4)
    amps[0] = np.sqrt(lam)
    amps[3] = np.sqrt(1 - lam)
    return channel_from_state(StateVector(2, amps), 1)


def random_perfect_channel(n, rng):
    return channel_from_state(
        state_from_matrix(haar_random_unitary(2**n, rng) / 2 ** (n / 2), n), n
    )


class TestCompositeExpand:
    def test_textbook_uniform_probabilities(self):
        records = composite_expand(basis_state(1, 0), bell_channel(), standard_basis(1))
        assert [r.alpha for r in records] == [0, 1, 2, 3]
        for r in records:
            assert r.probability == pytest.approx(0.25, abs=1e-12)

    def test_n2_uniform_probabilities(self):
        rng = np.random.default_rng(0)
        records = composite_expand(random_state(2, rng), two_bell_channel(), standard_basis(2))
        for r in records:
            assert r.probability == pytest.approx(1 / 16, abs=1e-12)

    def test_ghz_kills_cross_terms(self):
        records = composite_expand(basis_state(2, 0b01), ghz_channel(), standard_basis(2))
        assert any(r.zero_probability for r in records)
        assert sum(r.probability for r in records) == pytest.approx(1.0, abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            composite_expand(basis_state(2, 0), bell_channel(), standard_basis(1))


class TestCorrectionUnitary:
    def test_matched_pair_gives_identity(self):
        u = correction_unitary(bell_channel(), standard_basis(1), 0)
        assert np.allclose(u, np.eye(2))

    def test_z_member_gives_sigma_z(self):
        u = correction_unitary(bell_channel(), standard_basis(1), 1)
        assert np.allclose(u, SZ)

    def test_random_perfect_channel_all_unitary(self):
        rng = np.random.default_rng(1)
        ch = random_perfect_channel(2, rng)
        basis = standard_basis(2)
        for alpha in range(16):
            u = correction_unitary(ch, basis, alpha)
            assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-9

    def test_imperfect_channel_rejected(self):
        with pytest.raises(ValidationError, match="not perfect"):
            correction_unitary(ghz_channel(), standard_basis(2), 0)


class TestTransformationOperator:
    def test_perfect_channel_inverse_matches_correction(self):
        rng = np.random.default_rng(2)
        ch = random_perfect_channel(2, rng)
        basis = standard_basis(2)
        for alpha in range(16):
            op = transformation_operator(ch, basis, alpha)
            assert op.unitary_scaled
            u = correction_unitary(ch, basis, alpha)
            # U composed with O collapses to 2^-N times identity
            assert np.max(np.abs(np.linalg.inv(op.matrix) / 4 - u)) < 1e-9

    def test_ghz_operators_singular(self):
        basis = standard_basis(2)
        for alpha in range(16):
            op = transformation_operator(ghz_channel(), basis, alpha)
            assert not op.unitary_scaled
            assert np.linalg.matrix_rank(op.matrix) == 2

    def test_asymmetric_schmidt_invertible_not_scaled(self):
        op = transformation_operator(schmidt_channel(0.8), standard_basis(1), 0)
        assert not op.unitary_scaled
        assert abs(np.linalg.det(op.matrix)) > 1e-6


class TestRunProtocol:
    @pytest.mark.parametrize("n", [1, 2])
    def test_perfect_channel_unit_fidelity(self, n):
        rng = np.random.default_rng(3)
        ch = random_perfect_channel(n, rng)
        basis = generate_from_seed(
            state_from_matrix(haar_random_unitary(2**n, rng) / 2 ** (n / 2), n)
        )
        for _ in range(10):
            result = run_protocol(random_state(n, rng), ch, basis)
            for r in result.records:
                assert r.fidelity == pytest.approx(1.0, abs=1e-9)

    def test_ghz_damages_some_outcome(self):
        info = StateVector(2, np.array([1, 0, 0, 1.0]) / np.sqrt(2))
        result = run_protocol(info, ghz_channel(), standard_basis(2))
        fidelities = [r.fidelity for r in result.records if r.fidelity is not None]
        assert min(fidelities) < 0.999

    def test_probability_conservation_random(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            n = int(rng.integers(1, 3))
            ch = channel_from_state(random_state(2 * n, rng), n)
            basis = generate_from_seed(
                state_from_matrix(haar_random_unitary(2**n, rng) / 2 ** (n / 2), n)
            )
            result = run_protocol(random_state(n, rng), ch, basis)
            total = sum(r.probability for r in result.records)
            assert total == pytest.approx(1.0, abs=1e-10)

    def test_global_phase_invariance(self):
        rng = np.random.default_rng(5)
        info = random_state(1, rng)
        rotated = StateVector(1, np.exp(1.1j) * info.amplitudes)
        a = run_protocol(info, schmidt_channel(0.7), standard_basis(1))
        b = run_protocol(rotated, schmidt_channel(0.7), standard_basis(1))
        for ra, rb in zip(a.records, b.records):
            assert ra.fidelity == pytest.approx(rb.fidelity, abs=1e-12)

    def test_sampled_frequencies_within_three_sigma(self):
        rng = np.random.default_rng(6)
        shots = 10_000
        result = run_protocol(
            random_state(1, rng), bell_channel(), standard_basis(1),
            mode="sampled", seed=99, shots=shots,
        )
        sigma = np.sqrt(shots * 0.25 * 0.75)
        for count in result.counts:
            assert abs(count - shots * 0.25) < 3 * sigma

    def test_sampled_deterministic_by_seed(self):
        rng = np.random.default_rng(7)
        info = random_state(1, rng)
        a = run_protocol(info, bell_channel(), standard_basis(1),
                         mode="sampled", seed=5, shots=1000)
        b = run_protocol(info, bell_channel(), standard_basis(1),
                         mode="sampled", seed=5, shots=1000)
        assert a.counts == b.counts

    def test_sampled_matches_exhaustive_distribution(self):
        rng = np.random.default_rng(8)
        info = random_state(1, rng)
        ch = schmidt_channel(0.6)
        result = run_protocol(info, ch, standard_basis(1),
                              mode="sampled", seed=17, shots=10_000)
        for record, count in zip(result.records, result.counts):
            assert count / 10_000 == pytest.approx(record.probability, abs=0.02)

    def test_sampled_requires_seed_and_shots(self):
        with pytest.raises(ValidationError):
            run_protocol(basis_state(1, 0), bell_channel(), standard_basis(1),
                         mode="sampled")


class TestKernelOperator:
    def test_matched_gives_identity(self):
        report = kernel_operator(bell_channel(), standard_basis(1))
        assert report.channel_perfect
        assert np.allclose(report.matrix, np.eye(2))

    def test_z_rotated_channel_gives_sigma_z(self):
        state = StateVector(2, np.array([1, 0, 0, -1]) / np.sqrt(2))
        report = kernel_operator(channel_from_state(state, 1), standard_basis(1))
        assert report.channel_perfect
        assert np.allclose(report.matrix, SZ)

    def test_ghz_reports_singular_operator(self):
        report = kernel_operator(ghz_channel(), standard_basis(2))
        assert not report.channel_perfect
        assert not report.unitary_scaled
        assert np.linalg.matrix_rank(report.matrix) == 2


class TestMasfi:
    def test_bell_channel_is_one(self):
        result = masfi_1q(bell_channel())
        assert result.value == pytest.approx(1.0, abs=1e-9)
        assert not result.degenerate

    @pytest.mark.parametrize("lam", [0.6, 0.8])
    def test_matches_concurrence_formula(self, lam):
        c = 2 * np.sqrt(lam * (1 - lam))
        result = masfi_1q(schmidt_channel(lam))
        assert result.value == pytest.approx(2 * c / (1 + c), abs=1e-3)

    def test_degenerate_channel(self):
        result = masfi_1q(schmidt_channel(1.0))
        assert result.value == 0.0 and result.degenerate

    def test_requires_single_qubit(self):
        with pytest.raises(ShapeError):
            masfi_1q(two_bell_channel())
