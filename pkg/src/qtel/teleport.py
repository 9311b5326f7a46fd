"""The teleportation protocol engine.

For a BSM outcome α the (unnormalized) amplitudes on Bob's side are
b = O^(α)·I with transformation operator O^(α) = E^T B^(α)†.  When the
channel and the basis member are both maximally entangled, Bob's
correction is the unitary U^(α) = 2^n · B^(α) · E*, which restores the
information state exactly.  Imperfect channels still run: the engine
falls back to the (phase-normalized) inverse of O^(α) when that operator
is a scaled unitary, and to the identity otherwise, and the per-outcome
fidelity reports the damage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bell import BellBasis, is_maximal_member, standard_basis
from .channel import Channel, is_perfect
from .errors import InternalConsistencyError, ShapeError, ValidationError
from .linalg import DEFAULT_TOL, StateVector, Tolerance, dagger, is_scaled_identity
from .pauli import matrix_of, pauli_from_quaternary

ZERO_PROBABILITY_EPS = 1e-14


@dataclass(frozen=True)
class TransformationOperator:
    """O^(α) = E^T B^(α)†, the map from information to Bob's amplitudes."""

    alpha: int
    matrix: np.ndarray = field(repr=False)
    unitary_scaled: bool = False
    scale: float = 0.0  # s with O†O = s·1, meaningful when unitary_scaled


@dataclass(frozen=True)
class OutcomeRecord:
    alpha: int
    probability: float
    bob_state: StateVector | None = None
    corrected_state: StateVector | None = None
    fidelity: float | None = None
    zero_probability: bool = False


@dataclass(frozen=True)
class ProtocolResult:
    records: tuple[OutcomeRecord, ...]
    mode: str = "exhaustive"
    shots: int | None = None
    seed: int | None = None
    counts: tuple[int, ...] | None = None  # per-alpha shot counts in sampled mode


def _check_dims(info: StateVector, ch: Channel, basis: BellBasis):
    if ch.n != info.n_qubits:
        raise ShapeError(f"channel n={ch.n} does not match {info.n_qubits}-qubit info state")
    if basis.n != info.n_qubits:
        raise ShapeError(f"basis n={basis.n} does not match {info.n_qubits}-qubit info state")
    if not info.is_normalized():
        raise ValidationError("information state must be normalized")


def transformation_operator(
    ch: Channel, basis: BellBasis, alpha: int, tol: Tolerance = DEFAULT_TOL
) -> TransformationOperator:
    """Works for arbitrary channels; flags whether O†O is a scaled identity."""
    o = ch.e_matrix.T @ dagger(basis.members[alpha])
    gram = dagger(o) @ o
    scale = float(np.real(np.trace(gram)) / o.shape[0])
    ok, _ = is_scaled_identity(gram, scale, tol)
    unitary_scaled = ok and scale > tol.abs_eps
    return TransformationOperator(alpha, o, unitary_scaled, scale if unitary_scaled else 0.0)


def correction_unitary(
    ch: Channel, basis: BellBasis, alpha: int, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """U^(α) = 2^n · B^(α) · E*, defined when channel and member are maximal."""
    perfect, deviation = is_perfect(ch, tol)
    if not perfect:
        raise ValidationError(f"channel is not perfect (deviation {deviation:.3e})")
    if not is_maximal_member(basis, alpha, tol):
        raise ValidationError(f"basis member {alpha} is not maximally entangled")
    u = (2**ch.n) * basis.members[alpha] @ ch.e_matrix.conj()
    ok, udev = is_scaled_identity(dagger(u) @ u, 1.0, Tolerance(10 * tol.abs_eps))
    if not ok:
        raise InternalConsistencyError(
            f"synthesized correction for alpha={alpha} is not unitary (deviation {udev:.3e})"
        )
    return u


def _best_correction(op: TransformationOperator, dim: int) -> np.ndarray:
    """Unitary part of O^(α)^-1 when available, identity otherwise."""
    if op.unitary_scaled:
        return dagger(op.matrix) / np.sqrt(op.scale)
    return np.eye(dim, dtype=np.complex128)


def composite_expand(info: StateVector, ch: Channel, basis: BellBasis) -> tuple[OutcomeRecord, ...]:
    """Per-outcome Bob states and probabilities, no corrections applied."""
    _check_dims(info, ch, basis)
    records = []
    for alpha in range(basis.size):
        b = ch.e_matrix.T @ dagger(basis.members[alpha]) @ info.amplitudes
        p = float(np.real(np.vdot(b, b)))
        if p < ZERO_PROBABILITY_EPS:
            records.append(OutcomeRecord(alpha, p, zero_probability=True))
        else:
            records.append(OutcomeRecord(alpha, p, StateVector(info.n_qubits, b / np.sqrt(p))))
    return tuple(records)


def run_protocol(
    info: StateVector,
    ch: Channel,
    basis: BellBasis,
    mode: str = "exhaustive",
    seed: int | None = None,
    shots: int | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> ProtocolResult:
    """Run the full protocol, applying the best available correction per outcome.

    Exhaustive mode evaluates every outcome; sampled mode additionally draws
    `shots` outcomes from the BSM distribution with a deterministic generator
    seeded by `seed` and reports per-outcome counts.
    """
    _check_dims(info, ch, basis)
    records = []
    for raw in composite_expand(info, ch, basis):
        if raw.zero_probability:
            records.append(raw)
            continue
        op = transformation_operator(ch, basis, raw.alpha, tol)
        correction = _best_correction(op, ch.dim)
        corrected = correction @ raw.bob_state.amplitudes
        corrected /= np.linalg.norm(corrected)
        fidelity = float(abs(np.vdot(info.amplitudes, corrected)) ** 2)
        records.append(
            OutcomeRecord(
                raw.alpha,
                raw.probability,
                raw.bob_state,
                StateVector(info.n_qubits, corrected),
                fidelity,
            )
        )
    records = tuple(records)
    if mode == "exhaustive":
        return ProtocolResult(records)
    if mode != "sampled":
        raise ValidationError(f"unknown mode: {mode!r}")
    if shots is None or shots < 1:
        raise ValidationError("sampled mode requires shots >= 1")
    if seed is None:
        raise ValidationError("sampled mode requires a seed")
    rng = np.random.default_rng(seed)
    probs = np.array([r.probability for r in records])
    counts = rng.multinomial(shots, probs / probs.sum())
    return ProtocolResult(records, "sampled", shots, seed, tuple(int(c) for c in counts))


@dataclass(frozen=True)
class KernelReport:
    """The α = 0 (kernel / head-judgment) operator of a seed-generated basis."""

    matrix: np.ndarray = field(repr=False)
    channel_perfect: bool = False
    unitary_scaled: bool = False


def kernel_operator(ch: Channel, basis: BellBasis, tol: Tolerance = DEFAULT_TOL) -> KernelReport:
    perfect, _ = is_perfect(ch, tol)
    if perfect and is_maximal_member(basis, 0, tol):
        return KernelReport(correction_unitary(ch, basis, 0, tol), True, True)
    op = transformation_operator(ch, basis, 0, tol)
    return KernelReport(op.matrix, False, op.unitary_scaled)


@dataclass(frozen=True)
class MasfiResult:
    value: float
    degenerate: bool = False
    converged: bool = True
    argmin: tuple[float, float] = (0.0, 0.0)  # Bloch angles (theta, phi)


def masfi_1q(
    ch: Channel,
    grid_theta: int = 64,
    grid_phi: int = 128,
    tol: Tolerance = DEFAULT_TOL,
) -> MasfiResult:
    """Minimum assured fidelity for a single-qubit channel.

    Minimizes, over information states on a Bloch-sphere grid with local
    refinement, the worst per-outcome fidelity under the standard Bell
    basis and standard Pauli corrections.  A channel with a vanishing
    Schmidt coefficient cannot assure any fidelity and returns 0 flagged
    as degenerate.
    """
    if ch.n != 1:
        raise ShapeError(f"masfi_1q requires a single-qubit channel, got n={ch.n}")
    if np.min(np.linalg.svd(ch.e_matrix, compute_uv=False)) < 1e-12:
        return MasfiResult(0.0, degenerate=True)
    basis = standard_basis(1)
    corrections = [matrix_of(pauli_from_quaternary(alpha, 1)) for alpha in range(4)]
    operators = [ch.e_matrix.T @ dagger(basis.members[alpha]) for alpha in range(4)]

    def worst_fidelity(angles) -> float:
        theta, phi = angles
        info = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
        worst = 1.0
        for o, u in zip(operators, corrections):
            b = o @ info
            p = np.real(np.vdot(b, b))
            if p < ZERO_PROBABILITY_EPS:
                continue
            t = u @ b
            worst = min(worst, float(abs(np.vdot(info, t)) ** 2 / p))
        return worst

    thetas = np.linspace(0.0, np.pi, grid_theta)
    phis = np.linspace(0.0, 2 * np.pi, grid_phi, endpoint=False)
    best = (1.0, (0.0, 0.0))
    for theta in thetas:
        for phi in phis:
            f = worst_fidelity((theta, phi))
            if f < best[0]:
                best = (f, (float(theta), float(phi)))
    refined = minimize(
        worst_fidelity, best[1], method="Nelder-Mead",
        options={"xatol": 1e-6, "fatol": 1e-10},
    )
    if refined.fun <= best[0]:
        return MasfiResult(float(refined.fun), converged=bool(refined.success),
                           argmin=tuple(float(x) for x in refined.x))
    return MasfiResult(best[0], argmin=best[1])
