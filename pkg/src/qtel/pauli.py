"""Exact symplectic algebra of N-qubit Pauli strings.

A string is stored as X/Z bitmasks plus an integer power of i, so products
and commutation tests are pure bit arithmetic and the tracked phase makes
``matrix_of(product(p, q))`` agree with the dense matrix product exactly.

Bitmask convention: bit 0 (the most significant qubit, qubit index 0) is
the highest bit of the mask, i.e. qubit r occupies bit ``n_qubits-1-r``.
Quaternary digits map 0, 1, 2, 3 to I, Z, X, Y; digit 3 is the hermitian
Y (the family's hermiticity and square-to-one properties require it).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceLimitError, ShapeError, ValidationError
from .linalg import matmul

_I2 = np.eye(2, dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)

# digit -> (x bit, z bit); the hermitian factor for (1,1) is Y = i*X*Z
_DIGIT_TO_BITS = {0: (0, 0), 1: (0, 1), 2: (1, 0), 3: (1, 1)}
_BITS_TO_DIGIT = {v: k for k, v in _DIGIT_TO_BITS.items()}
_BITS_TO_LETTER = {(0, 0): "I", (0, 1): "Z", (1, 0): "X", (1, 1): "Y"}
_LETTER_TO_BITS = {v: k for k, v in _BITS_TO_LETTER.items()}
_PHASE_PREFIX = {0: "", 1: "i·", 2: "-", 3: "-i·"}

FAMILY_EXHAUSTIVE_MAX_QUBITS = 3


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class PauliString:
    """i^phase_power times a tensor product of I/Z/X/Y factors."""

    n_qubits: int
    x_bits: int
    z_bits: int
    phase_power: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValidationError(f"n_qubits must be >= 1, got {self.n_qubits}")
        mask = (1 << self.n_qubits) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValidationError("bitmask does not fit the qubit count")
        object.__setattr__(self, "phase_power", self.phase_power % 4)

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def is_hermitian(self) -> bool:
        # factors are hermitian; only the global i^phase can break it
        return self.phase_power % 2 == 0

    def digit(self, qubit: int) -> int:
        """Quaternary digit of the factor on 0-based qubit index."""
        shift = self.n_qubits - 1 - qubit
        return _BITS_TO_DIGIT[((self.x_bits >> shift) & 1, (self.z_bits >> shift) & 1)]

    def digits(self) -> tuple[int, ...]:
        return tuple(self.digit(q) for q in range(self.n_qubits))

    @property
    def quaternary_index(self) -> int:
        """Decimal alpha whose base-4 digits name the factors, phase ignored."""
        alpha = 0
        for d in self.digits():
            alpha = 4 * alpha + d
        return alpha

    def __str__(self) -> str:
        letters = "".join(_BITS_TO_LETTER[_DIGIT_TO_BITS[d]] for d in self.digits())
        return _PHASE_PREFIX[self.phase_power] + letters


def identity(n_qubits: int) -> PauliString:
    return PauliString(n_qubits, 0, 0, 0)


def pauli_from_digits(digits, n_qubits: int | None = None, phase_power: int = 0) -> PauliString:
    digits = tuple(digits)
    n = len(digits) if n_qubits is None else n_qubits
    if len(digits) != n:
        raise ShapeError(f"expected {n} digits, got {len(digits)}")
    x = z = 0
    for d in digits:
        if d not in _DIGIT_TO_BITS:
            raise DomainError(f"quaternary digit out of range: {d}")
        xb, zb = _DIGIT_TO_BITS[d]
        x = (x << 1) | xb
        z = (z << 1) | zb
    return PauliString(n, x, z, phase_power)


def pauli_from_quaternary(alpha: int, n_qubits: int) -> PauliString:
    """The alpha-th family element, alpha read in base 4 (qubit 1 = leading digit)."""
    if not 0 <= alpha < 4**n_qubits:
        raise DomainError(f"alpha={alpha} out of range for {n_qubits} qubits")
    digits = [(alpha >> (2 * (n_qubits - 1 - j))) & 3 for j in range(n_qubits)]
    return pauli_from_digits(digits, n_qubits)


def product(p: PauliString, q: PauliString) -> PauliString:
    """Matrix product p·q with exact phase tracking."""
    if p.n_qubits != q.n_qubits:
        raise ShapeError(f"qubit count mismatch: {p.n_qubits} vs {q.n_qubits}")
    # work in the X^x Z^z canonical form, where each Y contributes a factor i
    phase = (
        p.phase_power
        + _popcount(p.x_bits & p.z_bits)
        + q.phase_power
        + _popcount(q.x_bits & q.z_bits)
        + 2 * _popcount(p.z_bits & q.x_bits)  # Z^b X^c = (-1)^{bc} X^c Z^b
    )
    x = p.x_bits ^ q.x_bits
    z = p.z_bits ^ q.z_bits
    phase -= _popcount(x & z)  # convert back to the hermitian-Y form
    return PauliString(p.n_qubits, x, z, phase % 4)


def commutes(p: PauliString, q: PauliString) -> bool:
    """Symplectic-form parity: commute iff <p.x,q.z> + <p.z,q.x> is even."""
    if p.n_qubits != q.n_qubits:
        raise ShapeError(f"qubit count mismatch: {p.n_qubits} vs {q.n_qubits}")
    return (_popcount(p.x_bits & q.z_bits) + _popcount(p.z_bits & q.x_bits)) % 2 == 0


def matrix_of(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n realization, i^phase_power times the factor product."""
    factors = {0: _I2, 1: _Z, 2: _X, 3: _Y}
    m = np.array([[1.0 + 0j]])
    for d in p.digits():
        m = np.kron(m, factors[d])
    return (1j**p.phase_power) * m


def render(p: PauliString, separator: str = "") -> str:
    """Text form like "i·ZX" or, with separator "⊗", "Y⊗I"."""
    letters = separator.join(_BITS_TO_LETTER[_DIGIT_TO_BITS[d]] for d in p.digits())
    return _PHASE_PREFIX[p.phase_power] + letters


_PARSE_RE = re.compile(r"^(?P<phase>-i·?|i·?|-)?(?P<letters>[IZXY](?:⊗?[IZXY])*)$")


def parse(text: str) -> PauliString:
    """Parse the `render` grammar: optional phase prefix then I/Z/X/Y letters."""
    m = _PARSE_RE.match(text.strip())
    if m is None:
        raise ValidationError(f"cannot parse Pauli string: {text!r}")
    phase_text = m.group("phase") or ""
    phase = {"": 0, "i": 1, "i·": 1, "-": 2, "-i": 3, "-i·": 3}[phase_text]
    letters = m.group("letters").replace("⊗", "")
    digits = [_BITS_TO_DIGIT[_LETTER_TO_BITS[c]] for c in letters]
    return pauli_from_digits(digits, phase_power=phase)


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FamilyPropertyReport:
    """Exhaustive verification of the eight family properties for one n."""

    n_qubits: int
    checks: tuple[PropertyCheck, ...]
    anticommute_counts: dict[int, int] = field(default_factory=dict)
    all_nonidentity_anticommute: bool = False

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def family_property_report(n: int) -> FamilyPropertyReport:
    """Brute-force check of the operator-family properties over all 4^n strings.

    Verified per element/pair: unit square, hermiticity, closure of products
    up to a power of i, commute-or-anticommute dichotomy (against dense
    matrices), existence of an anticommuting partner, zero trace off the
    identity, linear independence, and spanning of all 2^n x 2^n matrices.
    Also records whether every non-identity pair anticommutes (it cannot,
    for n > 1).
    """
    if n > FAMILY_EXHAUSTIVE_MAX_QUBITS:
        raise ResourceLimitError(
            f"exhaustive family check supports n <= {FAMILY_EXHAUSTIVE_MAX_QUBITS}, got {n}"
        )
    family = [pauli_from_quaternary(a, n) for a in range(4**n)]
    mats = [matrix_of(p) for p in family]
    dim = 2**n
    eye = np.eye(dim)
    checks: list[PropertyCheck] = []

    def check(name, failures):
        checks.append(
            PropertyCheck(name, not failures, "; ".join(failures[:3]))
        )

    fails = [str(p) for p, m in zip(family, mats)
             if np.max(np.abs(m @ m - eye)) > 1e-12]
    check("square is identity", fails)

    fails = [str(p) for p, m in zip(family, mats)
             if np.max(np.abs(m - m.conj().T)) > 1e-12]
    check("hermitian", fails)

    fails = []
    for a, p in enumerate(family):
        for b, q in enumerate(family):
            r = product(p, q)
            base = matrix_of(PauliString(n, r.x_bits, r.z_bits, 0))
            dense = matmul(mats[a], mats[b])
            if min(np.max(np.abs(dense - (1j**k) * base)) for k in range(4)) > 1e-12:
                fails.append(f"{p}·{q}")
    check("products close up to ±1, ±i", fails)

    fails = []
    counts: dict[int, int] = {}
    for a in range(1, 4**n):
        counts[a] = 0
        for b in range(1, 4**n):
            if a == b:
                continue
            comm = np.max(np.abs(mats[a] @ mats[b] - mats[b] @ mats[a]))
            anti = np.max(np.abs(mats[a] @ mats[b] + mats[b] @ mats[a]))
            if comm > 1e-12 and anti > 1e-12:
                fails.append(f"{family[a]},{family[b]}")
            dense_anticommutes = anti <= 1e-12
            if dense_anticommutes != (not commutes(family[a], family[b])):
                fails.append(f"symplectic mismatch {family[a]},{family[b]}")
            if dense_anticommutes:
                counts[a] += 1
    check("commute-or-anticommute dichotomy", fails)

    fails = [str(family[a]) for a in range(1, 4**n) if counts[a] == 0]
    check("anticommuting partner exists", fails)

    fails = [str(p) for a, (p, m) in enumerate(zip(family, mats))
             if a != 0 and abs(np.trace(m)) > 1e-12]
    check("zero trace off identity", fails)

    stacked = np.array([m.reshape(-1) for m in mats])
    gram = stacked.conj() @ stacked.T
    independent = np.linalg.matrix_rank(gram) == 4**n
    check("linearly independent", [] if independent else ["Gram matrix singular"])

    spanning = np.linalg.matrix_rank(stacked) == dim * dim
    check("spans all matrices", [] if spanning else [f"rank < {dim * dim}"])

    all_anti = all(counts[a] == 4**n - 2 for a in counts)
    return FamilyPropertyReport(n, tuple(checks), counts, all_anti)
