"""qtel: numerical workbench for standard N-qubit quantum teleportation.

Library layers: exact dense linear algebra (`linalg`), symplectic Pauli
strings (`pauli`), resource channels and the perfect-channel criterion
(`channel`), generalized Bell bases (`bell`), the protocol engine
(`teleport`), and magic partial bases with the non-existence witness
(`magic`).  The `qtel` console script fronts all of it.
"""

from .linalg import StateVector, Tolerance
from .pauli import PauliString, pauli_from_quaternary
from .channel import Channel, channel_from_state
from .bell import BellBasis, generate_from_seed, standard_basis
from .teleport import run_protocol

__all__ = [
    "StateVector",
    "Tolerance",
    "PauliString",
    "pauli_from_quaternary",
    "Channel",
    "channel_from_state",
    "BellBasis",
    "generate_from_seed",
    "standard_basis",
    "run_protocol",
]

__version__ = "0.1.0"
