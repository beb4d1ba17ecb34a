"""Ordering, Trotterization and exact evaluation of Pauli-sum Hamiltonian simulation circuits."""

from hsim.errors import CapabilityError, InputError, ParseError
from hsim.pauli import (
    PauliString,
    PauliTerm,
    cnot_distance,
    commutes,
    hamming_weight,
    sequence_cnot_cost,
)
from hsim.hamiltonian import (
    Hamiltonian,
    parse_hamiltonian,
    random_hamiltonian,
    serialize_hamiltonian,
)
from hsim.ordering import STRATEGIES, Ordering, order_by_name

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "Hamiltonian",
    "InputError",
    "Ordering",
    "ParseError",
    "PauliString",
    "PauliTerm",
    "STRATEGIES",
    "cnot_distance",
    "commutes",
    "hamming_weight",
    "order_by_name",
    "parse_hamiltonian",
    "random_hamiltonian",
    "sequence_cnot_cost",
    "serialize_hamiltonian",
]
