"""Pauli strings, commutation and the CNOT interface distance.

A string is held as two integer bit masks (the symplectic x/z split),
so commutation and distance are a handful of bitwise ops regardless of width.
Bit ``width - 1 - q`` belongs to qubit ``q``: the leftmost symbol is the most
significant bit, matching the basis-state ordering used by the simulator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from hsim.errors import InputError

SYMBOLS = "IXYZ"

# symbol -> (x bit, z bit)
_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


@dataclass(frozen=True)
class PauliString:
    """Fixed-width word over {I, X, Y, Z}.

    Ordering (``<``) is lexicographic on the text form with I < X < Y < Z,
    which coincides with ASCII order of the letters.
    """

    symbols: str
    x: int = field(init=False, repr=False, compare=False)
    z: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.symbols, str):
            raise InputError(f"Pauli string must be text, got {type(self.symbols).__name__}")
        if len(self.symbols) == 0:
            raise InputError("Pauli string must have width >= 1")
        x = z = 0
        for s in self.symbols:
            try:
                xb, zb = _XZ[s]
            except KeyError:
                raise InputError(f"invalid Pauli symbol {s!r} in {self.symbols!r}") from None
            x = (x << 1) | xb
            z = (z << 1) | zb
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    @property
    def width(self) -> int:
        return len(self.symbols)

    @property
    def support(self) -> int:
        """Bit mask of non-identity positions."""
        return self.x | self.z

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, q):
        return self.symbols[q]

    def __str__(self):
        return self.symbols

    def __lt__(self, other: PauliString) -> bool:
        return self.symbols < other.symbols

    def is_identity(self) -> bool:
        return self.support == 0

    @classmethod
    def from_index(cls, index: int, width: int) -> PauliString:
        """String whose base-4 digits (I=0, X=1, Y=2, Z=3), most significant first, are ``index``."""
        if not 0 <= index < 4**width:
            raise InputError(f"index {index} out of range for width {width}")
        digits = []
        for _ in range(width):
            index, d = divmod(index, 4)
            digits.append(SYMBOLS[d])
        return cls("".join(reversed(digits)))


@dataclass(frozen=True)
class PauliTerm:
    """A real coefficient times a Pauli string."""

    coefficient: float
    string: PauliString

    def __post_init__(self):
        if isinstance(self.coefficient, complex):
            raise InputError("Pauli term coefficients must be real")
        c = float(self.coefficient)
        if not math.isfinite(c):
            raise InputError(f"non-finite coefficient {self.coefficient!r}")
        object.__setattr__(self, "coefficient", c)
        if isinstance(self.string, str):
            object.__setattr__(self, "string", PauliString(self.string))


def _as_pauli(p) -> PauliString:
    return p if isinstance(p, PauliString) else PauliString(p)


def _check_widths(a: PauliString, b: PauliString):
    if a.width != b.width:
        raise InputError(f"width mismatch: {a.symbols!r} ({a.width}) vs {b.symbols!r} ({b.width})")


def commutes(a, b) -> bool:
    """True iff the two tensor products commute.

    They anticommute on each position where both are non-identity and differ;
    the products commute exactly when that count is even.
    """
    a, b = _as_pauli(a), _as_pauli(b)
    _check_widths(a, b)
    anti = (a.x & b.z) ^ (a.z & b.x)
    return anti.bit_count() % 2 == 0


def hamming_weight(a) -> int:
    """Number of non-identity positions."""
    return _as_pauli(a).support.bit_count()


def cnot_distance(a, b) -> int:
    """CNOTs left at the interface between consecutive term subcircuits.

    Each differing position costs 1, plus 1 more when neither side is I
    (both the uncompute and the compute CNOT survive, separated by basis gates).
    """
    a, b = _as_pauli(a), _as_pauli(b)
    _check_widths(a, b)
    differ = (a.x ^ b.x) | (a.z ^ b.z)
    both = a.support & b.support
    return differ.bit_count() + (differ & both).bit_count()


def sequence_cnot_cost(order: Sequence) -> int:
    """CNOT count of one cancelled Trotter step simulating ``order`` left to right."""
    strings = [_as_pauli(p) for p in order]
    if not strings:
        raise InputError("cannot cost an empty term sequence")
    total = hamming_weight(strings[0]) + hamming_weight(strings[-1])
    for a, b in zip(strings, strings[1:]):
        total += cnot_distance(a, b)
    return total
