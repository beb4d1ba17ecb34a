"""Hamiltonian container, ``.ham`` text format and a seeded random generator.

File format: UTF-8 text, one ``<coefficient> <pauli string>`` per line.
``#`` starts a comment, blank lines are ignored. On load, all-identity terms
are dropped (global phase) and repeated strings are merged by summing their
coefficients; merged terms that cancel to exactly zero are removed. Surviving
terms keep the position of their first appearance.

Random Hamiltonians use numpy's PCG64 bit generator (PCG-XSL-RR 128/64),
seeded with the given integer modulo 2**64.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from hsim.errors import InputError, ParseError
from hsim.pauli import PauliString, PauliTerm


@dataclass(frozen=True)
class Hamiltonian:
    terms: tuple[PauliTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise InputError("Hamiltonian needs at least one term")
        w = terms[0].string.width
        seen = set()
        for t in terms:
            if t.string.width != w:
                raise InputError(f"term {t.string} has width {t.string.width}, expected {w}")
            if t.string.is_identity():
                raise InputError("identity terms are not allowed (strip them at load)")
            if t.string in seen:
                raise InputError(f"duplicate term {t.string}")
            seen.add(t.string)

    @property
    def width(self) -> int:
        return self.terms[0].string.width

    @property
    def strings(self) -> list[PauliString]:
        return [t.string for t in self.terms]

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t.coefficient for t in self.terms])

    def __len__(self):
        return len(self.terms)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, str]]) -> Hamiltonian:
        """Build from (coefficient, string) pairs without merging."""
        return cls(tuple(PauliTerm(c, PauliString(s)) for c, s in pairs))


def _lines(text) -> Iterable[str]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if isinstance(text, str):
        return io.StringIO(text)
    return text


def parse_hamiltonian(text: str | bytes | TextIO) -> Hamiltonian:
    merged: dict[str, float] = {}
    width = None
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<coefficient> <pauli string>', got {line!r}", lineno)
        coef_s, pauli_s = parts
        try:
            coef = float(coef_s)
        except ValueError:
            # complex literals such as "1+2j" land here too
            raise ParseError(f"invalid real coefficient {coef_s!r}", lineno) from None
        if not math.isfinite(coef):
            raise ParseError(f"non-finite coefficient {coef_s!r}", lineno)
        try:
            p = PauliString(pauli_s)
        except InputError as e:
            raise ParseError(str(e), lineno) from None
        if width is None:
            width = p.width
        elif p.width != width:
            raise ParseError(f"string {pauli_s!r} has width {p.width}, expected {width}", lineno)
        if p.is_identity():
            continue
        merged[pauli_s] = merged.get(pauli_s, 0.0) + coef
    terms = [PauliTerm(c, PauliString(s)) for s, c in merged.items() if c != 0.0]
    if not terms:
        raise ParseError("no non-identity terms remain after merging")
    return Hamiltonian(tuple(terms))


def serialize_hamiltonian(h: Hamiltonian) -> str:
    return "".join(f"{t.coefficient:.17g} {t.string}\n" for t in h.terms)


def load_hamiltonian(path) -> Hamiltonian:
    with open(path, encoding="utf-8") as f:
        return parse_hamiltonian(f)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; any integer seed is reduced modulo 2**64."""
    return np.random.Generator(np.random.PCG64(int(seed) % 2**64))


def random_hamiltonian(width: int, n_terms: int, seed: int) -> Hamiltonian:
    """``n_terms`` distinct non-identity strings with coefficients uniform in [-1, 1] \\ {0}."""
    if width < 1 or n_terms < 1:
        raise InputError("width and n_terms must be positive")
    population = 4**width - 1
    if n_terms > population:
        raise InputError(f"at most {population} non-identity strings exist at width {width}")
    rng = make_rng(seed)
    indices = rng.choice(population, size=n_terms, replace=False) + 1
    terms = []
    for idx in indices:
        c = 0.0
        while c == 0.0:
            c = float(rng.uniform(-1.0, 1.0))
        terms.append(PauliTerm(c, PauliString.from_index(int(idx), width)))
    return Hamiltonian(tuple(terms))
