"""First-order Trotter circuits built with the ancilla-parity construction.

For each term P with angle theta = 2 * c * dt the synthesized block is

    basis-in on every X/Y qubit   (X: H, Y: H.Sdg, so that V P V^dag = Z)
    cx q -> anc for each non-I q, ascending
    rz(theta) on anc
    cx q -> anc for each non-I q, descending
    basis-out on every X/Y qubit  (X: H, Y: S.H)

which implements exp(-i c dt P) on the data qubits with the ancilla returned
to |0>. The ancilla has index ``width``.

The cancellation pass applies two rules at each interface between adjacent
blocks. A qubit carrying the same non-identity Pauli on both sides loses its
uncompute CNOT, its compute CNOT, and the basis-out/basis-in pair between
them. Nothing else is touched. Rotations are never merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from hsim.errors import InputError
from hsim.hamiltonian import Hamiltonian
from hsim.ordering import Ordering
from hsim.pauli import PauliString

BASIS_IN = "basis_in"
BASIS_OUT = "basis_out"
CX = "cx"
RZ = "rz"


@dataclass(frozen=True)
class Gate:
    kind: str
    qubit: int  # basis gates: data qubit; cx: control; rz: the ancilla
    axis: Optional[str] = None
    angle: Optional[float] = None


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...]
    trotter_steps: int = 1
    time: float = 0.0

    @property
    def ancilla(self) -> int:
        return self.width

    def __len__(self):
        return len(self.gates)

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)


def cnot_count(c: Circuit) -> int:
    return c.count(CX)


def _block(p: PauliString, angle: float, anc: int, skip_in: int = 0, skip_out: int = 0) -> list[Gate]:
    """Gates for one term; qubits whose bit is set in ``skip_in``/``skip_out`` were cancelled."""
    w = p.width
    qs = [q for q in range(w) if p[q] != "I"]
    bit = lambda q: 1 << (w - 1 - q)  # noqa: E731
    gates = [Gate(BASIS_IN, q, p[q]) for q in qs if p[q] in "XY" and not skip_in & bit(q)]
    gates += [Gate(CX, q) for q in qs if not skip_in & bit(q)]
    gates.append(Gate(RZ, anc, angle=angle))
    gates += [Gate(CX, q) for q in reversed(qs) if not skip_out & bit(q)]
    gates += [Gate(BASIS_OUT, q, p[q]) for q in qs if p[q] in "XY" and not skip_out & bit(q)]
    return gates


def _shared(a: PauliString, b: PauliString) -> int:
    """Mask of positions where a and b hold the same non-identity Pauli."""
    same = ~((a.x ^ b.x) | (a.z ^ b.z))
    return same & a.support & b.support


def _emit(width: int, blocks: Sequence[tuple[PauliString, float]], cancel: bool) -> list[Gate]:
    gates: list[Gate] = []
    n = len(blocks)
    for k, (p, angle) in enumerate(blocks):
        skip_in = _shared(blocks[k - 1][0], p) if cancel and k > 0 else 0
        skip_out = _shared(p, blocks[k + 1][0]) if cancel and k < n - 1 else 0
        gates += _block(p, angle, width, skip_in, skip_out)
    return gates


def _step_blocks(h: Hamiltonian, order: Ordering, dt: float) -> list[tuple[PauliString, float]]:
    if len(order) != len(h):
        raise InputError(f"ordering has {len(order)} entries, Hamiltonian has {len(h)} terms")
    return [(t.string, 2.0 * t.coefficient * dt) for t in order.terms(h)]


def synthesize_step(h: Hamiltonian, order: Ordering, dt: float) -> Circuit:
    """One uncancelled Trotter step."""
    dt = float(dt)
    return Circuit(h.width, tuple(_emit(h.width, _step_blocks(h, order, dt), False)), 1, dt)


def parse_blocks(c: Circuit) -> list[tuple[PauliString, float]]:
    """Recover (string, angle) per block from a circuit in synthesized normal form."""
    gates, i, n = c.gates, 0, len(c.gates)
    blocks = []

    def bad(msg):
        return InputError(f"circuit not in synthesized normal form at gate {i}: {msg}")

    while i < n:
        basis = {}
        while i < n and gates[i].kind == BASIS_IN:
            g = gates[i]
            if g.qubit in basis or g.axis not in ("X", "Y"):
                raise bad("repeated or invalid basis-in")
            basis[g.qubit] = g.axis
            i += 1
        ctrl = []
        while i < n and gates[i].kind == CX:
            if ctrl and gates[i].qubit <= ctrl[-1]:
                raise bad("compute CNOTs must ascend")
            ctrl.append(gates[i].qubit)
            i += 1
        if i >= n or gates[i].kind != RZ or gates[i].qubit != c.ancilla:
            raise bad("expected rz on the ancilla")
        angle = gates[i].angle
        i += 1
        uncompute = []
        while i < n and gates[i].kind == CX and len(uncompute) < len(ctrl):
            uncompute.append(gates[i].qubit)
            i += 1
        if uncompute != ctrl[::-1]:
            raise bad("uncompute CNOTs must mirror the compute ladder")
        out = {}
        while i < n and gates[i].kind == BASIS_OUT:
            out[gates[i].qubit] = gates[i].axis
            i += 1
        if out != basis or not set(basis) <= set(ctrl) or not ctrl:
            raise bad("basis-out must mirror basis-in on CNOT-controlled qubits")
        if any(q < 0 or q >= c.width for q in ctrl):
            raise bad("control outside data register")
        symbols = ["I"] * c.width
        for q in ctrl:
            symbols[q] = basis.get(q, "Z")
        blocks.append((PauliString("".join(symbols)), angle))
    return blocks


def cancel_gates(c: Circuit, order: Ordering | None = None) -> Circuit:
    blocks = parse_blocks(c)
    if order is not None and len(blocks) != len(order) * c.trotter_steps:
        raise InputError(f"circuit has {len(blocks)} term blocks, ordering implies {len(order) * c.trotter_steps}")
    return Circuit(c.width, tuple(_emit(c.width, blocks, True)), c.trotter_steps, c.time)


def trotterize(h: Hamiltonian, order: Ordering, t: float, r: int, cancel: bool = True) -> Circuit:
    """``r`` repetitions of the step with dt = t / r, cancelled across every interface."""
    if int(r) != r or r < 1:
        raise InputError(f"Trotter number must be a positive integer, got {r}")
    r = int(r)
    blocks = _step_blocks(h, order, float(t) / r) * r
    return Circuit(h.width, tuple(_emit(h.width, blocks, cancel)), r, float(t))


def emit_text(c: Circuit) -> str:
    """Plain gate list, one gate per line."""
    lines = [f"# data qubits {c.width}, ancilla anc, trotter steps {c.trotter_steps}, time {c.time:.17g}"]
    for g in c.gates:
        if g.kind == CX:
            lines.append(f"cx q{g.qubit} anc")
        elif g.kind == RZ:
            lines.append(f"rz {g.angle:.17g} anc")
        elif g.axis == "X":
            lines.append(f"h q{g.qubit}")
        else:
            direction = "in" if g.kind == BASIS_IN else "out"
            lines.append(f"basis-y-{direction} q{g.qubit}")
    return "\n".join(lines) + "\n"
