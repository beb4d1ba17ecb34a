"""Dense simulation: exact evolution, circuit unitaries, noise, distances.

Basis states are indexed with qubit 0 (leftmost Pauli symbol) as the most
significant bit; the ancilla sits after the data qubits, i.e. it is the least
significant bit of the full register.
"""

from __future__ import annotations

import math

import numpy as np

from hsim.circuit import BASIS_IN, BASIS_OUT, CX, RZ, Circuit, trotterize
from hsim.errors import CapabilityError, InputError, SynthesisError
from hsim.hamiltonian import Hamiltonian
from hsim.ordering import Ordering
from hsim.pauli import PauliString

MAX_UNITARY_WIDTH = 12
MAX_CIRCUIT_WIDTH = 10
MAX_DENSITY_WIDTH = 6

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.diag([1, 1j])
# V with V Y V^dag = Z
_Y_IN = _H @ _S.conj().T
_Y_OUT = _Y_IN.conj().T


def gate_matrix(kind: str, axis: str | None) -> np.ndarray:
    if axis == "X":
        return _H
    if axis == "Y":
        return _Y_IN if kind == BASIS_IN else _Y_OUT
    raise InputError(f"no single-qubit matrix for {kind} {axis}")


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string, built from its x/z masks."""
    dim = 1 << p.width
    cols = np.arange(dim)
    rows = cols ^ p.x
    n_y = (p.x & p.z).bit_count()
    signs = 1 - 2 * (np.bitwise_count(cols & p.z).astype(np.int64) % 2)
    m = np.zeros((dim, dim), dtype=complex)
    m[rows, cols] = (1j**n_y) * signs
    return m


def hamiltonian_matrix(h: Hamiltonian) -> np.ndarray:
    if h.width > MAX_UNITARY_WIDTH:
        raise CapabilityError(f"dense matrices are limited to {MAX_UNITARY_WIDTH} qubits")
    return sum(t.coefficient * pauli_matrix(t.string) for t in h.terms)


def expm_hermitian(hmat: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t H) through the eigendecomposition of Hermitian H."""
    evals, evecs = np.linalg.eigh(hmat)
    return (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T


def exact_evolution(h: Hamiltonian, t: float) -> np.ndarray:
    return expm_hermitian(hamiltonian_matrix(h), float(t))


# --- state-tensor gate application -------------------------------------------------
# States are tensors of shape (2,) * n_qubits + (batch,).


def _apply_1q(state: np.ndarray, u: np.ndarray, q: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(u, state, axes=([1], [q])), 0, q)


def _apply_cx(state: np.ndarray, control: int, target: int) -> np.ndarray:
    out = state.copy()
    sel = [slice(None)] * state.ndim
    sel[control] = 1
    sel = tuple(sel)
    t_axis = target - 1 if target > control else target
    out[sel] = np.flip(state[sel], axis=t_axis)
    return out


def _apply_rz(state: np.ndarray, theta: float, q: int) -> np.ndarray:
    shape = [1] * state.ndim
    shape[q] = 2
    phases = np.array([np.exp(-0.5j * theta), np.exp(0.5j * theta)]).reshape(shape)
    return state * phases


def _run(c: Circuit, state: np.ndarray) -> np.ndarray:
    anc = c.ancilla
    for g in c.gates:
        if g.kind == CX:
            state = _apply_cx(state, g.qubit, anc)
        elif g.kind == RZ:
            state = _apply_rz(state, g.angle, g.qubit)
        elif g.kind in (BASIS_IN, BASIS_OUT):
            state = _apply_1q(state, gate_matrix(g.kind, g.axis), g.qubit)
        else:
            raise InputError(f"unknown gate kind {g.kind!r}")
    return state


def full_unitary(c: Circuit) -> np.ndarray:
    """Unitary of the whole register (data qubits + ancilla)."""
    m = c.width + 1
    if c.width > MAX_CIRCUIT_WIDTH:
        raise CapabilityError(f"circuit simulation is limited to {MAX_CIRCUIT_WIDTH} data qubits")
    dim = 1 << m
    state = np.eye(dim, dtype=complex).reshape((2,) * m + (dim,))
    return _run(c, state).reshape(dim, dim)


def circuit_unitary(c: Circuit, atol: float = 1e-9) -> np.ndarray:
    """Effective data-register unitary, with the ancilla prepared and projected on |0>."""
    n = c.width
    if n > MAX_CIRCUIT_WIDTH:
        raise CapabilityError(f"circuit simulation is limited to {MAX_CIRCUIT_WIDTH} data qubits")
    dim = 1 << n
    state = np.zeros((dim, 2, dim), dtype=complex)
    state[np.arange(dim), 0, np.arange(dim)] = 1.0
    out = _run(c, state.reshape((2,) * (n + 1) + (dim,))).reshape(dim, 2, dim)
    leak = np.linalg.norm(out[:, 1, :])
    if leak > atol:
        raise SynthesisError(f"ancilla not returned to |0> (leakage {leak:.3g})")
    return out[:, 0, :]


def is_unitary(u: np.ndarray, atol: float = 1e-8) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=atol)


def diamond_distance_unitary(u: np.ndarray, v: np.ndarray) -> float:
    """Diamond distance between the channels rho -> u rho u^dag and rho -> v rho v^dag.

    With eigenvalues of u^dag v on the unit circle, the distance is
    2 sqrt(1 - d^2), d being the distance from 0 to their convex hull. If the
    eigenvalues fit in an arc of width a < pi then d = cos(a / 2) and the
    result is 2 sin(a / 2); otherwise the hull holds the origin and it is 2.
    """
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape:
        raise InputError(f"shape mismatch {u.shape} vs {v.shape}")
    if not (is_unitary(u) and is_unitary(v)):
        raise InputError("diamond_distance_unitary expects unitary matrices")
    angles = np.sort(np.angle(np.linalg.eigvals(u.conj().T @ v)))
    gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * math.pi]]))
    largest_gap = float(gaps.max())
    if largest_gap <= math.pi:
        return 2.0
    arc = 2 * math.pi - largest_gap
    return float(min(2.0, max(0.0, 2.0 * math.sin(arc / 2))))


def trotter_error(h: Hamiltonian, order: Ordering, t: float, r: int) -> float:
    return diamond_distance_unitary(circuit_unitary(trotterize(h, order, t, r)), exact_evolution(h, t))


# --- noisy density-matrix simulation ------------------------------------------------


def _rho_1q(rho: np.ndarray, u: np.ndarray, q: int, m: int) -> np.ndarray:
    rho = _apply_1q(rho, u, q)
    return _apply_1q(rho, u.conj(), m + q)


def _rho_cx(rho: np.ndarray, control: int, target: int, m: int) -> np.ndarray:
    rho = _apply_cx(rho, control, target)
    return _apply_cx(rho, m + control, m + target)


def _rho_rz(rho: np.ndarray, theta: float, q: int, m: int) -> np.ndarray:
    rho = _apply_rz(rho, theta, q)
    return _apply_rz(rho, -theta, m + q)


def depolarize(rho: np.ndarray, qubits, p: float, m: int) -> np.ndarray:
    """rho -> (1 - p) rho + p Tr_qubits(rho) (x) I / 2^k on a density tensor of ``m`` qubits."""
    if p == 0.0:
        return rho
    k = len(qubits)
    src = list(qubits) + [m + q for q in qubits]
    dst = list(range(2 * m - 2 * k, 2 * m))
    t = np.moveaxis(rho, src, dst)
    rest = t.shape[: 2 * m - 2 * k]
    dim = 1 << k
    t = t.reshape(rest + (dim, dim))
    reduced = np.trace(t, axis1=-2, axis2=-1)
    t = (1 - p) * t + p * reduced[..., None, None] * (np.eye(dim) / dim)
    return np.moveaxis(t.reshape(rest + (2,) * (2 * k)), dst, src)


def evolve_density(c: Circuit, initial: np.ndarray, p: float, noise: str = "pair", trace_log=None) -> np.ndarray:
    """Final density matrix (data + ancilla) with depolarizing noise after every CNOT.

    ``noise="pair"`` replaces control and target jointly by I/4 with probability p;
    ``noise="independent"`` depolarizes each of the two qubits separately.
    If ``trace_log`` is a list, the trace after every gate is appended to it.
    """
    if not 0.0 <= p <= 1.0:
        raise InputError(f"noise probability must lie in [0, 1], got {p}")
    if noise not in ("pair", "independent"):
        raise InputError(f"unknown noise model {noise!r}")
    n = c.width
    if n > MAX_DENSITY_WIDTH:
        raise CapabilityError(f"density-matrix simulation is limited to {MAX_DENSITY_WIDTH} data qubits")
    psi = np.asarray(initial, dtype=complex).reshape(-1)
    if psi.size != 1 << n:
        raise InputError(f"initial state has {psi.size} amplitudes, expected {1 << n}")
    norm = np.linalg.norm(psi)
    if not math.isclose(norm, 1.0, abs_tol=1e-9):
        raise InputError("initial state must be normalized")
    m = n + 1
    full = np.kron(psi, [1.0, 0.0])
    rho = np.outer(full, full.conj()).reshape((2,) * (2 * m))
    anc = c.ancilla
    for g in c.gates:
        if g.kind == CX:
            rho = _rho_cx(rho, g.qubit, anc, m)
            if noise == "pair":
                rho = depolarize(rho, (g.qubit, anc), p, m)
            else:
                rho = depolarize(depolarize(rho, (g.qubit,), p, m), (anc,), p, m)
        elif g.kind == RZ:
            rho = _rho_rz(rho, g.angle, g.qubit, m)
        else:
            rho = _rho_1q(rho, gate_matrix(g.kind, g.axis), g.qubit, m)
        if trace_log is not None:
            trace_log.append(complex(np.trace(rho.reshape(1 << m, 1 << m))))
    return rho.reshape(1 << m, 1 << m)


def noisy_distribution(c: Circuit, initial: np.ndarray, p: float, noise: str = "pair") -> np.ndarray:
    """Computational-basis probabilities of the data qubits, ancilla traced out."""
    rho = evolve_density(c, initial, p, noise)
    probs = np.real(np.diag(rho)).reshape(-1, 2).sum(axis=1)
    return np.clip(probs, 0.0, None)


def ideal_distribution(u: np.ndarray, initial: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(u) @ np.asarray(initial, dtype=complex)) ** 2


def initial_state(spec: str, width: int) -> np.ndarray:
    """State vector from a name: ``ghz-like``, ``zero``, ``plus`` or a bitstring like ``0101``.

    ``ghz-like`` is (|0..01..1> + |1..10..0>)/sqrt(2) with the split at width // 2,
    i.e. (|0011> + |1100>)/sqrt(2) on four qubits.
    """
    dim = 1 << width
    spec = spec.strip()
    if spec.startswith("basis:"):
        spec = spec[len("basis:") :]
    psi = np.zeros(dim, dtype=complex)
    if spec == "ghz-like":
        half = width // 2
        a = int("0" * half + "1" * (width - half), 2)
        b = int("1" * half + "0" * (width - half), 2)
        psi[a] = psi[b] = 1 / math.sqrt(2)
    elif spec == "zero":
        psi[0] = 1.0
    elif spec == "plus":
        psi[:] = 1 / math.sqrt(dim)
    elif len(spec) == width and set(spec) <= {"0", "1"}:
        psi[int(spec, 2)] = 1.0
    else:
        raise InputError(f"unknown initial state {spec!r} for width {width}")
    return psi


# --- distribution distances ---------------------------------------------------------


def _distributions(p, q):
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise InputError(f"distribution size mismatch {p.shape} vs {q.shape}")
    if (p < -1e-12).any() or (q < -1e-12).any():
        raise InputError("probabilities must be non-negative")
    return np.clip(p, 0, None), np.clip(q, 0, None)


def hellinger_distance(p, q) -> float:
    p, q = _distributions(p, q)
    d = np.linalg.norm(np.sqrt(p) - np.sqrt(q)) / math.sqrt(2)
    return float(min(1.0, d))


def hellinger_infidelity(p, q, convention: str = "squared") -> float:
    """``squared``: 1 - (1 - H^2)^2 (zero for identical inputs). ``literal``: 1 - H."""
    h = hellinger_distance(p, q)
    if convention == "squared":
        return float(1.0 - (1.0 - h * h) ** 2)
    if convention == "literal":
        return 1.0 - h
    raise InputError(f"unknown infidelity convention {convention!r}")
