"""Term-ordering strategies.

Every strategy maps a Hamiltonian to an ``Ordering`` (a permutation of term
indices). CLI names: ``lex``, ``mag``, ``random``, ``deplete``, ``mctsp``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from hsim.errors import InputError
from hsim.grouping import build_commutation_graph, min_clique_cover
from hsim.hamiltonian import Hamiltonian, make_rng
from hsim.pauli import cnot_distance, sequence_cnot_cost
from hsim.sequencing import sequence_cliques
from hsim.tsp import TspInstance, endpoint_path, tsp_path

STRATEGIES = ("lex", "mag", "random", "deplete", "mctsp")


@dataclass(frozen=True)
class Ordering:
    strategy: str
    permutation: tuple[int, ...]
    # start offset of each clique block in ``permutation`` (mctsp only)
    clique_boundaries: Optional[tuple[int, ...]] = None
    seed: Optional[int] = None

    def __post_init__(self):
        perm = tuple(int(i) for i in self.permutation)
        if sorted(perm) != list(range(len(perm))):
            raise InputError(f"ordering {perm} is not a permutation")
        object.__setattr__(self, "permutation", perm)

    def __len__(self):
        return len(self.permutation)

    def strings(self, h: Hamiltonian):
        return [h.terms[i].string for i in self.permutation]

    def terms(self, h: Hamiltonian):
        return [h.terms[i] for i in self.permutation]

    def blocks(self) -> list[tuple[int, ...]]:
        if self.clique_boundaries is None:
            return [self.permutation]
        bounds = list(self.clique_boundaries) + [len(self.permutation)]
        return [self.permutation[a:b] for a, b in zip(bounds, bounds[1:])]

    def cnot_cost(self, h: Hamiltonian) -> int:
        return sequence_cnot_cost(self.strings(h))


def _lex_key(h: Hamiltonian):
    return lambda i: h.terms[i].string.symbols


def _magnitude_key(h: Hamiltonian):
    return lambda i: (-abs(h.terms[i].coefficient), h.terms[i].string.symbols)


def order_lexicographic(h: Hamiltonian) -> Ordering:
    return Ordering("lex", tuple(sorted(range(len(h)), key=_lex_key(h))))


def order_magnitude(h: Hamiltonian) -> Ordering:
    """Descending |coefficient|; equal magnitudes fall back to lexicographic order."""
    return Ordering("mag", tuple(sorted(range(len(h)), key=_magnitude_key(h))))


def order_random(h: Hamiltonian, seed: int) -> Ordering:
    # Generator.permutation is a Fisher-Yates shuffle driven by PCG64
    perm = make_rng(seed).permutation(len(h))
    return Ordering("random", tuple(int(i) for i in perm), seed=seed)


def order_deplete_groups(h: Hamiltonian) -> Ordering:
    """Round-robin over cliques (cover order), taking each clique's largest remaining term."""
    cover = min_clique_cover(build_commutation_graph(h))
    key = _magnitude_key(h)
    queues = [sorted(c, key=key) for c in cover.cliques]
    perm = []
    while any(queues):
        for q in queues:
            if q:
                perm.append(q.pop(0))
    return Ordering("deplete", tuple(perm))


MAX_REFINE_SWEEPS = 8


def _refine_boundaries(h: Hamiltonian, paths: list[list[int]]) -> list[list[int]]:
    """Re-solve each clique path with its neighbours' endpoints as anchors.

    The cost being lowered is the cyclic step cost: every transition plus the
    wraparound from the last term back to the first, which is what each extra
    Trotter step adds once cancellation runs across step boundaries. A clique
    path is replaced only on strict improvement, so the loop terminates and
    never does worse than the plain per-clique paths.
    """
    m = len(paths)
    if m == 1:
        return paths
    strings = h.strings
    dist = lambda a, b: cnot_distance(strings[a], strings[b])  # noqa: E731
    for _ in range(MAX_REFINE_SWEEPS):
        changed = False
        for k in range(m):
            prev, nxt, cur = paths[k - 1][-1], paths[(k + 1) % m][0], paths[k]
            inst = TspInstance(tuple(strings[i] for i in cur))
            start = [dist(prev, i) for i in cur]
            end = [dist(i, nxt) for i in cur]
            cand = endpoint_path(inst.distance, start, end, range(len(cur)))

            def cost(order):
                return start[order[0]] + end[order[-1]] + sum(inst.distance[a, b] for a, b in zip(order, order[1:]))

            if cost(cand) < cost(list(range(len(cur)))):
                paths[k] = [cur[j] for j in cand]
                changed = True
        if not changed:
            break
    return paths


def order_max_commute_tsp(h: Hamiltonian) -> Ordering:
    """Clique cover, clique sequencing, then a CNOT-distance path per clique.

    Each clique path starts as the standalone ``tsp_path`` (endpoints anchored
    to the identity) and is then re-solved against its neighbours' endpoints.
    """
    g = build_commutation_graph(h)
    cover = min_clique_cover(g)
    sequence = sequence_cliques(h, cover, g)
    paths = []
    for k in sequence:
        clique = cover.cliques[k]
        inst = TspInstance(tuple(h.terms[i].string for i in clique))
        paths.append([clique[j] for j in tsp_path(inst, anchored=True)])
    paths = _refine_boundaries(h, paths)
    perm, bounds = [], []
    for path in paths:
        bounds.append(len(perm))
        perm.extend(path)
    return Ordering("mctsp", tuple(perm), clique_boundaries=tuple(bounds))


def order_by_name(h: Hamiltonian, strategy: str, seed: int = 0) -> Ordering:
    if strategy == "lex":
        return order_lexicographic(h)
    if strategy == "mag":
        return order_magnitude(h)
    if strategy == "random":
        return order_random(h, seed)
    if strategy == "deplete":
        return order_deplete_groups(h)
    if strategy == "mctsp":
        return order_max_commute_tsp(h)
    raise InputError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
