"""Choosing the order in which commuting cliques are simulated.

Candidates come from greedy growth on inter-clique edge counts. For every
ordered pair (root, second), the sequence is extended by repeatedly appending
the unused clique with the most commuting edges to the last appended one.
Ties go to the lower clique index. The identity order is added as a baseline.
Each candidate is scored by the summed magnitude of non-commuting coefficient
products between consecutive cliques, and the lowest score wins. Ties go to
the earliest candidate, with the identity first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hsim.grouping import CliqueCover, CommutationGraph, build_commutation_graph
from hsim.hamiltonian import Hamiltonian


def pair_cost_table(h: Hamiltonian, cover: CliqueCover, g: CommutationGraph | None = None) -> np.ndarray:
    """M x M table of sum |c_a c_b| over non-commuting cross pairs."""
    if g is None:
        g = build_commutation_graph(h)
    coef = np.abs(h.coefficients)
    anti = ~g.adjacency
    m = len(cover)
    table = np.zeros((m, m))
    for i in range(m):
        ci = list(cover.cliques[i])
        for j in range(i + 1, m):
            cj = list(cover.cliques[j])
            block = anti[np.ix_(ci, cj)]
            table[i, j] = table[j, i] = float(coef[ci] @ block @ coef[cj])
    return table


def edge_count_table(cover: CliqueCover, g: CommutationGraph) -> np.ndarray:
    m = len(cover)
    table = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            n = int(g.adjacency[np.ix_(list(cover.cliques[i]), list(cover.cliques[j]))].sum())
            table[i, j] = table[j, i] = n
    return table


def permutation_score(table: np.ndarray, perm) -> float:
    return float(sum(table[a, b] for a, b in zip(perm, perm[1:])))


def candidate_permutations(edges: np.ndarray) -> list[tuple[int, ...]]:
    m = edges.shape[0]
    out = [tuple(range(m))]
    seen = set(out)
    for root in range(m):
        for second in range(m):
            if second == root:
                continue
            seq = [root, second]
            unused = set(range(m)) - {root, second}
            while unused:
                last = seq[-1]
                nxt = min(unused, key=lambda c: (-edges[last, c], c))
                seq.append(nxt)
                unused.remove(nxt)
            t = tuple(seq)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


@dataclass(frozen=True)
class SequencingResult:
    permutation: tuple[int, ...]
    score: float
    candidate_count: int
    pair_cost: np.ndarray
    edge_count: np.ndarray


def sequence_cliques_detailed(h: Hamiltonian, cover: CliqueCover, g: CommutationGraph) -> SequencingResult:
    cost = pair_cost_table(h, cover, g)
    edges = edge_count_table(cover, g)
    cands = candidate_permutations(edges)
    scores = [permutation_score(cost, c) for c in cands]
    k = int(np.argmin(scores))
    return SequencingResult(cands[k], scores[k], len(cands), cost, edges)


def sequence_cliques(h: Hamiltonian, cover: CliqueCover, g: CommutationGraph) -> list[int]:
    return list(sequence_cliques_detailed(h, cover, g).permutation)
