"""Commutation graph and greedy clique cover.

A clique cover of G is a proper colouring of its complement, so the cover is
built by sequential greedy colouring of the anti-commutation graph with
vertices visited largest-degree first (degree counted in the complement),
ties by lower index. Every step is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hsim.errors import InputError
from hsim.hamiltonian import Hamiltonian
from hsim.pauli import commutes


@dataclass(frozen=True, eq=False)
class CommutationGraph:
    """Node i is term i; ``adjacency[i, j]`` is True iff terms i and j commute (i != j)."""

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool).copy()
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("adjacency must be a square matrix")
        if not np.array_equal(a, a.T):
            raise InputError("adjacency must be symmetric")
        np.fill_diagonal(a, False)
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def n_nodes(self) -> int:
        return self.adjacency.shape[0]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def n_edges(self) -> int:
        return int(self.adjacency.sum()) // 2


@dataclass(frozen=True)
class CliqueCover:
    cliques: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def as_lists(self) -> list[list[int]]:
        return [list(c) for c in self.cliques]

    def is_valid_for(self, g: CommutationGraph) -> bool:
        """Partition of all nodes into cliques of ``g``."""
        flat = [i for c in self.cliques for i in c]
        if sorted(flat) != list(range(g.n_nodes)) or any(len(c) == 0 for c in self.cliques):
            return False
        return all(
            g.adjacency[i, j] for c in self.cliques for a, i in enumerate(c) for j in c[a + 1 :]
        )


def build_commutation_graph(h: Hamiltonian) -> CommutationGraph:
    strings = h.strings
    n = len(strings)
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            adj[i, j] = adj[j, i] = commutes(strings[i], strings[j])
    return CommutationGraph(adj)


def min_clique_cover(g: CommutationGraph) -> CliqueCover:
    n = g.n_nodes
    if n == 0:
        return CliqueCover(())
    conflict = ~g.adjacency
    np.fill_diagonal(conflict, False)
    degree = conflict.sum(axis=1)
    # stable sort on -degree keeps lower index first among ties
    visit = np.argsort(-degree, kind="stable")

    classes: list[list[int]] = []
    for v in visit:
        for members in classes:
            if not conflict[v, members].any():
                members.append(int(v))
                break
        else:
            classes.append([int(v)])

    cliques = [tuple(sorted(m)) for m in classes]
    cliques.sort(key=lambda c: (-len(c), c[0]))
    return CliqueCover(tuple(cliques))
