"""Shortest Hamiltonian paths through Pauli strings under the CNOT distance.

Two objectives are supported:

* ``anchored=False``: transition cost only, the sum of ``cnot_distance`` over
  consecutive strings.
* ``anchored=True``: transition cost plus the Hamming weights of the two
  endpoints. This is the CNOT count of the block on its own, and equals a
  closed tour through an extra all-identity depot node. The distance stays
  metric.

Instances of up to ``EXACT_LIMIT`` nodes are solved exactly with Held-Karp.
Larger ones use MST + greedy odd-vertex matching + Euler shortcutting, then
2-opt. The result is turned into a path (heaviest edge dropped, or cut at the
depot) and refined with path 2-opt. The lexicographic order is always scored
as a fallback, so the result is never worse than it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from hsim.errors import InputError
from hsim.pauli import PauliString, cnot_distance, hamming_weight

EXACT_LIMIT = 10


@dataclass(frozen=True)
class TspInstance:
    nodes: tuple[PauliString, ...]
    distance: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(p if isinstance(p, PauliString) else PauliString(p) for p in self.nodes)
        if not nodes:
            raise InputError("TSP instance needs at least one node")
        if len({p.width for p in nodes}) != 1:
            raise InputError("all nodes must have the same width")
        n = len(nodes)
        d = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                d[i, j] = d[j, i] = cnot_distance(nodes[i], nodes[j])
        d.setflags(write=False)
        w = np.array([hamming_weight(p) for p in nodes], dtype=np.int64)
        w.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "distance", d)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.nodes)


def _check_permutation(order: Sequence[int], n: int) -> list[int]:
    order = [int(i) for i in order]
    if sorted(order) != list(range(n)):
        raise InputError(f"{order} is not a permutation of range({n})")
    return order


def path_cost(instance: TspInstance, order: Sequence[int]) -> int:
    order = _check_permutation(order, len(instance))
    d = instance.distance
    return int(sum(d[a, b] for a, b in zip(order, order[1:])))


def anchored_cost(instance: TspInstance, order: Sequence[int]) -> int:
    """Path cost plus both endpoint weights (the block's standalone CNOT count)."""
    order = _check_permutation(order, len(instance))
    w = instance.weights
    return path_cost(instance, order) + int(w[order[0]] + w[order[-1]])


def lexicographic_order(instance: TspInstance) -> list[int]:
    return sorted(range(len(instance)), key=lambda i: instance.nodes[i].symbols)


def tsp_path(instance: TspInstance, anchored: bool = False) -> list[int]:
    n = len(instance)
    if n == 1:
        return [0]
    d = instance.distance
    ends = instance.weights if anchored else np.zeros(n, dtype=np.int64)
    if n <= EXACT_LIMIT:
        best = exact_path(d, ends, ends)
    else:
        best = heuristic_path(d, ends if anchored else None)
    cost = anchored_cost if anchored else path_cost
    lex = lexicographic_order(instance)
    if cost(instance, lex) < cost(instance, best):
        return lex
    return best


def exact_path(dist: np.ndarray, start=None, end=None) -> list[int]:
    """Held-Karp minimum of ``start[p0] + sum dist + end[p_last]`` over all paths."""
    dist = np.asarray(dist, dtype=np.int64)
    n = dist.shape[0]
    start = np.zeros(n, dtype=np.int64) if start is None else np.asarray(start, dtype=np.int64)
    end = np.zeros(n, dtype=np.int64) if end is None else np.asarray(end, dtype=np.int64)
    if n == 1:
        return [0]
    if n > 20:
        raise InputError("exact path search is limited to 20 nodes")
    inf = np.iinfo(np.int64).max // 4
    full = 1 << n
    dp = np.full((full, n), inf, dtype=np.int64)
    parent = np.full((full, n), -1, dtype=np.int64)
    bits = 1 << np.arange(n)
    dp[bits, np.arange(n)] = start
    cols = np.arange(n)
    for mask in range(1, full):
        row = dp[mask]
        ends_in = np.flatnonzero(row < inf)
        if ends_in.size == 0:
            continue
        outside = cols[(mask & bits) == 0]
        if outside.size == 0:
            continue
        cand = row[ends_in][:, None] + dist[np.ix_(ends_in, outside)]
        arg = cand.argmin(axis=0)
        best = cand[arg, np.arange(outside.size)]
        nxt = mask | bits[outside]
        better = best < dp[nxt, outside]
        dp[nxt[better], outside[better]] = best[better]
        parent[nxt[better], outside[better]] = ends_in[arg[better]]
    last_row = dp[full - 1] + end
    k = int(last_row.argmin())
    path = [k]
    mask = full - 1
    while True:
        p = int(parent[mask, k])
        if p < 0:
            break
        mask ^= 1 << k
        k = p
        path.append(k)
    path.reverse()
    if np.array_equal(start, end):
        # a path and its reverse cost the same; prefer the one starting at the lower index
        path = min(path, path[::-1])
    return path


def _prim_mst(dist: np.ndarray) -> list[tuple[int, int]]:
    n = dist.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = dist[0].astype(float).copy()
    link = np.zeros(n, dtype=np.int64)
    edges = []
    for _ in range(n - 1):
        cand = np.where(in_tree, np.inf, best)
        v = int(cand.argmin())
        edges.append((int(link[v]), v))
        in_tree[v] = True
        closer = dist[v] < best
        best = np.where(closer, dist[v], best)
        link = np.where(closer, v, link)
    return edges


def _greedy_matching(dist: np.ndarray, odd: list[int]) -> list[tuple[int, int]]:
    pairs = sorted(
        (int(dist[a, b]), a, b) for i, a in enumerate(odd) for b in odd[i + 1 :]
    )
    matched = set()
    out = []
    for _, a, b in pairs:
        if a not in matched and b not in matched:
            matched.update((a, b))
            out.append((a, b))
    return out


def _euler_tour(n: int, edges: list[tuple[int, int]]) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for eid, (a, b) in enumerate(edges):
        adj[a].append(eid)
        adj[b].append(eid)
    for lst in adj:
        # pop() takes from the end, so sort descending to walk the lowest edge id first
        lst.sort(reverse=True)
    used = [False] * len(edges)
    stack, tour = [0], []
    while stack:
        v = stack[-1]
        while adj[v] and used[adj[v][-1]]:
            adj[v].pop()
        if not adj[v]:
            tour.append(stack.pop())
            continue
        eid = adj[v].pop()
        used[eid] = True
        a, b = edges[eid]
        stack.append(b if a == v else a)
    return tour[::-1]


def christofides_cycle(dist: np.ndarray) -> list[int]:
    """Christofides-style tour (greedy rather than minimum-weight matching)."""
    n = dist.shape[0]
    if n <= 2:
        return list(range(n))
    mst = _prim_mst(dist)
    deg = np.zeros(n, dtype=np.int64)
    for a, b in mst:
        deg[a] += 1
        deg[b] += 1
    odd = [int(v) for v in np.flatnonzero(deg % 2)]
    tour = _euler_tour(n, mst + _greedy_matching(dist, odd))
    seen, cycle = set(), []
    for v in tour:
        if v not in seen:
            seen.add(v)
            cycle.append(v)
    return cycle


def two_opt_cycle(dist: np.ndarray, cycle: list[int]) -> list[int]:
    c = list(cycle)
    n = len(c)
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            for j in range(i + 2, n if i > 0 else n - 1):
                a, b = c[i], c[i + 1]
                x, y = c[j], c[(j + 1) % n]
                if dist[a, x] + dist[b, y] < dist[a, b] + dist[x, y]:
                    c[i + 1 : j + 1] = reversed(c[i + 1 : j + 1])
                    improved = True
    return c


def two_opt_path(dist: np.ndarray, path: list[int], start=None, end=None) -> list[int]:
    """Segment-reversal local search on an open path.

    ``start[v]``/``end[v]`` are the costs of placing node v first/last;
    ``end`` defaults to ``start`` and both default to zero.
    """
    p = list(path)
    n = len(p)
    s = np.zeros(dist.shape[0], dtype=np.int64) if start is None else np.asarray(start)
    e = s if end is None else np.asarray(end)
    improved = True
    while improved:
        improved = False
        for i in range(n):
            for j in range(i + 1, n):
                if i == 0 and j == n - 1:
                    # full reversal only matters when the endpoint costs differ
                    if s[p[-1]] + e[p[0]] < s[p[0]] + e[p[-1]]:
                        p.reverse()
                        improved = True
                    continue
                old_l = dist[p[i - 1], p[i]] if i > 0 else s[p[i]]
                new_l = dist[p[i - 1], p[j]] if i > 0 else s[p[j]]
                old_r = dist[p[j], p[j + 1]] if j < n - 1 else e[p[j]]
                new_r = dist[p[i], p[j + 1]] if j < n - 1 else e[p[i]]
                if new_l + new_r < old_l + old_r:
                    p[i : j + 1] = reversed(p[i : j + 1])
                    improved = True
    return p


def endpoint_path(dist: np.ndarray, start, end, init: Sequence[int]) -> list[int]:
    """Path minimizing ``start[p0] + sum dist + end[p_last]``.

    Exact up to ``EXACT_LIMIT`` nodes; otherwise 2-opt from ``init``, never
    returning anything worse than ``init``.
    """
    dist = np.asarray(dist, dtype=np.int64)
    start = np.asarray(start, dtype=np.int64)
    end = np.asarray(end, dtype=np.int64)
    if dist.shape[0] <= EXACT_LIMIT:
        return exact_path(dist, start, end)
    return two_opt_path(dist, list(init), start, end)


def heuristic_path(dist: np.ndarray, ends=None) -> list[int]:
    """Tour construction + 2-opt, converted to a path.

    Without ``ends`` the heaviest tour edge is deleted (first one in tour
    order on ties). With ``ends`` an identity depot joins the tour and the
    path is cut there.
    """
    dist = np.asarray(dist, dtype=np.int64)
    n = dist.shape[0]
    if n == 1:
        return [0]
    if ends is None:
        cycle = two_opt_cycle(dist, christofides_cycle(dist))
        weights = [dist[cycle[k], cycle[(k + 1) % n]] for k in range(n)]
        cut = int(np.argmax(weights))
        path = cycle[cut + 1 :] + cycle[: cut + 1]
    else:
        ends = np.asarray(ends, dtype=np.int64)
        aug = np.zeros((n + 1, n + 1), dtype=np.int64)
        aug[:n, :n] = dist
        aug[n, :n] = aug[:n, n] = ends
        cycle = two_opt_cycle(aug, christofides_cycle(aug))
        k = cycle.index(n)
        path = cycle[k + 1 :] + cycle[:k]
    return two_opt_path(dist, path, ends)
