"""Bipartite graphs with their lex-first maximal matching, and small DAG tools."""

from __future__ import annotations

from collections import Counter, deque
from itertools import chain
from dataclasses import dataclass
from functools import cached_property
from typing import AbstractSet, Iterable

import numpy as np

Matching = frozenset  # of (bottom, top) pairs


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteGraph:
    """``num_bottom`` bottom vertices, ``num_top`` top vertices, edges (bottom, top)."""

    num_bottom: int
    num_top: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        edges = self.edges
        if not isinstance(edges, frozenset):
            edges = frozenset((int(i), int(j)) for i, j in edges)
        nb, nt = self.num_bottom, self.num_top
        if not all(0 <= i < nb and 0 <= j < nt for i, j in edges):
            for i, j in edges:
                if not 0 <= i < nb:
                    raise GraphError(f"bottom index out of range: {i}")
                if not 0 <= j < nt:
                    raise GraphError(f"top index out of range: {j}")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def bottom_adj(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.num_bottom)]
        for i, j in self.edges:
            adj[i].append(j)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def top_adj(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.num_top)]
        for i, j in self.edges:
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def max_degree(self) -> int:
        return self._max_degree

    @cached_property
    def _max_degree(self) -> int:
        bottoms = Counter(i for i, _ in self.edges)
        tops = Counter(j for _, j in self.edges)
        return max(chain(bottoms.values(), tops.values()), default=0)

    def adjacency_matrix(self) -> np.ndarray:
        e = np.zeros((self.num_bottom, self.num_top), dtype=bool)
        for i, j in self.edges:
            e[i, j] = True
        return e


@dataclass(frozen=True)
class DiGraph:
    num_vertices: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (0 <= i < self.num_vertices and 0 <= j < self.num_vertices):
                raise GraphError(f"vertex index out of range: ({i}, {j})")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.num_vertices)]
        for i, j in self.edges:
            adj[i].append(j)
        return tuple(tuple(sorted(a)) for a in adj)


def is_matching(g: BipartiteGraph, pairs: Iterable[tuple[int, int]]) -> bool:
    pairs = list(pairs)
    bottoms = [i for i, _ in pairs]
    tops = [j for _, j in pairs]
    return (len(set(bottoms)) == len(bottoms) and len(set(tops)) == len(tops)
            and all(p in g.edges for p in pairs))


def lfm_matching(g: BipartiteGraph) -> Matching:
    """Scan bottoms in order, matching each to its least unmatched neighbour."""
    taken = [False] * g.num_top
    pairs = []
    for i, nbrs in enumerate(g.bottom_adj):
        for j in nbrs:
            if not taken[j]:
                taken[j] = True
                pairs.append((i, j))
                break
    return frozenset(pairs)


def check_lfm_certificate(g: BipartiteGraph, L: AbstractSet[tuple[int, int]]) -> bool:
    """Check the first-order characterisation of the lfm-matching cell by cell.

    ``L(i, j)`` must hold exactly when ``(i, j)`` is an edge, bottom ``i`` has
    no partner left of ``j``, top ``j`` has no partner below ``i``, and every
    neighbour of ``i`` left of ``j`` is already taken by an earlier bottom.
    """
    E = g.adjacency_matrix()
    Lm = np.zeros_like(E)
    for i, j in L:
        if not (0 <= i < g.num_bottom and 0 <= j < g.num_top):
            return False
        Lm[i, j] = True
    # taken_before[i, k]: some i' < i has L(i', k)
    taken_before = np.zeros_like(Lm)
    if g.num_bottom > 1:
        taken_before[1:] = np.logical_or.accumulate(Lm[:-1], axis=0)
    for i in range(g.num_bottom):
        for j in range(g.num_top):
            rhs = (E[i, j]
                   and not Lm[i, :j].any()
                   and not Lm[:i, j].any()
                   and all(not E[i, k] or taken_before[i, k] for k in range(j)))
            if bool(Lm[i, j]) != bool(rhs):
                return False
    return True


def lfmm_decide_edge(g: BipartiteGraph, i: int, j: int) -> bool:
    if not (0 <= i < g.num_bottom and 0 <= j < g.num_top):
        raise GraphError(f"edge ({i}, {j}) out of range")
    return (i, j) in lfm_matching(g)


def vlfmm_decide_vertex(g: BipartiteGraph, j: int) -> bool:
    if not 0 <= j < g.num_top:
        raise GraphError(f"top vertex {j} out of range")
    return any(t == j for _, t in lfm_matching(g))


def reachable_set(dg: DiGraph, src: int = 0) -> frozenset[int]:
    if not 0 <= src < dg.num_vertices:
        raise GraphError(f"source {src} out of range")
    return frozenset(bfs_distances(dg, src))


def bfs_distances(dg: DiGraph, src: int = 0) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in dg.successors[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def bfs_conn_matrix(dg: DiGraph) -> np.ndarray:
    """Row ``d`` marks the vertices at distance at most ``d`` from vertex 0."""
    n = dg.num_vertices
    if n == 0:
        raise GraphError("empty graph")
    dist = bfs_distances(dg, 0)
    U = np.zeros((n, n), dtype=bool)
    for v, d in dist.items():
        U[d:, v] = True
    return U


@dataclass(frozen=True)
class Layered:
    graph: DiGraph
    labels: tuple[tuple[int, int], ...]  # vertex -> (layer, original vertex)
    base_size: int

    def vertex(self, layer: int, i: int) -> int:
        return layer * self.base_size + i


def layered_expansion(dg: DiGraph) -> Layered:
    """n layers of copies; copy ``i`` at layer ``l`` links to copy ``j`` at ``l + 1``
    when ``i == j`` or ``(i, j)`` is an edge.  Vertices are numbered layer by layer."""
    n = dg.num_vertices
    edges = set()
    for layer in range(n - 1):
        for i in range(n):
            edges.add((layer * n + i, (layer + 1) * n + i))
        for i, j in dg.edges:
            edges.add((layer * n + i, (layer + 1) * n + j))
    labels = tuple((layer, i) for layer in range(n) for i in range(n))
    return Layered(DiGraph(n * n, frozenset(edges)), labels, n)


def check_topological(dg: DiGraph) -> bool:
    return all(i < j for i, j in dg.edges)
