"""Simple undirected graphs and their basic topological descriptors.

Vertices are the integers ``0..n-1``. Integer-valued descriptors (degrees,
total adjacency, distances, extended connectivities) are exact Python ints;
ratios are floats.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import (
    DegenerateOrder,
    Disconnected,
    DuplicateEdge,
    EmptyGraph,
    LoopEdge,
    VertexOutOfRange,
)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``edges`` holds each edge once as ``(i, j)`` with ``i < j``, sorted.
    Construct through :func:`build_graph` to get validation.
    """

    n: int
    edges: Tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors)

    def has_edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return (i, j) in self.edge_set

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return build_graph(self.n, [(perm[i], perm[j]) for i, j in self.edges])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def build_graph(n: int, edges: Iterable[Sequence[int]], tolerant: bool = False) -> Graph:
    """Validate ``edges`` and build a :class:`Graph` on ``n`` vertices.

    With ``tolerant=True`` repeated edges (in either orientation) collapse
    silently; otherwise they raise :class:`DuplicateEdge`. Loops are always
    rejected.
    """
    if n <= 0:
        raise EmptyGraph(f"graph needs at least one vertex, got n={n}")
    seen = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if not (0 <= i < n and 0 <= j < n):
            raise VertexOutOfRange(f"edge ({i}, {j}) outside 0..{n - 1}")
        if i == j:
            raise LoopEdge(f"loop at vertex {i}")
        key = (i, j) if i < j else (j, i)
        if key in seen:
            if tolerant:
                continue
            raise DuplicateEdge(f"edge {key} given twice")
        seen.add(key)
    return Graph(n, tuple(sorted(seen)))


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Star with center 0 and ``n - 1`` leaves."""
    return build_graph(n, [(0, i) for i in range(1, n)])


def is_connected(g: Graph) -> bool:
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in g.neighbors[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise Disconnected(f"graph with n={g.n}, m={g.m} is not connected")


def degree(g: Graph, i: int) -> int:
    if not 0 <= i < g.n:
        raise VertexOutOfRange(f"vertex {i} outside 0..{g.n - 1}")
    return g.degrees[i]


def total_adjacency(g: Graph) -> int:
    return sum(g.degrees)


def connectedness(g: Graph) -> Tuple[float, float]:
    """Return ``(Conn, Conn')`` = ``(2m/n^2, 2m/(n(n-1)))``."""
    if g.n < 2:
        raise DegenerateOrder("Conn' needs n >= 2")
    a = total_adjacency(g)
    return a / g.n**2, a / (g.n * (g.n - 1))


def edges_among_neighbors(g: Graph, i: int) -> int:
    nb = g.neighbors[i]
    return sum(1 for x in range(len(nb)) for y in range(x + 1, len(nb)) if g.has_edge(nb[x], nb[y]))


def clustering(g: Graph) -> Tuple[Tuple[float, ...], float]:
    """Local clustering coefficients and their mean.

    Vertices of degree 0 or 1 get ``c_i = 0``.
    """
    local = []
    for i, a in enumerate(g.degrees):
        if a <= 1:
            local.append(0.0)
        else:
            local.append(2 * edges_among_neighbors(g, i) / (a * (a - 1)))
    return tuple(local), math.fsum(local) / g.n


def extended_connectivity(g: Graph, k_max: int = 2) -> List[int]:
    """Morgan-style extended connectivities ``[^0EC, ..., ^k_maxEC]``.

    Each vertex starts with its degree; every iteration replaces a vertex
    value by the sum over its neighbours. ``^kEC`` is the sum over vertices.
    """
    ec = list(g.degrees)
    out = [sum(ec)]
    for _ in range(k_max):
        ec = [sum(ec[j] for j in g.neighbors[i]) for i in range(g.n)]
        out.append(sum(ec))
    return out


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    d: np.ndarray = field(repr=False)

    def __getitem__(self, ij):
        return int(self.d[ij])


def distances(g: Graph) -> DistanceMatrix:
    """All-pairs hop counts by one BFS per source."""
    d = np.full((g.n, g.n), -1, dtype=np.int64)
    for s in range(g.n):
        row = d[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors[v]:
                if row[w] < 0:
                    row[w] = row[v] + 1
                    queue.append(w)
        if (row < 0).any():
            raise Disconnected(f"vertex {int(np.argmax(row < 0))} unreachable from {s}")
    d.setflags(write=False)
    return DistanceMatrix(g.n, d)


@dataclass(frozen=True)
class DistanceDescriptors:
    distance_degrees: Tuple[int, ...]
    graph_distance: int
    avg_vertex_distance: float
    avg_graph_distance: float
    mean_geodesic: float


def distance_descriptors(g: Graph) -> DistanceDescriptors:
    if g.n < 2:
        raise DegenerateOrder("distance descriptors need n >= 2")
    dm = distances(g)
    dd = tuple(int(x) for x in dm.d.sum(axis=1))
    total = sum(dd)
    n = g.n
    # Lower triangle including the zero diagonal, over n(n+1)/2 pairs.
    lower = int(np.tril(dm.d).sum())
    return DistanceDescriptors(
        distance_degrees=dd,
        graph_distance=total,
        avg_vertex_distance=total / n,
        avg_graph_distance=total / (n * (n - 1)),
        mean_geodesic=lower / (n * (n + 1) / 2),
    )


@dataclass(frozen=True)
class DescriptorReport:
    n: int
    m: int
    degrees: Tuple[int, ...]
    total_adjacency: int
    avg_degree: float
    conn: float
    conn_prime: float
    local_clustering: Tuple[float, ...]
    clustering: float
    extended_connectivity: Tuple[int, ...]
    distance_degrees: Tuple[int, ...]
    graph_distance: int
    avg_vertex_distance: float
    avg_graph_distance: float
    mean_geodesic: float


def descriptors(g: Graph, k_max: int = 2) -> DescriptorReport:
    """Every basic descriptor of a connected graph with ``n >= 2``."""
    require_connected(g)
    conn, conn_p = connectedness(g)
    local, c = clustering(g)
    dist = distance_descriptors(g)
    a = total_adjacency(g)
    return DescriptorReport(
        n=g.n,
        m=g.m,
        degrees=g.degrees,
        total_adjacency=a,
        avg_degree=a / g.n,
        conn=conn,
        conn_prime=conn_p,
        local_clustering=local,
        clustering=c,
        extended_connectivity=tuple(extended_connectivity(g, k_max)),
        distance_degrees=dist.distance_degrees,
        graph_distance=dist.graph_distance,
        avg_vertex_distance=dist.avg_vertex_distance,
        avg_graph_distance=dist.avg_graph_distance,
        mean_geodesic=dist.mean_geodesic,
    )
