"""Undirected simple graphs on dense integer ids, plus the structural
subroutines the solvers share: BFS distances, components, bipartitions,
degeneracy."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

UNREACHABLE = math.inf


class GraphError(ValueError):
    pass


class Graph:
    """Immutable simple graph on vertices 0..n-1.

    No self-loops, no parallel edges; adjacency lists are sorted. Safe to
    share across threads: all operations are pure queries.
    """

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"parallel edge ({e[0]},{e[1]})")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self._edges = frozenset(seen)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        e = (u, v) if u < v else (v, u)
        return e in self._edges

    def vertices(self) -> range:
        return range(self.n)

    def relabeled(self, perm: list[int]) -> "Graph":
        """Graph with vertex u renamed perm[u]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self._edges])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("cycle needs at least 3 vertices")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Hop distances from source; UNREACHABLE (inf) marks other components."""
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} out of range")
    dist: list[float] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex partition into components, each sorted, ordered by minimum id."""
    comp = [-1] * g.n
    out: list[list[int]] = []
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        idx = len(out)
        comp[s] = idx
        members = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if comp[v] < 0:
                    comp[v] = idx
                    members.append(v)
                    queue.append(v)
        out.append(sorted(members))
    return out


@dataclass(frozen=True)
class Bipartition:
    """Either a two-coloring of the vertices or an odd closed walk witness."""

    side: tuple[int, ...] | None
    odd_cycle: tuple[int, ...] | None

    @property
    def is_bipartite(self) -> bool:
        return self.side is not None

    def component_sides(self, g: Graph) -> list[tuple[list[int], list[int]]]:
        """Per component (L, R) with L the side of the smallest vertex."""
        if self.side is None:
            raise GraphError("graph is not bipartite")
        out = []
        for members in connected_components(g):
            anchor = self.side[members[0]]
            left = [v for v in members if self.side[v] == anchor]
            right = [v for v in members if self.side[v] != anchor]
            out.append((left, right))
        return out


def bipartition(g: Graph) -> Bipartition:
    """Two-color g or produce an odd closed walk.

    The witness walk is a simple cycle (first vertex repeated at the end)
    with an odd number of edges.
    """
    side = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if side[v] < 0:
                    side[v] = side[u] ^ 1
                    parent[v] = u
                    queue.append(v)
                elif side[v] == side[u]:
                    return Bipartition(side=None, odd_cycle=_odd_cycle(parent, u, v))
    return Bipartition(side=tuple(side), odd_cycle=None)


def _odd_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    # Join the two tree paths at their lowest common ancestor.
    anc_u = [u]
    while parent[anc_u[-1]] >= 0:
        anc_u.append(parent[anc_u[-1]])
    pos = {x: i for i, x in enumerate(anc_u)}
    path_v = [v]
    while path_v[-1] not in pos:
        path_v.append(parent[path_v[-1]])
    lca = path_v[-1]
    walk = anc_u[: pos[lca] + 1] + path_v[-2::-1] + [u]
    return tuple(walk)


def degeneracy_order(g: Graph) -> tuple[int, list[int]]:
    """Peel minimum-degree vertices; returns (degeneracy, elimination order).

    Deterministic: ties broken by smallest vertex id.
    """
    if g.n == 0:
        return 0, []
    deg = [g.degree(u) for u in range(g.n)]
    removed = [False] * g.n
    buckets: list[set[int]] = [set() for _ in range(g.n)]
    for u in range(g.n):
        buckets[deg[u]].add(u)
    order: list[int] = []
    d = 0
    cursor = 0
    for _ in range(g.n):
        while not buckets[cursor]:
            cursor += 1
        u = min(buckets[cursor])
        buckets[cursor].remove(u)
        d = max(d, deg[u])
        removed[u] = True
        order.append(u)
        for v in g.neighbors(u):
            if not removed[v]:
                buckets[deg[v]].remove(v)
                deg[v] -= 1
                buckets[deg[v]].add(v)
        cursor = max(0, cursor - 1)
    return d, order
