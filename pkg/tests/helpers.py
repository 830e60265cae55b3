"""Shared test utilities: small random graph builders and brute-force
base-problem solvers used as independent oracles."""

from __future__ import annotations

import itertools
import random

from discovery.graph import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_tree(n: int, rng: random.Random) -> Graph:
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return Graph(n, edges)


def random_connected_graph(n: int, rng: random.Random, extra: float = 0.25) -> Graph:
    tree = random_tree(n, rng) if n > 1 else Graph(n)
    edges = set(tree.edges)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra:
                edges.add((u, v))
    return Graph(n, edges)


def random_bipartite_connected(n: int, rng: random.Random, extra: float = 0.3) -> Graph:
    if n == 1:
        return Graph(1)
    side = [rng.randrange(2) for _ in range(n)]
    if all(s == side[0] for s in side):
        side[0] ^= 1
    edges = set()
    # connect greedily: attach each vertex beyond the first pair to an earlier
    # vertex on the opposite side
    order = sorted(range(n), key=lambda v: (side[v], v))
    placed = [order[0]]
    for v in order[1:]:
        opposite = [w for w in placed if side[w] != side[v]]
        if opposite:
            w = rng.choice(opposite)
            edges.add((min(v, w), max(v, w)))
        placed.append(v)
    # isolated-side guard: if some vertex still has no edge, wire to any opposite
    for v in range(n):
        if not any(v in e for e in edges):
            opp = [w for w in range(n) if side[w] != side[v]]
            w = rng.choice(opp)
            edges.add((min(v, w), max(v, w)))
    for u in range(n):
        for v in range(u + 1, n):
            if side[u] != side[v] and (u, v) not in edges and rng.random() < extra:
                edges.add((u, v))
    g = Graph(n, edges)
    return g


def random_2degenerate(n: int, rng: random.Random) -> Graph:
    """Build by attaching each new vertex to at most 2 earlier vertices."""
    edges = []
    for v in range(1, n):
        anchors = rng.sample(range(v), k=min(v, rng.randint(1, 2)))
        for a in anchors:
            edges.append((a, v))
    return Graph(n, edges)


def all_graphs(n: int):
    """All labeled graphs on n vertices."""
    slots = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(slots)):
        yield Graph(n, [slots[i] for i in range(len(slots)) if mask >> i & 1])


def nonisomorphic_graphs(n: int):
    """One representative per isomorphism class (brute force; n <= 5)."""
    slots = list(itertools.combinations(range(n), 2))
    index = {e: i for i, e in enumerate(slots)}
    seen = set()
    perms = list(itertools.permutations(range(n)))
    for mask in range(1 << len(slots)):
        best = mask
        for perm in perms:
            pm = 0
            for i, (u, v) in enumerate(slots):
                if mask >> i & 1:
                    a, b = perm[u], perm[v]
                    pm |= 1 << index[(a, b) if a < b else (b, a)]
            best = min(best, pm)
        if best in seen:
            continue
        seen.add(best)
        yield Graph(n, [slots[i] for i in range(len(slots)) if mask >> i & 1])


def floyd_warshall(g: Graph):
    inf = float("inf")
    n = g.n
    dist = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in g.edges:
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        for i in range(n):
            dik = dist[i][k]
            if dik == inf:
                continue
            for j in range(n):
                alt = dik + dist[k][j]
                if alt < dist[i][j]:
                    dist[i][j] = alt
    return dist


# --- brute-force base-problem answers (independent of the package solvers) ---


def brute_min_vertex_cover(g: Graph) -> int:
    for size in range(g.n + 1):
        for cand in itertools.combinations(range(g.n), size):
            s = set(cand)
            if all(u in s or v in s for u, v in g.edges):
                return size
    return g.n


def brute_has_clique(g: Graph, size: int) -> bool:
    return any(
        all(g.has_edge(a, b) for a, b in itertools.combinations(cand, 2))
        for cand in itertools.combinations(range(g.n), size)
    )


def brute_max_independent_set(g: Graph) -> int:
    best = 0
    for size in range(g.n, -1, -1):
        for cand in itertools.combinations(range(g.n), size):
            if all(not g.has_edge(a, b) for a, b in itertools.combinations(cand, 2)):
                return size
    return best


def brute_min_dominating_set(g: Graph) -> int:
    for size in range(g.n + 1):
        for cand in itertools.combinations(range(g.n), size):
            dominated = set(cand)
            for v in cand:
                dominated.update(g.neighbors(v))
            if len(dominated) == g.n:
                return size
    return g.n


def brute_multicolored_independent_set(g: Graph, parts: list[list[int]]) -> bool:
    for combo in itertools.product(*parts):
        if all(not g.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
            return True
    return False


def brute_multicolored_clique(g: Graph, parts: list[list[int]]) -> bool:
    for combo in itertools.product(*parts):
        if all(g.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
            return True
    return False


def brute_list_coloring(g: Graph, lists: dict[int, set[int]]) -> bool:
    domains = [sorted(lists[v]) for v in range(g.n)]
    for combo in itertools.product(*domains):
        if all(combo[u] != combo[v] for u, v in g.edges):
            return True
    return False


def brute_precoloring_extension(g: Graph, precolor: dict[int, int], r: int) -> bool:
    free = [v for v in range(g.n) if v not in precolor]
    for combo in itertools.product(range(1, r + 1), repeat=len(free)):
        coloring = dict(precolor)
        coloring.update(zip(free, combo))
        if all(coloring[u] != coloring[v] for u, v in g.edges):
            return True
    return False
