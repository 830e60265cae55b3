"""Minimum-weight perfect matching on cost matrices and the slide-scheduling
machinery built on it.

Every "enumerate targets + assign tokens" solver reduces to this module: the
cost of realizing a target set equals the minimum-weight perfect matching of
tokens to targets under shortest-path distances, and a matching of weight W
can always be scheduled as exactly W non-colliding slides by letting tokens
that meet on a path switch destinations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import UNREACHABLE, Graph, bfs_distances
from .instances import Move


def infeasible_entry(m: int, cap: int) -> int:
    """Sentinel weight for disconnected token/target pairs: m + cap + 1."""
    return m + cap + 1


@dataclass(frozen=True)
class MatchingResult:
    assignment: tuple[int, ...]  # row i -> column assignment[i]
    weight: int
    row_potentials: tuple[int, ...]
    col_potentials: tuple[int, ...]


def _hungarian(cost: list[list[int]]) -> tuple[int, list[int], list[int], list[int]]:
    """O(n^3) potentials form; returns (weight, assignment, u, v).

    Dual feasibility (cost[i][j] >= u[i] + v[j], tight on matched pairs)
    certifies optimality; the potentials are exposed for exactly that check.
    """
    n = len(cost)
    if n == 0:
        return 0, [], [], []
    INF = math.inf
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[j]: row matched to column j, 1-indexed; p[0] is scratch
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = -1
            row = cost[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assign = [-1] * n
    for j in range(1, n + 1):
        if p[j]:
            assign[p[j] - 1] = j - 1
    weight = sum(cost[i][assign[i]] for i in range(n))
    return weight, assign, u[1:], v[1:]


def matching_weight(cost: list[list[int]]) -> int:
    """Optimal value only; cheaper than the lexicographic solve."""
    return _hungarian(cost)[0]


def min_weight_perfect_matching(cost, lexicographic: bool = True) -> MatchingResult:
    """Minimum-weight row->column bijection of a square cost matrix.

    With lexicographic=True, ties among equal-weight matchings are broken
    toward the lexicographically smallest assignment vector, which keeps
    golden outputs stable.
    """
    cost = [list(row) for row in cost]
    n = len(cost)
    for row in cost:
        if len(row) != n:
            raise ValueError("cost matrix must be square")
        for entry in row:
            if entry < 0:
                raise ValueError("cost entries must be non-negative")
    weight, assign, u, v = _hungarian(cost)
    if not lexicographic or n <= 1:
        return MatchingResult(tuple(assign), weight, tuple(u), tuple(v))

    chosen: list[int] = []
    free_cols = list(range(n))
    remaining = weight
    for i in range(n):
        rest_rows = list(range(i + 1, n))
        picked = None
        for c in sorted(free_cols):
            rest_cols = [x for x in free_cols if x != c]
            sub = [[cost[r][x] for x in rest_cols] for r in rest_rows]
            if cost[i][c] + _hungarian(sub)[0] == remaining:
                picked = c
                break
        if picked is None:  # defensive; the optimal column always qualifies
            raise RuntimeError("lexicographic refinement lost the optimum")
        chosen.append(picked)
        free_cols.remove(picked)
        remaining -= cost[i][picked]
    return MatchingResult(tuple(chosen), weight, tuple(u), tuple(v))


def distance_matrix(
    g: Graph, sources: list[int], targets: list[int], cap: int
) -> list[list[int]]:
    """Pairwise slide distances; disconnected pairs get the m+cap+1 sentinel."""
    sentinel = infeasible_entry(g.m, cap)
    out = []
    for s in sources:
        dist = bfs_distances(g, s)
        out.append([sentinel if dist[t] == UNREACHABLE else int(dist[t]) for t in targets])
    return out


def sliding_cost(g: Graph, source, target, cap: int) -> int | None:
    """Minimum total slides turning token set `source` into set `target`.

    Equals the min-weight perfect matching over shortest-path distances;
    None when the optimum exceeds cap (including any disconnected pairing).
    """
    source = sorted(source)
    target = sorted(target)
    if len(source) != len(target):
        raise ValueError("source and target must have equal size")
    if source == target:
        return 0
    cost = distance_matrix(g, source, target, cap)
    weight = matching_weight(cost)
    return weight if weight <= cap else None


def _shortest_path(g: Graph, u: int, t: int, dist_from_t: list[float]) -> list[int]:
    # Deterministic shortest path: step to the smallest neighbor closer to t.
    path = [u]
    cur = u
    while cur != t:
        cur = min(w for w in g.neighbors(cur) if dist_from_t[w] == dist_from_t[cur] - 1)
        path.append(cur)
    return path


def extract_slide_schedule(g: Graph, source, target, assignment) -> list[Move]:
    """Turn a token->target assignment into an explicit slide sequence.

    `assignment` maps each source vertex to its target vertex (dict, or a
    list aligned with sorted(source)). Tokens are routed along fixed
    shortest paths in order of decreasing distance; when a runner meets
    another token, the two switch destinations and the met token carries on.
    For a minimum-weight assignment the emitted length equals the matching
    weight exactly.
    """
    source = sorted(source)
    if isinstance(assignment, dict):
        dest = dict(assignment)
    else:
        dest = {s: t for s, t in zip(source, assignment)}
    if sorted(dest) != source or sorted(dest.values()) != sorted(target):
        raise ValueError("assignment must biject source onto target")

    dist_cache: dict[int, list[float]] = {}

    def dist_from(t: int) -> list[float]:
        if t not in dist_cache:
            dist_cache[t] = bfs_distances(g, t)
        return dist_cache[t]

    occupied = dict(dest)  # current position -> destination
    moves: list[Move] = []
    steps_left = (len(source) + 1) * (g.n + 2) * (g.n + 2)
    while True:
        pending = [
            (pos, d) for pos, d in occupied.items() if pos != d
        ]
        if not pending:
            break
        # Longest chain first; smallest position breaks ties.
        pos, t = max(pending, key=lambda pd: (dist_from(pd[1])[pd[0]], -pd[0]))
        dt = dist_from(t)
        if dt[pos] == UNREACHABLE:
            raise ValueError(f"token at {pos} cannot reach {t}")
        path = _shortest_path(g, pos, t, dt)
        idx = 0
        cur = pos
        while cur != t:
            steps_left -= 1
            if steps_left < 0:
                raise RuntimeError("slide scheduling failed to converge")
            nxt = path[idx + 1]
            if nxt in occupied:
                # Destination switch: the blocking token inherits the rest
                # of the path, the runner takes its goal.
                occupied[cur], occupied[nxt] = occupied[nxt], t
            else:
                moves.append(Move.slide(cur, nxt))
                occupied[nxt] = occupied.pop(cur)
            cur = nxt
            idx += 1
    return moves


def swap_colors_via_sliding(g: Graph, u: int, v: int, path: list[int]) -> list[Move]:
    """Exchange the colors of u and v along a connecting path.

    Two passes: slide down the whole path, then slide back over all but the
    last edge. Uses exactly 2*dist - 1 color slides and restores every
    interior vertex to its original color.
    """
    if not path or path[0] != u or path[-1] != v or u == v:
        raise ValueError("path must lead from u to v")
    if len(set(path)) != len(path):
        raise ValueError("path must not repeat vertices")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"({a},{b}) is not an edge")
    moves = [Move.cslide(a, b) for a, b in zip(path, path[1:])]
    for i in range(len(path) - 3, -1, -1):
        moves.append(Move.cslide(path[i], path[i + 1]))
    return moves
