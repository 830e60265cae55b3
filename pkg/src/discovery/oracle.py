"""Ground-truth solver: breadth-first search over the configuration space.

Exact minimum budgets and replayable certificates for every problem and
every move model, guarded against configuration-space explosion. This is
the testing oracle for all specialized solvers; exactness over speed.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .config import DEFAULT_LIMITS, Limits
from .graph import Graph, connected_components
from .instances import (
    ADD_REMOVE,
    CSLIDE,
    FLIP,
    JUMP,
    SLIDE,
    SWAP,
    ColoringInstance,
    Move,
    SubsetInstance,
    final_is_feasible,
    is_proper,
)


class StateSpaceTooLarge(RuntimeError):
    def __init__(self, estimate: int, limit: int):
        super().__init__(f"estimated configuration space {estimate} exceeds guard {limit}")
        self.estimate = estimate
        self.limit = limit


class SolverInapplicable(ValueError):
    """Raised when a solver is asked about a problem/model it does not handle."""


class UnreachableTarget(ValueError):
    pass


@dataclass
class SearchBudgetedResult:
    answer: bool
    min_moves: int | None = None
    certificate: list[Move] | None = None
    explored: int = 0
    solver: str = "oracle"
    note: str | None = None


def estimate_state_space(instance) -> int:
    """Upper bound on the reachable configuration count for the instance."""
    g = instance.graph
    if isinstance(instance, SubsetInstance):
        if instance.model == ADD_REMOVE:
            return 2**g.n
        return math.comb(g.n, instance.k)
    counts: dict[int, int] = {}
    for c in instance.coloring:
        counts[c] = counts.get(c, 0) + 1
    if instance.model == FLIP:
        return instance.k**g.n
    multiset = math.factorial(g.n)
    for c in counts.values():
        multiset //= math.factorial(c)
    return multiset


def _guard(instance, limits: Limits) -> int:
    est = estimate_state_space(instance)
    if est > limits.oracle_guard:
        raise StateSpaceTooLarge(est, limits.oracle_guard)
    return est


def _subset_successors(g: Graph, state: frozenset[int], model: str):
    if model == SLIDE:
        for u in state:
            for v in g.neighbors(u):
                if v not in state:
                    yield Move.slide(u, v), state - {u} | {v}
    elif model == JUMP:
        for u in state:
            for v in range(g.n):
                if v not in state:
                    yield Move.jump(u, v), state - {u} | {v}
    elif model == ADD_REMOVE:
        for v in range(g.n):
            if v in state:
                yield Move.remove(v), state - {v}
            else:
                yield Move.add(v), state | {v}


def _coloring_successors(g: Graph, colors: tuple, model: str, k: int):
    if model == FLIP:
        for v in range(g.n):
            for c in range(1, k + 1):
                if c != colors[v]:
                    out = list(colors)
                    out[v] = c
                    yield Move.flip(v, c), tuple(out)
    elif model == SWAP:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if colors[u] != colors[v]:
                    out = list(colors)
                    out[u], out[v] = out[v], out[u]
                    yield Move.swap(u, v), tuple(out)
    elif model == CSLIDE:
        for u, v in g.edges:
            if colors[u] != colors[v]:
                out = list(colors)
                out[u], out[v] = out[v], out[u]
                yield Move.cslide(u, v), tuple(out)


def _encode_subset(state: frozenset[int]) -> tuple:
    return tuple(sorted(state))


def _encode_coloring(colors: tuple, k: int) -> int:
    code = 0
    for c in colors:
        code = code * k + (c - 1)
    return code


def _reconstruct(parents: dict, key) -> list[Move]:
    moves: list[Move] = []
    while True:
        entry = parents[key]
        if entry is None:
            break
        key, move = entry
        moves.append(move)
    moves.reverse()
    return moves


def oracle_solve(instance, limits: Limits = DEFAULT_LIMITS) -> SearchBudgetedResult:
    """Exact layered BFS: yes iff a feasible state lies within the budget.

    min_moves is the true optimum; the certificate replays from the start
    state to a feasible state in exactly min_moves moves.
    """
    _guard(instance, limits)
    g = instance.graph
    budget = instance.budget
    subset = isinstance(instance, SubsetInstance)
    if subset:
        start = instance.start
        key = _encode_subset(start)
        successors = lambda s: _subset_successors(g, s, instance.model)
        encode = _encode_subset
    else:
        start = instance.coloring
        key = _encode_coloring(start, instance.k)
        successors = lambda s: _coloring_successors(g, s, instance.model, instance.k)
        encode = lambda s: _encode_coloring(s, instance.k)

    parents: dict = {key: None}
    explored = 0
    if final_is_feasible(instance, start):
        return SearchBudgetedResult(answer=True, min_moves=0, certificate=[], explored=1)
    frontier = deque([(start, key, 0)])
    while frontier:
        state, skey, depth = frontier.popleft()
        explored += 1
        if depth >= budget:
            continue
        for move, nxt in successors(state):
            nkey = encode(nxt)
            if nkey in parents:
                continue
            parents[nkey] = (skey, move)
            if final_is_feasible(instance, nxt):
                cert = _reconstruct(parents, nkey)
                return SearchBudgetedResult(
                    answer=True, min_moves=depth + 1, certificate=cert, explored=explored
                )
            frontier.append((nxt, nkey, depth + 1))
    return SearchBudgetedResult(answer=False, explored=explored)


def oracle_reach_target(
    instance: SubsetInstance, target: frozenset[int], limits: Limits = DEFAULT_LIMITS
) -> int:
    """Exact minimum number of slides transforming start into exactly target.

    Raises UnreachableTarget when per-component token counts differ (the
    only obstruction for unlabeled tokens under sliding).
    """
    target = frozenset(target)
    if len(target) != len(instance.start):
        raise UnreachableTarget("source and target token counts differ")
    if instance.model != SLIDE:
        raise UnreachableTarget("target reachability is defined for the sliding model")
    g = instance.graph
    for members in connected_components(g):
        comp = set(members)
        if len(comp & instance.start) != len(comp & target):
            raise UnreachableTarget(
                f"component {members[0]}... holds different token counts in source and target"
            )
    _guard(instance, limits)
    start_key = _encode_subset(instance.start)
    goal_key = _encode_subset(target)
    if start_key == goal_key:
        return 0
    seen = {start_key}
    frontier = deque([(instance.start, 0)])
    while frontier:
        state, depth = frontier.popleft()
        for _move, nxt in _subset_successors(g, state, SLIDE):
            nkey = _encode_subset(nxt)
            if nkey in seen:
                continue
            if nkey == goal_key:
                return depth + 1
            seen.add(nkey)
            frontier.append((nxt, depth + 1))
    raise UnreachableTarget("target not reachable")  # not expected after the count check
