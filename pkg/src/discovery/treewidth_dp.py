"""Dynamic program over nice tree decompositions for vertex cover and
independent set discovery under sliding.

States are tuples (q, l, A, B): q the solution size inside the processed
subgraph, l the exact number of slides spent there, A the bag's solution
indicator, and B the per-bag-vertex signed token throughflow (positive:
tokens arriving from outside; negative: tokens owed to the outside). A
state is locally invalid when a bag vertex with its whole closed
neighborhood inside the subgraph still reports nonzero throughflow; such
states are never stored.

Tables are built bottom-up by forward generation from child tables, so
only reachable states materialize. Both flow rules come from exact token
conservation at each bag vertex u: a child scenario ending with A(u)
tokens at u, starting with [u in S], and receiving a(u) net arrivals over
its own edges must declare B(u) = A(u) - [u in S] - a(u) as outside
supply. At an introduce node this yields sum(f) = [v in S] + B(v) - A(v)
for the new vertex; at a join node, adding the two child ledgers against
the parent's gives B(u) = B_j(u) + B_h(u) - A(u) + [u in S], with no
explicit transfer function needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import DEFAULT_LIMITS, Limits
from .decomposition import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition, tree_decomposition
from .graph import Graph
from .instances import IS, SLIDE, VC, SubsetInstance
from .oracle import SearchBudgetedResult, SolverInapplicable

State = tuple[int, int, tuple[int, ...], tuple[int, ...]]


@dataclass
class DPRun:
    tables: list[set[State]]
    nice: NiceTreeDecomposition
    answer: bool
    min_budget: int | None
    explored: int


def _closed_flags(g: Graph, bag: tuple[int, ...], vmask: int) -> tuple[bool, ...]:
    # Throughflow at u must be zero once every neighbor is strictly interior:
    # flow rides on edges still visible above (a neighbor outside V(G_i)) or
    # shared with a sibling subtree (a neighbor inside the bag itself).
    bagmask = 0
    for u in bag:
        bagmask |= 1 << u
    interior = vmask & ~bagmask
    flags = []
    for u in bag:
        nbrs = 0
        for w in g.neighbors(u):
            nbrs |= 1 << w
        flags.append(nbrs & ~interior == 0)
    return tuple(flags)


def _valid(b: tuple[int, ...], closed: tuple[bool, ...]) -> bool:
    return all(not c or x == 0 for c, x in zip(closed, b))


def run_dp(
    g: Graph,
    start: frozenset[int],
    budget: int,
    nice: NiceTreeDecomposition,
    problem: str,
) -> DPRun:
    if problem not in (VC, IS):
        raise SolverInapplicable("treewidth DP covers vertex cover and independent set discovery")
    k = len(start)
    bags = [tuple(sorted(b)) for b in nice.bags]
    order = nice.postorder()

    vmask = [0] * len(bags)
    for i in order:
        mask = 0
        for v in bags[i]:
            mask |= 1 << v
        for c in nice.children[i]:
            mask |= vmask[c]
        vmask[i] = mask
    closed = [_closed_flags(g, bags[i], vmask[i]) for i in range(len(bags))]

    tables: list[set[State]] = [set() for _ in range(len(bags))]
    explored = 0

    for i in order:
        kind = nice.kinds[i]
        bag = bags[i]
        if kind == LEAF:
            tables[i] = {(0, 0, (), ())}
        elif kind == INTRODUCE:
            (ci,) = nice.children[i]
            v = nice.vertex[i]
            child_bag = bags[ci]
            pos_v = bag.index(v)
            nv_child_idx = [
                j for j, u in enumerate(child_bag) if g.has_edge(u, v)
            ]
            s_v = 1 if v in start else 0
            out: set[State] = set()
            f_ranges = len(nv_child_idx)
            for (q_j, l_j, a_j, b_j) in tables[ci]:
                for a_v in (0, 1):
                    q = q_j + a_v
                    if q > k:
                        continue
                    if problem == VC and a_v == 0:
                        if any(a_j[j] == 0 for j in nv_child_idx):
                            continue  # an edge at v would stay uncovered
                    if problem == IS and a_v == 1:
                        if any(a_j[j] == 1 for j in nv_child_idx):
                            continue  # adjacent solution vertices
                    a_par = a_j[:pos_v] + (a_v,) + a_j[pos_v:]
                    choices = []
                    feasible = True
                    for j in nv_child_idx:
                        lo = max(-k, b_j[j] - k)
                        hi = min(k, b_j[j] + k)
                        if lo > hi:
                            feasible = False
                            break
                        choices.append(range(lo, hi + 1))
                    if not feasible:
                        continue
                    for f in itertools.product(*choices):
                        den = sum(abs(x) for x in f)
                        l = l_j + den
                        if l > budget:
                            continue
                        b_v = sum(f) - s_v + a_v
                        if not -k <= b_v <= k:
                            continue
                        b_list = list(b_j)
                        for idx, j in enumerate(nv_child_idx):
                            b_list[j] -= f[idx]
                        b_par = tuple(b_list[:pos_v]) + (b_v,) + tuple(b_list[pos_v:])
                        if _valid(b_par, closed[i]):
                            out.add((q, l, a_par, b_par))
            tables[i] = out
        elif kind == FORGET:
            (ci,) = nice.children[i]
            v = nice.vertex[i]
            pos_v = bags[ci].index(v)
            out = set()
            for (q_j, l_j, a_j, b_j) in tables[ci]:
                if b_j[pos_v] != 0:
                    continue  # locally invalid at the child; defensive
                a_par = a_j[:pos_v] + a_j[pos_v + 1 :]
                b_par = b_j[:pos_v] + b_j[pos_v + 1 :]
                if _valid(b_par, closed[i]):
                    out.add((q_j, l_j, a_par, b_par))
            tables[i] = out
        elif kind == JOIN:
            cj, ch = nice.children[i]
            s_flags = tuple(1 if u in start else 0 for u in bag)
            a_count_cache: dict[tuple[int, ...], int] = {}
            by_a: dict[tuple[int, ...], list[State]] = {}
            for st in tables[ch]:
                by_a.setdefault(st[2], []).append(st)
            out = set()
            for (q_j, l_j, a_j, b_j) in tables[cj]:
                partners = by_a.get(a_j)
                if not partners:
                    continue
                if a_j not in a_count_cache:
                    a_count_cache[a_j] = sum(a_j)
                a_ones = a_count_cache[a_j]
                for (q_h, l_h, _a_h, b_h) in partners:
                    l = l_j + l_h
                    if l > budget:
                        continue
                    q = q_j + q_h - a_ones
                    if q > k or q < 0:
                        continue
                    combined = []
                    ok = True
                    for x, y, a_u, s_u in zip(b_j, b_h, a_j, s_flags):
                        z = x + y - a_u + s_u
                        if not -k <= z <= k:
                            ok = False
                            break
                        combined.append(z)
                    if not ok:
                        continue
                    b_par = tuple(combined)
                    if _valid(b_par, closed[i]):
                        out.add((q, l, a_j, b_par))
            tables[i] = out
        else:
            raise SolverInapplicable(f"unknown node kind {kind}")
        explored += len(tables[i])

    root_states = tables[nice.root]
    feasible_l = sorted(l for (q, l, _a, _b) in root_states if q == k and l <= budget)
    answer = bool(feasible_l)
    return DPRun(
        tables=tables,
        nice=nice,
        answer=answer,
        min_budget=feasible_l[0] if feasible_l else None,
        explored=explored,
    )


def solve_discovery_tw(
    instance: SubsetInstance,
    decomposition: NiceTreeDecomposition | None = None,
    mode: str = "heuristic",
    limits: Limits = DEFAULT_LIMITS,
) -> SearchBudgetedResult:
    """Decision plus minimal budget via the treewidth DP; no certificate.

    Accepts an externally supplied nice decomposition for reproducibility;
    otherwise one is computed with the requested mode.
    """
    if instance.problem not in (VC, IS) or instance.model != SLIDE:
        raise SolverInapplicable("tw-dp handles VC/IS discovery under sliding")
    g = instance.graph
    nice = decomposition
    if nice is None:
        nice = tree_decomposition(g, mode, limits)
    else:
        nice.validate(g)
        nice.validate_nice()
    run = run_dp(g, instance.start, instance.budget, nice, instance.problem)
    return SearchBudgetedResult(
        answer=run.answer,
        min_moves=run.min_budget if run.answer else None,
        certificate=None,
        explored=run.explored,
        solver="tw-dp",
        note="decision only; no certificate from the DP",
    )
