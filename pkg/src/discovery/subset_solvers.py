"""Target-enumeration solvers for the subset discovery problems under
sliding: vertex cover via minimal-cover branching, independent set via
independence covering families, dominating set via domination cores with
projection classes. Each reduces reachability to a matching through the
shared engine.

Candidates smaller than k are padded to exactly k tokens: tokens kept off
the candidate rest on their own vertices at zero cost, which an exchange
argument shows loses nothing for the monotone problems (any superset of a
vertex cover / dominating set stays feasible).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_LIMITS, Limits
from .graph import UNREACHABLE, Graph, bfs_distances, degeneracy_order
from .instances import DS, IS, SLIDE, VC, SubsetInstance
from .matching import (
    distance_matrix,
    extract_slide_schedule,
    infeasible_entry,
    matching_weight,
    min_weight_perfect_matching,
)
from .oracle import SearchBudgetedResult, SolverInapplicable


class ExhaustiveLimitExceeded(ValueError):
    pass


class PartitionInvalid(ValueError):
    pass


@dataclass
class CandidateFamily:
    members: list[frozenset[int]]
    kind: str
    provenance: str
    trials: int | None = None
    failure_prob: float | None = None


@dataclass
class ProjectionClasses:
    """Partition of the non-core vertices by neighborhood trace on the core."""

    core: frozenset[int]
    classes: list[frozenset[int]]
    traces: list[frozenset[int]]


def _sorted_members(members) -> list[frozenset[int]]:
    return sorted(members, key=lambda s: (len(s), tuple(sorted(s))))


def enumerate_minimal_vertex_covers(g: Graph, k: int) -> CandidateFamily:
    """All minimal vertex covers of size at most k.

    Search tree branching on an uncovered edge (two ways to cover it);
    at most 2^k leaves, followed by a minimality filter.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    edges = g.sorted_edges()
    found: set[frozenset[int]] = set()

    def first_uncovered(cover: set[int]):
        for u, v in edges:
            if u not in cover and v not in cover:
                return u, v
        return None

    def branch(cover: set[int]):
        missing = first_uncovered(cover)
        if missing is None:
            found.add(frozenset(cover))
            return
        if len(cover) >= k:
            return
        u, v = missing
        cover.add(u)
        branch(cover)
        cover.remove(u)
        cover.add(v)
        branch(cover)
        cover.remove(v)

    branch(set())

    def is_cover(s) -> bool:
        return all(u in s or v in s for u, v in edges)

    minimal = [c for c in found if all(not is_cover(c - {v}) for v in c)]
    return CandidateFamily(_sorted_members(minimal), "minimal_vertex_covers", "branching")


def _maximal_independent_sets(g: Graph) -> list[frozenset[int]]:
    """Bron-Kerbosch with pivoting on the complement graph."""
    n = g.n
    if n == 0:
        return [frozenset()]
    non_nbr = []
    for v in range(n):
        mask = ((1 << n) - 1) & ~(1 << v)
        for w in g.neighbors(v):
            mask &= ~(1 << w)
        non_nbr.append(mask)
    out: list[frozenset[int]] = []

    def expand(r: int, p: int, x: int):
        if p == 0 and x == 0:
            out.append(frozenset(i for i in range(n) if r >> i & 1))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = pivot
        best_deg = -1
        pool = pivot_pool
        while pool:
            low = pool & -pool
            u = low.bit_length() - 1
            pool ^= low
            deg = bin(p & non_nbr[u]).count("1")
            if deg > best_deg:
                best_deg = deg
                best = u
        cand = p & ~non_nbr[best]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(r | low, p & non_nbr[v], x & non_nbr[v])
            p &= ~low
            x |= low

    expand(0, (1 << n) - 1, 0)
    return out


@dataclass(frozen=True)
class DegenerateSampler:
    """Monte Carlo covering-family provider for d-degenerate graphs.

    One trial keeps every marked vertex with no marked forward neighbor in
    the degeneracy order; the kept set is always independent and covers any
    fixed independent set of size <= k with probability at least
    p^k (1-p)^(kd) at p = 1/(d+1). The trial count is derived from the
    requested failure probability unless given explicitly.
    """

    trials: int | None = None
    failure_prob: float = 0.1
    seed: int = 0

    def trial_count(self, g: Graph, k: int) -> int:
        if self.trials is not None:
            return self.trials
        d, _ = degeneracy_order(g)
        p = 1.0 / (d + 1)
        q = p**k * (1 - p) ** (k * d) if d > 0 else 1.0
        if q >= 1.0:
            return 1
        sets_bound = (g.n + 1) ** k
        return max(1, math.ceil(math.log(sets_bound / self.failure_prob) / q))

    def build(self, g: Graph, k: int) -> CandidateFamily:
        import random

        rng = random.Random(self.seed)
        d, order = degeneracy_order(g)
        pos = {v: i for i, v in enumerate(order)}
        forward = [
            [w for w in g.neighbors(v) if pos[w] > pos[v]] for v in range(g.n)
        ]
        p = 1.0 / (d + 1)
        t = self.trial_count(g, k)
        members: set[frozenset[int]] = set()
        for _ in range(t):
            marked = [rng.random() < p for _ in range(g.n)]
            kept = frozenset(
                v for v in range(g.n) if marked[v] and not any(marked[w] for w in forward[v])
            )
            members.add(kept)
        return CandidateFamily(
            _sorted_members(members),
            "covering_family",
            "monte_carlo",
            trials=t,
            failure_prob=self.failure_prob,
        )


def build_covering_family(
    g: Graph, k: int, provider="exhaustive", limits: Limits = DEFAULT_LIMITS
) -> CandidateFamily:
    """Independence covering family for (g, k).

    The exhaustive provider returns all maximal independent sets (provably
    covering, gated by size); a DegenerateSampler instance gives the Monte
    Carlo construction.
    """
    if provider == "exhaustive":
        if g.n > limits.exhaustive_family_limit:
            raise ExhaustiveLimitExceeded(
                f"exhaustive families gated at n <= {limits.exhaustive_family_limit}"
            )
        return CandidateFamily(
            _sorted_members(_maximal_independent_sets(g)), "covering_family", "exhaustive"
        )
    if isinstance(provider, DegenerateSampler):
        return provider.build(g, k)
    raise ValueError(f"unknown covering family provider {provider!r}")


def projection_classes(g: Graph, core) -> ProjectionClasses:
    core = frozenset(core)
    for v in core:
        if not 0 <= v < g.n:
            raise ValueError(f"core vertex {v} out of range")
    groups: dict[frozenset[int], list[int]] = {}
    for u in range(g.n):
        if u in core:
            continue
        trace = frozenset(w for w in g.neighbors(u) if w in core)
        groups.setdefault(trace, []).append(u)
    items = sorted(groups.items(), key=lambda kv: min(kv[1]))
    return ProjectionClasses(
        core=core,
        classes=[frozenset(members) for _, members in items],
        traces=[trace for trace, _ in items],
    )


# --- padded candidate matching -------------------------------------------------


def _padded_weight(g: Graph, tokens: list[int], candidate: frozenset[int], cap: int) -> int:
    """Min slides to reach a config containing `candidate`, surplus tokens
    resting on their own vertices. Sentinel-weighted when disconnected."""
    movers = [u for u in tokens if u not in candidate]
    holes = sorted(candidate - set(tokens))
    if not holes:
        return 0
    matrix = distance_matrix(g, movers, holes, cap)
    slots = len(movers) - len(holes)
    for row in matrix:
        row.extend([0] * slots)
    return matching_weight(matrix)


def _padded_assignment(
    g: Graph, tokens: list[int], candidate: frozenset[int], cap: int
) -> tuple[int, dict[int, int]]:
    """Weight plus an explicit token->target map realizing it."""
    assignment = {u: u for u in tokens}
    movers = [u for u in tokens if u not in candidate]
    holes = sorted(candidate - set(tokens))
    if not holes:
        return 0, assignment
    matrix = distance_matrix(g, movers, holes, cap)
    slots = len(movers) - len(holes)
    for row in matrix:
        row.extend([0] * slots)
    res = min_weight_perfect_matching(matrix)
    for i, u in enumerate(movers):
        col = res.assignment[i]
        if col < len(holes):
            assignment[u] = holes[col]
    return res.weight, assignment


def _solve_by_candidates(instance: SubsetInstance, candidates, solver: str) -> SearchBudgetedResult:
    g = instance.graph
    tokens = sorted(instance.start)
    k, b = instance.k, instance.budget
    best_weight = None
    best_candidate = None
    explored = 0
    for cand in candidates:
        if len(cand) > k:
            continue
        explored += 1
        w = _padded_weight(g, tokens, cand, b)
        if best_weight is None or w < best_weight:
            best_weight = w
            best_candidate = cand
    if best_weight is None or best_weight > b:
        return SearchBudgetedResult(answer=False, explored=explored, solver=solver)
    weight, assignment = _padded_assignment(g, tokens, best_candidate, b)
    cert = extract_slide_schedule(
        g, tokens, sorted(assignment.values()), assignment
    )
    return SearchBudgetedResult(
        answer=True, min_moves=weight, certificate=cert, explored=explored, solver=solver
    )


def solve_vcd_fpt(instance: SubsetInstance) -> SearchBudgetedResult:
    """Vertex cover discovery: enumerate minimal covers of size <= k, pad to
    k tokens, and match tokens to targets; yes iff some cover is reachable
    within the budget."""
    if instance.problem != VC or instance.model != SLIDE:
        raise SolverInapplicable("vcd-fpt handles vertex cover discovery under sliding")
    family = enumerate_minimal_vertex_covers(instance.graph, instance.k)
    return _solve_by_candidates(instance, family.members, "vcd-fpt")


def solve_isd_covering(
    instance: SubsetInstance, provider="exhaustive", limits: Limits = DEFAULT_LIMITS
) -> SearchBudgetedResult:
    """Independent set discovery via an independence covering family.

    For each family member J with |J| >= k, match the k tokens into J; the
    dummy-padded matching silently drops the |J| - k unused slots.
    """
    if instance.problem != IS or instance.model != SLIDE:
        raise SolverInapplicable("isd-cover handles independent set discovery under sliding")
    g = instance.graph
    tokens = sorted(instance.start)
    k, b = instance.k, instance.budget
    family = build_covering_family(g, k, provider, limits)
    best = None
    best_data = None
    explored = 0
    for J in family.members:
        if len(J) < k:
            continue
        explored += 1
        cols = sorted(J)
        matrix = distance_matrix(g, tokens, cols, b)
        for _ in range(len(cols) - k):
            matrix.append([0] * len(cols))
        w = matching_weight(matrix)
        if best is None or w < best:
            best = w
            best_data = (cols, matrix)
    if best is None or best > b:
        return SearchBudgetedResult(answer=False, explored=explored, solver="isd-cover")
    cols, matrix = best_data
    res = min_weight_perfect_matching(matrix)
    assignment = {u: cols[res.assignment[i]] for i, u in enumerate(tokens)}
    cert = extract_slide_schedule(g, tokens, sorted(assignment.values()), assignment)
    return SearchBudgetedResult(
        answer=True, min_moves=best, certificate=cert, explored=explored, solver="isd-cover"
    )


# --- dominating set via cores ---------------------------------------------------


def _enumerate_dominating_candidates(
    g: Graph, k: int, pc: ProjectionClasses
) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Minimal size-<=k sets dominating the core, one projection class used
    at most once. Items are (concrete vertices, classes by index); returns
    (vertices, class-index set) pairs."""
    core = sorted(pc.core)
    cover_of_vertex: dict[int, frozenset[int]] = {}
    for v in range(g.n):
        covered = {w for w in g.neighbors(v) if w in pc.core}
        if v in pc.core:
            covered.add(v)
        cover_of_vertex[v] = frozenset(covered)
    class_cover = list(pc.traces)

    results: set[tuple[frozenset[int], frozenset[int]]] = set()

    def dominated(vselected: set[int], cselected: set[int]) -> set[int]:
        out: set[int] = set()
        for v in vselected:
            out |= cover_of_vertex[v]
        for ci in cselected:
            out |= class_cover[ci]
        return out

    def branch(vsel: set[int], csel: set[int]):
        dom = dominated(vsel, csel)
        missing = [c for c in core if c not in dom]
        if not missing:
            results.add((frozenset(vsel), frozenset(csel)))
            return
        if len(vsel) + len(csel) >= k:
            return
        u = missing[0]
        options_v = sorted(v for v in range(g.n) if u in cover_of_vertex[v])
        options_c = [ci for ci in range(len(class_cover)) if u in class_cover[ci]]
        for v in options_v:
            if v in vsel:
                continue
            vsel.add(v)
            branch(vsel, csel)
            vsel.remove(v)
        for ci in options_c:
            if ci in csel:
                continue
            csel.add(ci)
            branch(vsel, csel)
            csel.remove(ci)

    branch(set(), set())

    def dominates_core(pair) -> bool:
        vsel, csel = pair
        return all(c in dominated(set(vsel), set(csel)) for c in core)

    minimal = []
    for vsel, csel in results:
        items = [("v", x) for x in vsel] + [("c", x) for x in csel]
        keep = True
        for kind, x in items:
            reduced = (
                (vsel - {x}, csel) if kind == "v" else (vsel, csel - {x})
            )
            if dominates_core(reduced):
                keep = False
                break
        if keep:
            minimal.append((vsel, csel))
    minimal.sort(key=lambda p: (len(p[0]) + len(p[1]), tuple(sorted(p[0])), tuple(sorted(p[1]))))
    return minimal


def solve_dsd_core(instance: SubsetInstance, core=None) -> SearchBudgetedResult:
    """Dominating set discovery through a domination core.

    The default core is the trivial one, C = V(G), for which the answer and
    minimal budget are exact. With a supplied smaller core the projection
    classes are treated as single candidate slots whose weight is the
    distance to the nearest class member; class targets are then
    materialized greedily, so reported budgets are upper bounds unless the
    core is trivial.
    """
    if instance.problem != DS or instance.model != SLIDE:
        raise SolverInapplicable("dsd-core handles dominating set discovery under sliding")
    g = instance.graph
    tokens = sorted(instance.start)
    k, b = instance.k, instance.budget
    pc = projection_classes(g, core if core is not None else range(g.n))
    candidates = _enumerate_dominating_candidates(g, k, pc)
    sentinel = infeasible_entry(g.m, b)
    dist_rows = {u: bfs_distances(g, u) for u in tokens}
    best_cost = None
    best_map = None
    explored = 0
    for vsel, csel in candidates:
        explored += 1
        concrete = set(vsel)
        # Satisfy classes first: a token already inside a chosen class fills
        # it in place at zero cost; remaining classes get their nearest
        # member that is still free.
        taken = set(concrete)
        ok = True
        for ci in sorted(csel):
            inside = [u for u in tokens if u in pc.classes[ci] and u not in taken]
            if inside:
                taken.add(inside[0])
                concrete.add(inside[0])
                continue
            free = [w for w in sorted(pc.classes[ci]) if w not in taken]
            if not free:
                ok = False
                break
            # nearest free member to any token, id as tie-break
            member = min(
                free,
                key=lambda w: (min(int(dist_rows[u][w]) if dist_rows[u][w] != UNREACHABLE else sentinel for u in tokens), w),
            )
            taken.add(member)
            concrete.add(member)
        if not ok:
            continue
        if len(concrete) > k:
            continue
        w = _padded_weight(g, tokens, frozenset(concrete), b)
        if best_cost is None or w < best_cost:
            best_cost = w
            best_map = frozenset(concrete)
    if best_cost is None or best_cost > b:
        return SearchBudgetedResult(answer=False, explored=explored, solver="dsd-core")
    weight, assignment = _padded_assignment(g, tokens, best_map, b)
    cert = extract_slide_schedule(g, tokens, sorted(assignment.values()), assignment)
    return SearchBudgetedResult(
        answer=True, min_moves=weight, certificate=cert, explored=explored, solver="dsd-core"
    )
