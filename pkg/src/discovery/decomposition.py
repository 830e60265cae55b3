"""Tree decompositions: min-fill heuristic, exact subset DP (small n), and
conversion to nice form (leaf / introduce / forget / join, empty leaf and
root bags)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_LIMITS, Limits
from .graph import Graph, GraphError, connected_components


class ExactLimitExceeded(ValueError):
    pass


class DecompositionError(ValueError):
    pass


@dataclass
class TreeDecomposition:
    """Rooted tree of bags. bags[i] is the vertex set of node i."""

    bags: list[frozenset[int]]
    children: list[list[int]]
    root: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def node_count(self) -> int:
        return len(self.bags)

    def postorder(self) -> list[int]:
        order: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
            else:
                stack.append((node, True))
                for c in self.children[node]:
                    stack.append((c, False))
        return order

    def validate(self, g: Graph) -> None:
        """Check the three decomposition invariants against g."""
        seen: set[int] = set()
        for b in self.bags:
            seen |= b
        if seen != set(range(g.n)) and not (g.n == 0 and not seen):
            raise DecompositionError("some vertex appears in no bag")
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags):
                raise DecompositionError(f"edge ({u},{v}) not covered by any bag")
        # Connectivity: nodes holding each vertex must induce a subtree.
        parent = [-1] * len(self.bags)
        for i in self.postorder():
            for c in self.children[i]:
                parent[c] = i
        for v in range(g.n):
            holders = [i for i, b in enumerate(self.bags) if v in b]
            if not holders:
                continue
            holder_set = set(holders)
            reached = {holders[0]}
            frontier = [holders[0]]
            while frontier:
                i = frontier.pop()
                for j in self.children[i] + ([parent[i]] if parent[i] >= 0 else []):
                    if j in holder_set and j not in reached:
                        reached.add(j)
                        frontier.append(j)
            if reached != holder_set:
                raise DecompositionError(f"bags containing {v} are not connected")


LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"


@dataclass
class NiceTreeDecomposition(TreeDecomposition):
    """Tree decomposition in nice form; kinds[i] in {leaf,introduce,forget,join}
    and vertex[i] names the introduced/forgotten vertex."""

    kinds: list[str] = field(default_factory=list)
    vertex: list[int | None] = field(default_factory=list)

    def validate_nice(self) -> None:
        if self.bags[self.root]:
            raise DecompositionError("root bag not empty")
        for i, kind in enumerate(self.kinds):
            kids = self.children[i]
            if kind == LEAF:
                if kids or self.bags[i]:
                    raise DecompositionError("leaf must have empty bag and no children")
            elif kind == INTRODUCE:
                (c,) = kids
                v = self.vertex[i]
                if self.bags[i] != self.bags[c] | {v} or v in self.bags[c]:
                    raise DecompositionError("introduce must add exactly one vertex")
            elif kind == FORGET:
                (c,) = kids
                v = self.vertex[i]
                if self.bags[i] != self.bags[c] - {v} or v not in self.bags[c]:
                    raise DecompositionError("forget must remove exactly one vertex")
            elif kind == JOIN:
                a, b = kids
                if not (self.bags[i] == self.bags[a] == self.bags[b]):
                    raise DecompositionError("join children must share the bag")
            else:
                raise DecompositionError(f"unknown node kind {kind}")


def _fill_needed(adj: dict[int, set[int]], v: int) -> int:
    nbrs = list(adj[v])
    count = 0
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            if nbrs[j] not in adj[nbrs[i]]:
                count += 1
    return count


def min_fill_order(g: Graph) -> list[int]:
    """Elimination order chosen greedily by minimum fill-in (ties: smallest id)."""
    adj = {u: set(g.neighbors(u)) for u in range(g.n)}
    order = []
    remaining = set(range(g.n))
    while remaining:
        best = min(remaining, key=lambda v: (_fill_needed(adj, v), v))
        order.append(best)
        nbrs = list(adj[best])
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                a, b = nbrs[i], nbrs[j]
                adj[a].add(b)
                adj[b].add(a)
        for w in nbrs:
            adj[w].discard(best)
        del adj[best]
        remaining.remove(best)
    return order


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Standard bag construction along an elimination order of the fill graph."""
    if g.n == 0:
        return TreeDecomposition(bags=[frozenset()], children=[[]], root=0)
    position = {v: i for i, v in enumerate(order)}
    adj = {u: set(g.neighbors(u)) for u in range(g.n)}
    bags: list[frozenset[int]] = [frozenset()] * g.n
    for v in order:
        later = {w for w in adj[v] if position[w] > position[v]}
        bags[position[v]] = frozenset(later | {v})
        for a in later:
            for b in later:
                if a < b:
                    adj[a].add(b)
                    adj[b].add(a)
        for w in later:
            adj[w].discard(v)
    children: list[list[int]] = [[] for _ in range(g.n)]
    root = g.n - 1
    for i, v in enumerate(order):
        rest = bags[i] - {v}
        if rest:
            parent = min(position[w] for w in rest)
            children[parent].append(i)
        elif i != root:
            children[root].append(i)
    return TreeDecomposition(bags=bags, children=children, root=root)


def exact_treewidth_order(g: Graph, limit: int) -> list[int]:
    """Optimal elimination order via DP over vertex subsets (Held-Karp style).

    Gated: n must not exceed `limit`.
    """
    n = g.n
    if n > limit:
        raise ExactLimitExceeded(f"exact mode gated at n <= {limit}, got n = {n}")
    if n == 0:
        return []
    nbr_mask = [0] * n
    for u in range(n):
        for v in g.neighbors(u):
            nbr_mask[u] |= 1 << v

    def q_size(eliminated: int, v: int) -> int:
        # Back-degree of v in the fill graph: vertices outside the eliminated
        # prefix reachable from v through eliminated vertices only.
        allowed = eliminated | (1 << v)
        internal = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                nxt |= nbr_mask[low.bit_length() - 1]
            frontier = nxt & allowed & ~internal
            internal |= frontier
        boundary = 0
        f = internal
        while f:
            low = f & -f
            f ^= low
            boundary |= nbr_mask[low.bit_length() - 1]
        return bin(boundary & ~allowed).count("1")

    full = (1 << n) - 1
    best = {0: -1}
    choice: dict[int, int] = {}
    for mask in range(1, full + 1):
        val = n  # upper bound: width never exceeds n-1
        pick = -1
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            prev = mask ^ low
            cand = max(best[prev], q_size(prev, v))
            if cand < val:
                val = cand
                pick = v
        best[mask] = val
        choice[mask] = pick
    order_rev = []
    mask = full
    while mask:
        v = choice[mask]
        order_rev.append(v)
        mask ^= 1 << v
    return order_rev[::-1]


def make_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    """Rewrite a decomposition into nice form without increasing the width."""
    bags: list[frozenset[int]] = []
    kinds: list[str] = []
    vertex: list[int | None] = []
    children: list[list[int]] = []

    def add(kind: str, bag: frozenset[int], v: int | None, kids: list[int]) -> int:
        bags.append(bag)
        kinds.append(kind)
        vertex.append(v)
        children.append(kids)
        return len(bags) - 1

    def chain(node: int, frm: frozenset[int], to: frozenset[int]) -> int:
        cur, bag = node, frm
        for v in sorted(frm - to):
            bag = bag - {v}
            cur = add(FORGET, bag, v, [cur])
        for v in sorted(to - frm):
            bag = bag | {v}
            cur = add(INTRODUCE, bag, v, [cur])
        return cur

    def leaf_chain(to: frozenset[int]) -> int:
        cur = add(LEAF, frozenset(), None, [])
        return chain(cur, frozenset(), to)

    built: dict[int, int] = {}
    stack: list[tuple[int, bool]] = [(td.root, False)]
    while stack:
        node, done = stack.pop()
        if not done:
            stack.append((node, True))
            for c in td.children[node]:
                stack.append((c, False))
            continue
        bag = td.bags[node]
        kids = td.children[node]
        if not kids:
            built[node] = leaf_chain(bag)
            continue
        tops = [chain(built[c], td.bags[c], bag) for c in kids]
        cur = tops[0]
        for other in tops[1:]:
            cur = add(JOIN, bag, None, [cur, other])
        built[node] = cur

    top = built[td.root]
    root = chain(top, td.bags[td.root], frozenset())
    if kinds[root] == LEAF and bags[root]:  # unreachable; defensive
        raise DecompositionError("root construction failed")
    nice = NiceTreeDecomposition(
        bags=bags, children=children, root=root, kinds=kinds, vertex=vertex
    )
    return nice


def tree_decomposition(
    g: Graph, mode: str = "heuristic", limits: Limits = DEFAULT_LIMITS
) -> NiceTreeDecomposition:
    """Nice tree decomposition of g.

    mode "heuristic" uses min-fill; "exact" achieves minimum width and is
    gated at limits.exact_treewidth_limit vertices.
    """
    if mode == "heuristic":
        order = min_fill_order(g)
    elif mode == "exact":
        order = exact_treewidth_order(g, limits.exact_treewidth_limit)
    else:
        raise GraphError(f"unknown decomposition mode {mode!r}")
    td = decomposition_from_order(g, order)
    nice = make_nice(td)
    nice.validate(g)
    nice.validate_nice()
    return nice


def disconnected_safe_width(g: Graph) -> int:
    """Width of the heuristic decomposition; convenience for tests."""
    return tree_decomposition(g).width


def treewidth_exact(g: Graph, limits: Limits = DEFAULT_LIMITS) -> int:
    order = exact_treewidth_order(g, limits.exact_treewidth_limit)
    return decomposition_from_order(g, order).width


__all__ = [
    "TreeDecomposition",
    "NiceTreeDecomposition",
    "ExactLimitExceeded",
    "DecompositionError",
    "LEAF",
    "INTRODUCE",
    "FORGET",
    "JOIN",
    "min_fill_order",
    "decomposition_from_order",
    "exact_treewidth_order",
    "make_nice",
    "tree_decomposition",
    "treewidth_exact",
]
