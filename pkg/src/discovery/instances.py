"""Problem/instance/move vocabulary shared by every solver.

Subset problems place k distinguishable-by-position tokens on vertices and
ask for a feasible token set of exactly k vertices within the move budget;
coloring problems transform a (possibly improper) k-coloring into a proper
one. Budgets are normalized: no subset instance ever needs more than n^2
slides and no coloring instance more than 2n^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph

VC, IS, DS = "vc", "is", "ds"
SUBSET_PROBLEMS = (VC, IS, DS)

SLIDE, JUMP, ADD_REMOVE = "slide", "jump", "add_remove"
SUBSET_MODELS = (SLIDE, JUMP, ADD_REMOVE)

FLIP, SWAP, CSLIDE = "flip", "swap", "slide"
COLORING_MODELS = (FLIP, SWAP, CSLIDE)

RED, GREEN = 1, 2  # canonical names for the two-color solvers


class IllegalMove(ValueError):
    """A move whose precondition fails; the message names the violation."""


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str
    u: int | None = None
    v: int | None = None
    color: int | None = None

    @classmethod
    def slide(cls, u: int, v: int) -> "Move":
        return cls("slide", u, v)

    @classmethod
    def jump(cls, u: int, v: int) -> "Move":
        return cls("jump", u, v)

    @classmethod
    def add(cls, v: int) -> "Move":
        return cls("add", v=v)

    @classmethod
    def remove(cls, v: int) -> "Move":
        return cls("remove", v=v)

    @classmethod
    def flip(cls, v: int, color: int) -> "Move":
        return cls("flip", v=v, color=color)

    @classmethod
    def swap(cls, u: int, v: int) -> "Move":
        return cls("swap", u, v)

    @classmethod
    def cslide(cls, u: int, v: int) -> "Move":
        return cls("cslide", u, v)

    def inverse(self, prior_state) -> "Move":
        """Move undoing self when applied right after it.

        flip needs the pre-move state to recover the old color.
        """
        if self.kind == "slide":
            return Move.slide(self.v, self.u)
        if self.kind == "jump":
            return Move.jump(self.v, self.u)
        if self.kind == "add":
            return Move.remove(self.v)
        if self.kind == "remove":
            return Move.add(self.v)
        if self.kind == "flip":
            return Move.flip(self.v, prior_state[self.v])
        if self.kind == "swap":
            return Move.swap(self.u, self.v)
        if self.kind == "cslide":
            return Move.cslide(self.v, self.u)
        raise IllegalMove(f"unknown move kind {self.kind!r}")

    def __str__(self):
        if self.kind in ("slide", "jump", "swap", "cslide"):
            return f"{self.kind} {self.u} {self.v}"
        if self.kind == "flip":
            return f"flip {self.v} {self.color}"
        return f"{self.kind} {self.v}"


MoveSequence = list


@dataclass(frozen=True)
class SubsetInstance:
    graph: Graph
    start: frozenset[int]
    budget: int
    problem: str
    model: str = SLIDE

    def __post_init__(self):
        g = self.graph
        if self.problem not in SUBSET_PROBLEMS:
            raise InstanceError(f"unknown subset problem {self.problem!r}")
        if self.model not in SUBSET_MODELS:
            raise InstanceError(f"unknown move model {self.model!r}")
        if not isinstance(self.start, frozenset):
            object.__setattr__(self, "start", frozenset(self.start))
        for v in self.start:
            if not 0 <= v < g.n:
                raise InstanceError(f"token vertex {v} out of range")
        if self.budget < 0:
            raise InstanceError("budget must be non-negative")
        object.__setattr__(self, "budget", min(self.budget, g.n * g.n))

    @property
    def k(self) -> int:
        return len(self.start)


@dataclass(frozen=True)
class ColoringInstance:
    graph: Graph
    coloring: tuple[int, ...]
    k: int
    budget: int
    model: str = CSLIDE

    def __post_init__(self):
        if self.model not in COLORING_MODELS:
            raise InstanceError(f"unknown coloring model {self.model!r}")
        if self.k < 1:
            raise InstanceError("color count must be at least 1")
        if not isinstance(self.coloring, tuple):
            object.__setattr__(self, "coloring", tuple(self.coloring))
        if len(self.coloring) != self.graph.n:
            raise InstanceError("coloring must assign every vertex a color")
        for v, c in enumerate(self.coloring):
            if not 1 <= c <= self.k:
                raise InstanceError(f"color {c} at vertex {v} outside [1,{self.k}]")
        if self.budget < 0:
            raise InstanceError("budget must be non-negative")
        n = self.graph.n
        object.__setattr__(self, "budget", min(self.budget, 2 * n * n))


def is_feasible(problem: str, g: Graph, config: frozenset[int]) -> bool:
    """Vertex cover / independent set / dominating set test for `config`."""
    if problem == VC:
        return all(u in config or v in config for u, v in g.edges)
    if problem == IS:
        return all(u not in config or v not in config for u, v in g.edges)
    if problem == DS:
        dominated = set(config)
        for v in config:
            dominated.update(g.neighbors(v))
        return len(dominated) == g.n
    raise InstanceError(f"unknown subset problem {problem!r}")


def is_proper(g: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges)


def apply_move(g: Graph, state, move: Move, model: str, k: int | None = None):
    """Apply one move under the given model; raises IllegalMove on violation.

    Subset states are frozensets of occupied vertices; coloring states are
    color tuples. Returns the successor state.
    """
    if isinstance(state, frozenset):
        return _apply_subset(g, state, move, model)
    return _apply_coloring(g, state, move, model, k)


def _check_vertex(g: Graph, v: int | None, what: str) -> None:
    if v is None or not 0 <= v < g.n:
        raise IllegalMove(f"{what} vertex {v} out of range")


def _apply_subset(g: Graph, tokens: frozenset[int], move: Move, model: str):
    kind = move.kind
    if model == SLIDE and kind != "slide":
        raise IllegalMove(f"{kind} move not allowed under sliding model")
    if model == JUMP and kind != "jump":
        raise IllegalMove(f"{kind} move not allowed under jumping model")
    if model == ADD_REMOVE and kind not in ("add", "remove"):
        raise IllegalMove(f"{kind} move not allowed under addition/removal model")

    if kind in ("slide", "jump"):
        _check_vertex(g, move.u, "source")
        _check_vertex(g, move.v, "target")
        if move.u not in tokens:
            raise IllegalMove(f"no token on {move.u}")
        if move.v in tokens:
            raise IllegalMove(f"vertex {move.v} already occupied")
        if kind == "slide" and not g.has_edge(move.u, move.v):
            raise IllegalMove(f"slide requires edge ({move.u},{move.v})")
        return tokens - {move.u} | {move.v}
    if kind == "add":
        _check_vertex(g, move.v, "target")
        if move.v in tokens:
            raise IllegalMove(f"vertex {move.v} already occupied")
        return tokens | {move.v}
    if kind == "remove":
        _check_vertex(g, move.v, "target")
        if move.v not in tokens:
            raise IllegalMove(f"no token on {move.v}")
        return tokens - {move.v}
    raise IllegalMove(f"move kind {kind!r} is not a token move")


def _apply_coloring(g: Graph, colors: tuple, move: Move, model: str, k: int | None):
    kind = move.kind
    if model == FLIP and kind != "flip":
        raise IllegalMove(f"{kind} move not allowed under flipping model")
    if model == SWAP and kind != "swap":
        raise IllegalMove(f"{kind} move not allowed under swapping model")
    if model == CSLIDE and kind != "cslide":
        raise IllegalMove(f"{kind} move not allowed under color sliding model")

    if kind == "flip":
        _check_vertex(g, move.v, "target")
        if k is not None and not 1 <= move.color <= k:
            raise IllegalMove(f"color {move.color} outside [1,{k}]")
        out = list(colors)
        out[move.v] = move.color
        return tuple(out)
    if kind in ("swap", "cslide"):
        _check_vertex(g, move.u, "first")
        _check_vertex(g, move.v, "second")
        if move.u == move.v:
            raise IllegalMove("swap endpoints must differ")
        if kind == "cslide" and not g.has_edge(move.u, move.v):
            raise IllegalMove(f"color slide requires edge ({move.u},{move.v})")
        out = list(colors)
        out[move.u], out[move.v] = out[move.v], out[move.u]
        return tuple(out)
    raise IllegalMove(f"move kind {kind!r} is not a coloring move")


@dataclass
class ReplayResult:
    ok: bool
    state: object
    cost: int
    failed_index: int | None = None
    reason: str | None = None


def start_state(instance):
    if isinstance(instance, SubsetInstance):
        return instance.start
    return instance.coloring


def replay(instance, seq) -> ReplayResult:
    """Apply a move sequence from the instance start; one unit cost per move.

    Stops at the first illegal move and reports its index.
    """
    g = instance.graph
    state = start_state(instance)
    k = instance.k if isinstance(instance, ColoringInstance) else None
    for i, move in enumerate(seq):
        try:
            state = apply_move(g, state, move, instance.model, k)
        except IllegalMove as exc:
            return ReplayResult(ok=False, state=state, cost=i, failed_index=i, reason=str(exc))
    return ReplayResult(ok=True, state=state, cost=len(seq))


def final_is_feasible(instance, state) -> bool:
    """Feasibility of a final state for the instance's own problem."""
    if isinstance(instance, SubsetInstance):
        return len(state) == instance.k and is_feasible(instance.problem, instance.graph, state)
    return is_proper(instance.graph, state)
