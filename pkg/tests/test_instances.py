import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discovery.graph import Graph
from discovery.instances import (
    DS,
    IS,
    VC,
    ColoringInstance,
    IllegalMove,
    InstanceError,
    Move,
    SubsetInstance,
    apply_move,
    is_feasible,
    is_proper,
    replay,
)


def test_feasibility_trivials():
    p3 = Graph.path(3)
    assert is_feasible(VC, p3, frozenset({1}))
    assert not is_feasible(IS, Graph(2, [(0, 1)]), frozenset({0, 1}))
    assert is_feasible(DS, Graph.star(3), frozenset({0}))


def test_is_proper():
    edge = Graph(2, [(0, 1)])
    assert is_proper(edge, (1, 2))
    assert not is_proper(edge, (1, 1))
    assert is_proper(Graph(3), (1, 1, 1))


def test_slide_moves():
    g = Graph(2, [(0, 1)])
    assert apply_move(g, frozenset({0}), Move.slide(0, 1), "slide") == frozenset({1})
    with pytest.raises(IllegalMove):
        apply_move(g, frozenset({0, 1}), Move.slide(0, 1), "slide")
    with pytest.raises(IllegalMove):
        apply_move(Graph(3, [(0, 1)]), frozenset({0}), Move.slide(0, 2), "slide")


def test_cslide_swaps_colors():
    g = Graph(2, [(0, 1)])
    assert apply_move(g, (1, 2), Move.cslide(0, 1), "slide", k=2) == (2, 1)


def test_model_mismatch_rejected():
    g = Graph(2, [(0, 1)])
    with pytest.raises(IllegalMove):
        apply_move(g, frozenset({0}), Move.jump(0, 1), "slide")
    with pytest.raises(IllegalMove):
        apply_move(g, (1, 2), Move.flip(0, 2), "slide", k=2)


def test_add_remove():
    g = Graph(2)
    s = apply_move(g, frozenset(), Move.add(1), "add_remove")
    assert s == frozenset({1})
    assert apply_move(g, s, Move.remove(1), "add_remove") == frozenset()


def test_budget_normalization():
    inst = SubsetInstance(Graph.path(3), frozenset({0}), budget=10**9, problem=VC)
    assert inst.budget == 9
    cinst = ColoringInstance(Graph.path(3), (1, 2, 1), k=2, budget=10**9, model="slide")
    assert cinst.budget == 18


def test_instance_validation():
    with pytest.raises(InstanceError):
        SubsetInstance(Graph.path(3), frozenset({5}), budget=1, problem=VC)
    with pytest.raises(InstanceError):
        ColoringInstance(Graph.path(2), (1, 3), k=2, budget=1, model="flip")


def test_replay_trivials():
    p3 = Graph.path(3)
    inst = SubsetInstance(p3, frozenset({0}), budget=1, problem=VC)
    empty = replay(inst, [])
    assert empty.ok and empty.cost == 0 and empty.state == frozenset({0})

    good = replay(inst, [Move.slide(0, 1)])
    assert good.ok and good.cost == 1 and is_feasible(VC, p3, good.state)

    bad = replay(inst, [Move.slide(0, 1), Move.slide(0, 1)])
    assert not bad.ok and bad.failed_index == 1 and bad.reason


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_slide_jump_preserve_count_and_inverse(rng):
    n = rng.randint(2, 8)
    from helpers import random_connected_graph

    g = random_connected_graph(n, rng)
    k = rng.randint(1, n - 1)
    tokens = frozenset(rng.sample(range(n), k))
    occupied = sorted(tokens)
    u = rng.choice(occupied)
    free = [v for v in range(n) if v not in tokens]
    slidable = [v for v in g.neighbors(u) if v not in tokens]
    if slidable:
        mv = Move.slide(u, rng.choice(slidable))
        nxt = apply_move(g, tokens, mv, "slide")
        assert len(nxt) == len(tokens)
        assert apply_move(g, nxt, mv.inverse(tokens), "slide") == tokens
    if free:
        mv = Move.jump(u, rng.choice(free))
        nxt = apply_move(g, tokens, mv, "jump")
        assert len(nxt) == len(tokens)
        assert apply_move(g, nxt, mv.inverse(tokens), "jump") == tokens


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_color_moves_multiset_and_inverse(rng):
    n = rng.randint(2, 8)
    from helpers import random_connected_graph

    g = random_connected_graph(n, rng)
    k = rng.randint(2, 4)
    colors = tuple(rng.randint(1, k) for _ in range(n))
    u, v = rng.sample(range(n), 2)

    swapped = apply_move(g, colors, Move.swap(u, v), "swap", k=k)
    assert sorted(swapped) == sorted(colors)
    assert apply_move(g, swapped, Move.swap(u, v), "swap", k=k) == colors

    a, b = sorted(rng.choice(g.sorted_edges()))
    slid = apply_move(g, colors, Move.cslide(a, b), "slide", k=k)
    assert sorted(slid) == sorted(colors)
    assert apply_move(g, slid, Move.cslide(b, a), "slide", k=k) == colors

    c = rng.randint(1, k)
    flipped = apply_move(g, colors, Move.flip(u, c), "flip", k=k)
    assert apply_move(g, flipped, Move.flip(u, c).inverse(colors), "flip", k=k) == colors
