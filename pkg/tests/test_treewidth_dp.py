import random

import pytest

from discovery.decomposition import tree_decomposition
from discovery.graph import Graph
from discovery.instances import DS, IS, VC, SubsetInstance
from discovery.oracle import SolverInapplicable, oracle_solve
from discovery.treewidth_dp import run_dp, solve_discovery_tw
from helpers import random_connected_graph, random_graph


def test_examples():
    p3 = Graph.path(3)
    res = solve_discovery_tw(SubsetInstance(p3, frozenset({0}), 1, VC))
    assert res.answer and res.min_moves == 1

    res = solve_discovery_tw(SubsetInstance(p3, frozenset({0, 1}), 1, IS))
    assert res.answer and res.min_moves == 1

    c4 = Graph.cycle(4)
    res = solve_discovery_tw(SubsetInstance(c4, frozenset({0, 1}), 1, VC))
    assert res.answer and res.min_moves == 1


def test_rejects_other_problems():
    with pytest.raises(SolverInapplicable):
        solve_discovery_tw(SubsetInstance(Graph.path(3), frozenset({0}), 1, DS))


def test_no_certificate():
    res = solve_discovery_tw(SubsetInstance(Graph.path(3), frozenset({0}), 1, VC))
    assert res.certificate is None


def test_locally_invalid_never_stored():
    # A bag vertex whose neighbors are all strictly interior to the processed
    # subgraph can exchange no tokens with the rest: its throughflow must be
    # zero in every stored state. (Vertices with bag-internal edges may carry
    # flow settled by a sibling subtree, so only strictly-interior closure
    # forces zero.)
    for g in (Graph.cycle(5), Graph.star(3), Graph.path(6)):
        inst = SubsetInstance(g, frozenset({0, 1}), 3, VC)
        nice = tree_decomposition(g)
        run = run_dp(g, inst.start, inst.budget, nice, VC)
        bags = [tuple(sorted(b)) for b in nice.bags]
        order = run.nice.postorder()
        vset = [set() for _ in bags]
        for i in order:
            s = set(bags[i])
            for c in nice.children[i]:
                s |= vset[c]
            vset[i] = s
        for i, table in enumerate(run.tables):
            interior = vset[i] - set(bags[i])
            for (_q, _l, _a, b) in table:
                for pos, u in enumerate(bags[i]):
                    if set(g.neighbors(u)) <= interior:
                        assert b[pos] == 0


def test_root_states_are_budget_pairs():
    g = Graph.path(4)
    nice = tree_decomposition(g)
    run = run_dp(g, frozenset({0, 2}), 4, nice, VC)
    assert nice.bags[nice.root] == frozenset()
    for (q, l, a, b) in run.tables[nice.root]:
        assert a == () and b == ()


def _sweep(problem, rounds, seed, nmax=8):
    rng = random.Random(seed)
    checked = 0
    for _ in range(rounds):
        n = rng.randint(2, nmax)
        g = random_connected_graph(n, rng) if rng.random() < 0.6 else random_graph(n, 0.4, rng)
        k = rng.randint(1, min(4, n))
        start = frozenset(rng.sample(range(n), k))
        b = rng.randint(0, 5)
        inst = SubsetInstance(g, start, b, problem)
        expect = oracle_solve(inst)
        got = solve_discovery_tw(inst)
        assert got.answer == expect.answer, (problem, g.sorted_edges(), sorted(start), b)
        if expect.answer:
            assert got.min_moves == expect.min_moves, (problem, g.sorted_edges(), sorted(start), b)
        checked += 1
    assert checked == rounds


def test_vc_dp_matches_oracle():
    _sweep(VC, 120, seed=211)


def test_is_dp_matches_oracle():
    _sweep(IS, 120, seed=223)


def test_dp_invariant_under_decomposition_choice():
    rng = random.Random(227)
    for _ in range(25):
        n = rng.randint(2, 7)
        g = random_connected_graph(n, rng)
        k = rng.randint(1, min(3, n))
        inst = SubsetInstance(g, frozenset(rng.sample(range(n), k)), rng.randint(0, 4), VC)
        heuristic = solve_discovery_tw(inst, mode="heuristic")
        exact = solve_discovery_tw(inst, mode="exact")
        assert heuristic.answer == exact.answer
        assert heuristic.min_moves == exact.min_moves


def test_join_heavy_graphs():
    # stars and theta-like graphs force join nodes in the nice decomposition
    rng = random.Random(229)
    for _ in range(40):
        n = rng.randint(4, 8)
        g = random_connected_graph(n, rng, extra=0.05)
        k = rng.randint(1, 3)
        start = frozenset(rng.sample(range(n), k))
        b = rng.randint(0, 5)
        for problem in (VC, IS):
            inst = SubsetInstance(g, start, b, problem)
            assert solve_discovery_tw(inst).answer == oracle_solve(inst).answer
