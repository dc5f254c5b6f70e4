import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from c4star.coloring import (
    BLUE,
    RED,
    EdgeColoring,
    SolverConfig,
    Status,
    arrows,
    count_critical_colorings,
    enumerate_critical_colorings,
    find_critical_coloring,
    find_red_maximal_coloring,
    is_critical,
    precheck_filters,
)
from c4star.errors import DomainError, IndeterminateError
from c4star.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    non_edges,
    path_graph,
)

from oracles import all_labeled_graphs, brute_force_blue_sets, naive_contains_c4, naive_critical


def random_graph(n, p, rng):
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def test_is_critical_examples():
    k3 = complete_graph(3)
    assert is_critical(k3, 2, EdgeColoring.all_red(k3))
    c4 = cycle_graph(4)
    assert not is_critical(c4, 2, EdgeColoring.all_red(c4))
    p3 = path_graph(3)
    assert not is_critical(p3, 2, EdgeColoring(p3, frozenset(p3.edges())))


def test_partial_coloring_rejected():
    g = complete_graph(3)
    with pytest.raises(DomainError):
        EdgeColoring.from_colors(g, {(0, 1): RED, (1, 2): BLUE})
    with pytest.raises(DomainError):
        is_critical(cycle_graph(3), 2, EdgeColoring.all_red(path_graph(3)))


def test_find_examples():
    assert find_critical_coloring(complete_graph(3), 2).status is Status.WITNESS
    assert find_critical_coloring(complete_graph(4), 2).status is Status.EXHAUSTED
    out = find_critical_coloring(cycle_graph(5), 2)
    assert out.status is Status.WITNESS and not out.witness.blue


def test_arrows_examples():
    # oracle: 2^6 and 2^10 subsets
    assert brute_force_blue_sets(complete_graph(4), 2) == []
    assert brute_force_blue_sets(complete_graph(5), 2) == []
    assert arrows(complete_graph(4), 2)
    assert not arrows(complete_graph(3), 2)
    assert arrows(complete_graph(5), 2)


def test_enumeration_examples():
    assert len(brute_force_blue_sets(cycle_graph(4), 2)) == 6
    assert count_critical_colorings(cycle_graph(4), 2) == 6
    assert len(brute_force_blue_sets(complete_graph(3), 2)) == 4
    assert count_critical_colorings(complete_graph(3), 2) == 4
    assert count_critical_colorings(complete_graph(4), 2) == 0


@pytest.mark.parametrize("blocking", [False, True])
def test_enumeration_is_exact_and_duplicate_free(blocking):
    rng = random.Random(2)
    for _ in range(25):
        g = random_graph(rng.randint(4, 7), 0.5, rng)
        if g.edge_count() > 14:
            continue
        for k in (2, 3):
            expected = set(brute_force_blue_sets(g, k))
            found = enumerate_critical_colorings(g, k, SolverConfig(blocking=blocking)).colorings
            got = [c.blue for c in found]
            assert len(got) == len(set(got))
            assert set(got) == expected


def test_enumeration_deterministic():
    g = complete_bipartite(3, 3)
    a = [c.blue for c in enumerate_critical_colorings(g, 3).colorings]
    b = [c.blue for c in enumerate_critical_colorings(g, 3).colorings]
    assert a == b


def test_enumeration_limit_flags_truncation():
    r = enumerate_critical_colorings(cycle_graph(6), 2, SolverConfig(enumeration_limit=3))
    assert r.count == 3 and r.truncated and not r.aborted
    r = enumerate_critical_colorings(cycle_graph(6), 2, SolverConfig(enumeration_limit=3, blocking=True))
    assert r.count == 3 and r.truncated


@pytest.mark.parametrize("k", [2, 3])
def test_completeness_all_graphs_up_to_five_vertices(k):
    for n in range(1, 6):
        for g in all_labeled_graphs(n):
            out = find_critical_coloring(g, k)
            if out.status is Status.WITNESS:
                c = out.witness
                assert naive_critical(g.n, list(c.red), list(c.blue), k)
            else:
                assert out.status is Status.EXHAUSTED
                assert brute_force_blue_sets(g, k) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 8), st.integers(0, 2**28 - 1), st.sampled_from([2, 3]))
def test_soundness_and_completeness_random(n, mask, k):
    pairs = list(combinations(range(n), 2))
    edges = [p for i, p in enumerate(pairs) if mask >> i & 1][:16]
    g = Graph.from_edges(n, edges)
    out = find_critical_coloring(g, k)
    brute = brute_force_blue_sets(g, k)
    assert (out.status is Status.WITNESS) == bool(brute)
    if out.witness is not None:
        assert not naive_contains_c4(out.witness.red_graph())


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 7), st.integers(0, 2**21 - 1), st.sampled_from([2, 3]))
def test_monotonicity(n, mask, k):
    pairs = list(combinations(range(n), 2))
    g = Graph.from_edges(n, (p for i, p in enumerate(pairs) if mask >> i & 1))
    if arrows(g, k):
        for e in non_edges(g):
            assert arrows(g.add_edge(*e), k)


def test_budget_abort_is_never_a_boolean():
    g = complete_graph(6)
    out = find_critical_coloring(g, 3, SolverConfig(node_budget=1))
    assert out.status is Status.ABORTED and out.witness is None
    with pytest.raises(IndeterminateError):
        arrows(g, 3, SolverConfig(node_budget=1))
    r = enumerate_critical_colorings(cycle_graph(8), 2, SolverConfig(node_budget=2))
    assert r.aborted


def test_config_validation():
    with pytest.raises(DomainError):
        SolverConfig(node_budget=-1)
    with pytest.raises(DomainError):
        SolverConfig(ordering="random")


def test_lex_ordering_agrees():
    rng = random.Random(8)
    for _ in range(20):
        g = random_graph(7, 0.5, rng)
        a = find_critical_coloring(g, 3).status
        b = find_critical_coloring(g, 3, SolverConfig(ordering="lex")).status
        assert a == b


def test_red_maximal_examples():
    assert not find_red_maximal_coloring(complete_graph(3), 2).blue
    assert not find_red_maximal_coloring(cycle_graph(5), 2).blue
    with pytest.raises(DomainError):
        find_red_maximal_coloring(complete_graph(4), 2)


def test_red_maximal_is_locally_maximal():
    rng = random.Random(4)
    for _ in range(30):
        g = random_graph(rng.randint(5, 8), 0.5, rng)
        for k in (2, 3):
            if arrows(g, k):
                continue
            c = find_red_maximal_coloring(g, k)
            assert is_critical(g, k, c)
            for e in c.blue:
                red = Graph.from_edges(g.n, list(c.red) + [e])
                assert naive_contains_c4(red)


def test_precheck_refutation():
    k = 2
    g = complete_bipartite(2, 2 * k).add_edge(0, 1)
    ref = precheck_filters(g, k)
    assert ref is not None and ref.edge == (0, 1) and len(ref.common) == 2 * k
    assert precheck_filters(complete_graph(3), 2) is None
    assert precheck_filters(cycle_graph(5), 2) is None


def test_precheck_never_contradicts_search():
    rng = random.Random(6)
    for _ in range(200):
        g = random_graph(rng.randint(5, 8), 0.6, rng)
        for k in (2, 3):
            if precheck_filters(g, k) is not None:
                assert find_critical_coloring(g, k).status is Status.EXHAUSTED


def test_json_round_trip():
    g = cycle_graph(5)
    c = find_critical_coloring(g, 2).witness
    back, k = EdgeColoring.from_json(c.to_json(2))
    assert back == c and k == 2
    assert all(col in (RED, BLUE) for _, _, col in c.to_json(2)["edges"])
