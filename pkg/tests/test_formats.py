import random
from itertools import combinations

import networkx as nx
import pytest

from c4star.errors import Graph6ParseError
from c4star.formats import (
    decode_graph6,
    encode_graph6,
    format_edge_list,
    parse_edge_list,
    read_graph6_lines,
    to_dot,
)
from c4star.graph import CAPACITY, Graph, cycle_graph


def random_graph(n, p, rng):
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def test_single_vertex():
    assert encode_graph6(Graph.empty(1)) == "@"
    assert decode_graph6("@") == Graph.empty(1)


def test_known_strings_match_networkx():
    rng = random.Random(0)
    for n in (2, 5, 9, 30, 63, 64):
        g = random_graph(n, 0.3, rng)
        ours = encode_graph6(g)
        ref = nx.Graph()
        ref.add_nodes_from(range(n))
        ref.add_edges_from(g.edges())
        theirs = nx.to_graph6_bytes(ref, header=False).decode().strip()
        assert ours == theirs


def test_round_trip_random():
    rng = random.Random(42)
    for _ in range(1000):
        n = rng.randint(1, CAPACITY)
        g = random_graph(n, rng.random(), rng)
        s = encode_graph6(g)
        assert decode_graph6(s) == g
        assert encode_graph6(decode_graph6(s)) == s


@pytest.mark.parametrize(
    "bad, offset",
    [("", 0), ("D", 1), ("Dhc?", 3), ("D h", 1), ("Dhd", 2), ("~?", 2)],
)
def test_parse_errors_report_offset(bad, offset):
    with pytest.raises(Graph6ParseError) as info:
        decode_graph6(bad)
    assert info.value.offset == offset


def test_capacity_exceeded():
    with pytest.raises(Graph6ParseError):
        decode_graph6("~??A" + "?" * 400)


def test_multi_line():
    text = "Dhc\n\n@\n"
    assert read_graph6_lines(text) == [cycle_graph(5), Graph.empty(1)]


def test_edge_list_round_trip():
    g = cycle_graph(6)
    assert parse_edge_list(format_edge_list(g)) == g
    assert parse_edge_list("# comment\n0 1\n", n=4).n == 4


def test_dot_colors():
    g = cycle_graph(4)
    dot = to_dot(g, {e: ("red" if e[0] == 0 else "blue") for e in g.edges()})
    assert "0 -- 1 [color=red]" in dot
    assert "2 -- 3 [color=blue]" in dot
    assert dot.startswith("graph G {")
