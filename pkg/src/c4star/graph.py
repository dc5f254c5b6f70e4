"""Bitset graphs and the subgraph primitives the rest of the package builds on.

Adjacency rows are Python ints used as bitsets: bit ``v`` of ``rows[u]`` is set
iff ``uv`` is an edge.  Graphs are immutable values, so they pickle cleanly and
can be handed to worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError

CAPACITY = 64

Edge = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise DomainError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= CAPACITY:
            raise DomainError(f"vertex count {self.n} outside 0..{CAPACITY}")
        if len(self.rows) != self.n:
            raise DomainError("row count does not match vertex count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full or row >> u & 1:
                raise DomainError(f"row {u} has out-of-range bits or a self-loop")
            for v in bits(row):
                if not self.rows[v] >> u & 1:
                    raise DomainError(f"adjacency not symmetric at {u},{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {u},{v} out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def is_complete(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1) // 2

    def add_edge(self, u: int, v: int) -> "Graph":
        u, v = norm_edge(u, v)
        if self.has_edge(u, v):
            raise DomainError(f"{u}{v} is already an edge")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise DomainError(f"{u}{v} is not an edge")
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: list[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        return Graph.from_edges(
            len(vs), ((index[u], index[v]) for u, v in self.edges() if u in index and v in index)
        )


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star_graph(k: int) -> Graph:
    """K_{1,k} with the centre at vertex 0."""
    return complete_bipartite(1, k)


def common_neighbors(g: Graph, u: int, v: int) -> int:
    """Bitset of ``N(u) & N(v)``."""
    if u == v:
        raise DomainError("common_neighbors needs two distinct vertices")
    return g.rows[u] & g.rows[v]


def contains_c4(g: Graph) -> bool:
    """True iff ``g`` has a (not necessarily induced) 4-cycle.

    A C4 exists exactly when some pair of vertices has two common neighbours.
    """
    rows = g.rows
    for u in range(g.n):
        ru = rows[u]
        if not ru:
            continue
        for v in range(u + 1, g.n):
            c = ru & rows[v]
            if c & (c - 1):
                return True
    return False


def max_star(g: Graph) -> int:
    """Maximum degree; ``g`` contains K_{1,k} iff this is at least ``k``."""
    return max((popcount(r) for r in g.rows), default=0)


def non_edges(g: Graph) -> list[Edge]:
    return [(u, v) for u, v in combinations(range(g.n), 2) if not g.rows[u] >> v & 1]


def is_c4_saturated(g: Graph) -> bool:
    if contains_c4(g):
        return False
    rows = g.rows
    for u, v in non_edges(g):
        # g + uv has a C4 through uv iff some neighbour of v is joined by a
        # path of length two to u avoiding v.
        if not any(rows[u] & rows[w] & ~(1 << v) for w in bits(rows[v])):
            return False
    return True


def triangle_counts(g: Graph) -> dict[Edge, int]:
    """Number of triangles through each edge."""
    return {(u, v): popcount(g.rows[u] & g.rows[v]) for u, v in g.edges()}
