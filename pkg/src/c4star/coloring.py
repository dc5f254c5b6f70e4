"""Exact search over red/blue edge colourings.

A colouring is *critical* for ``(g, k)`` when the red subgraph has no C4 and
the blue subgraph has maximum degree at most ``k - 1``.  The search assigns
one edge variable at a time and propagates two rules to a fixpoint:

* an edge whose endpoint already has ``k - 1`` blue edges must be red;
* an edge that would close a red C4 must be blue.

An undecided edge allowed neither colour is a conflict.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, IndeterminateError
from .formats import decode_graph6, encode_graph6
from .graph import Edge, Graph, bits, contains_c4, max_star, norm_edge, popcount

RED = "red"
BLUE = "blue"


@dataclass(frozen=True)
class EdgeColoring:
    graph: Graph
    blue: frozenset[Edge]

    def __post_init__(self):
        for u, v in self.blue:
            if u >= v or not self.graph.has_edge(u, v):
                raise DomainError(f"blue edge {u}{v} is not an edge of the graph")

    @classmethod
    def from_colors(cls, graph: Graph, colors: dict[Edge, str]) -> "EdgeColoring":
        """Build from a total map ``edge -> 'red' | 'blue'``."""
        normed = {norm_edge(*e): c for e, c in colors.items()}
        missing = [e for e in graph.edges() if e not in normed]
        if missing:
            raise DomainError(f"colouring is partial: {len(missing)} edges uncoloured, e.g. {missing[0]}")
        extra = set(normed) - set(graph.edges())
        if extra:
            raise DomainError(f"colouring names non-edges: {sorted(extra)[:3]}")
        bad = {c for c in normed.values()} - {RED, BLUE}
        if bad:
            raise DomainError(f"unknown colours {sorted(bad)}")
        return cls(graph, frozenset(e for e, c in normed.items() if c == BLUE))

    @classmethod
    def all_red(cls, graph: Graph) -> "EdgeColoring":
        return cls(graph, frozenset())

    def color(self, u: int, v: int) -> str:
        e = norm_edge(u, v)
        if not self.graph.has_edge(*e):
            raise DomainError(f"{e} is not an edge")
        return BLUE if e in self.blue else RED

    @property
    def red(self) -> frozenset[Edge]:
        return frozenset(e for e in self.graph.edges() if e not in self.blue)

    def as_dict(self) -> dict[Edge, str]:
        return {e: (BLUE if e in self.blue else RED) for e in self.graph.edges()}

    def red_graph(self) -> Graph:
        return Graph.from_edges(self.graph.n, self.red)

    def blue_graph(self) -> Graph:
        return Graph.from_edges(self.graph.n, self.blue)

    def to_json(self, k: int) -> dict:
        return {
            "graph": encode_graph6(self.graph),
            "k": k,
            "edges": [[u, v, c] for (u, v), c in self.as_dict().items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> tuple["EdgeColoring", int]:
        g = decode_graph6(data["graph"])
        colors = {(int(u), int(v)): c for u, v, c in data["edges"]}
        return cls.from_colors(g, colors), int(data["k"])


def is_critical(g: Graph, k: int, c: EdgeColoring) -> bool:
    if k < 1:
        raise DomainError("k must be at least 1")
    if c.graph != g:
        raise DomainError("colouring is not defined on exactly E(g)")
    return not contains_c4(c.red_graph()) and max_star(c.blue_graph()) <= k - 1


class Status(enum.Enum):
    WITNESS = "witness"
    EXHAUSTED = "exhausted"
    ABORTED = "aborted"


@dataclass
class SearchStats:
    nodes: int = 0
    propagations: int = 0
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "propagations": self.propagations, "time_ms": round(self.wall_time * 1000, 3)}


@dataclass(frozen=True)
class SolverConfig:
    ordering: str = "triangles"
    node_budget: int = 0
    time_budget: float = 0.0
    enumeration_limit: int = 0
    blocking: bool = False

    def __post_init__(self):
        if self.node_budget < 0 or self.time_budget < 0 or self.enumeration_limit < 0:
            raise DomainError("budgets must be non-negative")
        if self.ordering not in ("triangles", "lex"):
            raise DomainError(f"unknown edge ordering {self.ordering!r}")


@dataclass
class SolveOutcome:
    status: Status
    witness: Optional[EdgeColoring] = None
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass
class Enumeration:
    colorings: list[EdgeColoring]
    truncated: bool
    aborted: bool
    stats: SearchStats

    @property
    def count(self) -> int:
        return len(self.colorings)


class _Abort(Exception):
    pass


class _StopEnumeration(Exception):
    pass


def edge_order(g: Graph, ordering: str = "triangles") -> list[Edge]:
    """Branching order: most triangles first, ties broken lexicographically."""
    edges = g.edges()
    if ordering == "lex":
        return edges
    return sorted(edges, key=lambda e: (-popcount(g.rows[e[0]] & g.rows[e[1]]), e))


class _Search:
    UNDECIDED, R, B = 0, 1, 2

    def __init__(self, g: Graph, k: int, cfg: SolverConfig):
        if k < 1:
            raise DomainError("k must be at least 1")
        self.g = g
        self.k = k
        self.cfg = cfg
        self.edges = edge_order(g, cfg.ordering)
        self.val = [self.UNDECIDED] * len(self.edges)
        self.red = [0] * g.n
        self.blue_deg = [0] * g.n
        self.trail: list[int] = []
        self.stats = SearchStats()
        self.deadline = None

    def _assign(self, i: int, color: int) -> bool:
        u, v = self.edges[i]
        self.val[i] = color
        self.trail.append(i)
        if color == self.R:
            if self._closes_red_c4(u, v):
                return False
            self.red[u] |= 1 << v
            self.red[v] |= 1 << u
        else:
            self.blue_deg[u] += 1
            self.blue_deg[v] += 1
            if self.blue_deg[u] > self.k - 1 or self.blue_deg[v] > self.k - 1:
                return False
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            i = self.trail.pop()
            u, v = self.edges[i]
            if self.val[i] == self.R:
                # a rejected red assignment never set the bits
                if self.red[u] >> v & 1:
                    self.red[u] &= ~(1 << v)
                    self.red[v] &= ~(1 << u)
            else:
                self.blue_deg[u] -= 1
                self.blue_deg[v] -= 1
            self.val[i] = self.UNDECIDED

    def _closes_red_c4(self, a: int, b: int) -> bool:
        red = self.red
        ra = red[a] & ~(1 << b)
        for z in bits(red[b] & ~(1 << a)):
            if red[z] & ra:
                return True
        return False

    def _propagate(self) -> bool:
        limit = self.k - 1
        changed = True
        while changed:
            changed = False
            for i, (u, v) in enumerate(self.edges):
                if self.val[i]:
                    continue
                can_blue = self.blue_deg[u] < limit and self.blue_deg[v] < limit
                can_red = not self._closes_red_c4(u, v)
                if can_red and can_blue:
                    continue
                if not (can_red or can_blue):
                    return False
                self.stats.propagations += 1
                if not self._assign(i, self.R if can_red else self.B):
                    return False
                changed = True
        return True

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.cfg.node_budget and self.stats.nodes > self.cfg.node_budget:
            raise _Abort
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Abort

    def _current(self) -> EdgeColoring:
        blue = frozenset(e for e, c in zip(self.edges, self.val) if c == self.B)
        return EdgeColoring(self.g, blue)

    def run(self, on_leaf) -> None:
        """Depth-first search calling ``on_leaf`` at every complete critical colouring."""
        if self.cfg.time_budget:
            self.deadline = time.monotonic() + self.cfg.time_budget
        if not self._propagate():
            return
        self._dfs(on_leaf)

    def _dfs(self, on_leaf) -> None:
        try:
            i = self.val.index(self.UNDECIDED)
        except ValueError:
            on_leaf(self._current())
            return
        self._tick()
        for color in (self.R, self.B):
            mark = len(self.trail)
            if self._assign(i, color) and self._propagate():
                self._dfs(on_leaf)
            self._undo(mark)


def find_critical_coloring(g: Graph, k: int, cfg: SolverConfig = SolverConfig()) -> SolveOutcome:
    search = _Search(g, k, cfg)
    found: list[EdgeColoring] = []

    def stop(c: EdgeColoring) -> None:
        found.append(c)
        raise _StopEnumeration

    start = time.perf_counter()
    status = Status.EXHAUSTED
    try:
        search.run(stop)
    except _StopEnumeration:
        status = Status.WITNESS
    except _Abort:
        status = Status.ABORTED
    search.stats.wall_time = time.perf_counter() - start
    witness = found[0] if found else None
    if witness is not None and not is_critical(g, k, witness):
        raise AssertionError("solver produced a non-critical witness")
    return SolveOutcome(status, witness, search.stats)


def arrows(g: Graph, k: int, cfg: SolverConfig = SolverConfig()) -> bool:
    """True iff every red/blue colouring of ``g`` has a red C4 or a blue K_{1,k}."""
    outcome = find_critical_coloring(g, k, cfg)
    if outcome.status is Status.ABORTED:
        raise IndeterminateError(f"search aborted after {outcome.stats.nodes} nodes")
    return outcome.status is Status.EXHAUSTED


def enumerate_critical_colorings(g: Graph, k: int, cfg: SolverConfig = SolverConfig()) -> Enumeration:
    """All critical colourings as labelled edge maps, in search order.

    By default one chronological backtracking pass visits every leaf once.
    With ``cfg.blocking`` the search restarts from the root after each
    solution and skips leaves already found, which is slower but shares no
    continuation state between solutions.  ``cfg.enumeration_limit`` stops
    early and flags the result as truncated.
    """
    found: list[EdgeColoring] = []
    limit = cfg.enumeration_limit
    stats = SearchStats()
    start = time.perf_counter()
    truncated = aborted = False

    def run(search: _Search, on_leaf) -> None:
        try:
            search.run(on_leaf)
        finally:
            stats.nodes += search.stats.nodes
            stats.propagations += search.stats.propagations

    try:
        if not cfg.blocking:
            def collect(c: EdgeColoring) -> None:
                found.append(c)
                if limit and len(found) >= limit:
                    raise _StopEnumeration

            run(_Search(g, k, cfg), collect)
        else:
            blocked: set[frozenset] = set()

            def first_new(c: EdgeColoring) -> None:
                if c.blue not in blocked:
                    found.append(c)
                    raise _StopEnumeration

            while not (limit and len(found) >= limit):
                before = len(found)
                try:
                    run(_Search(g, k, cfg), first_new)
                except _StopEnumeration:
                    pass
                if len(found) == before:
                    break
                blocked.add(found[-1].blue)
            truncated = bool(limit and len(found) >= limit)
    except _StopEnumeration:
        truncated = True
    except _Abort:
        aborted = True
    stats.wall_time = time.perf_counter() - start
    return Enumeration(found, truncated, aborted, stats)


def count_critical_colorings(g: Graph, k: int, cfg: SolverConfig = SolverConfig()) -> int:
    result = enumerate_critical_colorings(g, k, cfg)
    if result.aborted:
        raise IndeterminateError("enumeration aborted before completion")
    return result.count


def find_red_maximal_coloring(g: Graph, k: int, cfg: SolverConfig = SolverConfig()) -> EdgeColoring:
    """A critical colouring in which no blue edge can turn red without a red C4."""
    outcome = find_critical_coloring(g, k, cfg)
    if outcome.status is Status.ABORTED:
        raise IndeterminateError("search aborted before finding a colouring")
    if outcome.witness is None:
        raise DomainError("graph admits no critical colouring")
    return make_red_maximal(outcome.witness)


def make_red_maximal(c: EdgeColoring) -> EdgeColoring:
    n = c.graph.n
    red = [0] * n
    for u, v in c.red:
        red[u] |= 1 << v
        red[v] |= 1 << u
    blue = set(c.blue)
    changed = True
    while changed:
        changed = False
        for u, v in sorted(blue):
            ru = red[u]
            if any(red[z] & ru for z in bits(red[v])):
                continue
            red[u] |= 1 << v
            red[v] |= 1 << u
            blue.discard((u, v))
            changed = True
    return EdgeColoring(c.graph, frozenset(blue))


@dataclass(frozen=True)
class Refutation:
    """An edge with at least ``2k`` common neighbours: no critical colouring exists."""

    edge: Edge
    common: tuple[int, ...]
    k: int

    def as_dict(self) -> dict:
        return {"edge": list(self.edge), "common_neighbors": list(self.common), "k": self.k}


def precheck_filters(g: Graph, k: int) -> Optional[Refutation]:
    for u, v in g.edges():
        c = g.rows[u] & g.rows[v]
        if popcount(c) >= 2 * k:
            return Refutation((u, v), tuple(bits(c)), k)
    return None


