"""Exhaustive small-n scans for extremal C4-saturated and co-critical graphs.

Isomorphism classes on ``n`` vertices are generated by edge count: every graph
with ``e`` edges is some graph with ``e - 1`` edges plus one edge, so adding
each non-edge to every class representative and deduplicating by canonical
code reaches every class.  An optional ``extend_if`` filter restricts which
classes are grown; it is only complete when the filtered property is closed
under edge deletion (C4-freeness is).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .canon import are_isomorphic, canonical
from .coloring import SolverConfig, precheck_filters
from .cocritical import verify_cocritical
from .errors import CapabilityError
from .formats import encode_graph6
from .graph import Graph, contains_c4, is_c4_saturated, non_edges

MAX_ENUM_N = 8
SCAN_NODE_BUDGET = 2000


@dataclass
class SearchSummary:
    n: int
    k: Optional[int]
    target: str
    minimum: Optional[int]
    witnesses: list[str]
    scanned: int
    wall_time: float
    retried: int = 0
    per_level: dict[int, int] = field(default_factory=dict)

    @property
    def class_count(self) -> int:
        return len(self.witnesses)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "target": self.target,
            "minimum": self.minimum,
            "class_count": self.class_count,
            "witnesses": self.witnesses,
            "scanned": self.scanned,
            "retried": self.retried,
            "per_level": {str(e): c for e, c in sorted(self.per_level.items())},
            "timing": {"wall_time_ms": round(self.wall_time * 1000, 3)},
        }


def graph_levels(n: int, max_edges: Optional[int] = None,
                 extend_if: Optional[Callable[[Graph], bool]] = None) -> Iterator[tuple[int, list[Graph]]]:
    """Yield ``(e, classes)`` for e = 0, 1, ...; classes in canonical order."""
    if n > MAX_ENUM_N:
        raise CapabilityError(f"exhaustive enumeration limited to n <= {MAX_ENUM_N}")
    top = n * (n - 1) // 2 if max_edges is None else min(max_edges, n * (n - 1) // 2)
    level = {canonical(Graph.empty(n))[0]: canonical(Graph.empty(n))[1]}
    for e in range(top + 1):
        graphs = [level[key] for key in sorted(level)]
        yield e, graphs
        if e == top:
            return
        nxt: dict[tuple, Graph] = {}
        for g in graphs:
            if extend_if is not None and not extend_if(g):
                continue
            for u, v in non_edges(g):
                key, form = canonical(g.add_edge(u, v))
                if key not in nxt:
                    nxt[key] = form
        level = nxt


def enumerate_graphs(n: int, edge_bounds: tuple[int, int] = (0, -1),
                     predicate: Optional[Callable[[Graph], bool]] = None) -> Iterator[Graph]:
    """One representative per isomorphism class, by increasing edge count."""
    lo, hi = edge_bounds
    for e, graphs in graph_levels(n, None if hi < 0 else hi):
        if e < lo:
            continue
        for g in graphs:
            if predicate is None or predicate(g):
                yield g


def _dedup_check(witnesses: list[Graph]) -> None:
    for i, a in enumerate(witnesses):
        for b in witnesses[i + 1:]:
            assert not are_isomorphic(a, b), "duplicate isomorphism class in witness set"


def min_c4_saturated(n: int) -> SearchSummary:
    if not 5 <= n <= MAX_ENUM_N:
        raise CapabilityError(f"saturation scan supports 5 <= n <= {MAX_ENUM_N}")
    start = time.perf_counter()
    scanned = 0
    per_level = {}
    for e, graphs in graph_levels(n, extend_if=lambda g: not contains_c4(g)):
        candidates = [g for g in graphs if not contains_c4(g)]
        scanned += len(candidates)
        per_level[e] = len(candidates)
        hits = [g for g in candidates if is_c4_saturated(g)]
        if hits:
            assert all(is_c4_saturated(g) for g in hits)
            _dedup_check(hits)
            return SearchSummary(n, None, "c4-saturated", e, [encode_graph6(g) for g in hits],
                                 scanned, time.perf_counter() - start, per_level=per_level)
    return SearchSummary(n, None, "c4-saturated", None, [], scanned, time.perf_counter() - start,
                         per_level=per_level)


def _scan_one(args) -> tuple[str, Optional[bool]]:
    g, k, budget = args
    if g.is_complete() or precheck_filters(g, k) is not None:
        return "skip", False
    report = verify_cocritical(g, k, SolverConfig(node_budget=budget), stop_at_first_failure=True)
    return "checked", report.verdict


def min_cocritical(n: int, k: int, long_running: bool = False, jobs: int = 1) -> SearchSummary:
    """Minimum edge count of a (C4, K_{1,k})-co-critical graph on ``n`` vertices.

    Each class is first checked with a small node budget; classes whose search
    aborted are rechecked without a budget before the level is decided.
    """
    limit = MAX_ENUM_N if long_running else 7
    if not 5 <= n <= limit:
        raise CapabilityError(
            f"co-critical scan supports 5 <= n <= {limit}" + ("" if long_running else " (n=8 needs long_running)")
        )
    if k < 2:
        raise CapabilityError("k >= 2 required")
    start = time.perf_counter()
    scanned = retried = 0
    per_level = {}
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for e, graphs in graph_levels(n):
            if e == n * (n - 1) // 2:
                break
            tasks = [(g, k, SCAN_NODE_BUDGET) for g in graphs]
            results = list(pool.map(_scan_one, tasks, chunksize=16)) if pool else [_scan_one(t) for t in tasks]
            scanned += len(graphs)
            per_level[e] = len(graphs)
            hits = []
            for g, (_, verdict) in zip(graphs, results):
                if verdict is None:
                    retried += 1
                    verdict = verify_cocritical(g, k, SolverConfig(), stop_at_first_failure=True).verdict
                if verdict:
                    hits.append(g)
            if hits:
                for g in hits:
                    assert verify_cocritical(g, k).verdict is True
                _dedup_check(hits)
                return SearchSummary(n, k, "cocritical", e, [encode_graph6(g) for g in hits], scanned,
                                     time.perf_counter() - start, retried, per_level)
    finally:
        if pool:
            pool.shutdown()
    return SearchSummary(n, k, "cocritical", None, [], scanned, time.perf_counter() - start, retried, per_level)
