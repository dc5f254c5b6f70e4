"""Co-criticality verdicts, edge-count bounds and structural diagnostics."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coloring import (
    EdgeColoring,
    SolverConfig,
    Status,
    find_critical_coloring,
    is_critical,
    make_red_maximal,
    precheck_filters,
)
from .errors import DomainError, IndeterminateError
from .formats import encode_graph6
from .graph import Edge, Graph, bits, is_c4_saturated, non_edges, popcount


def ramsey_upper(k: int) -> int:
    """Upper bound on r(C4, K_{1,k})."""
    if k < 2:
        raise DomainError("k >= 2 required")
    return k + math.isqrt(k - 1) + 2


def lower_bound_general(k: int, n: int) -> Fraction:
    if k < 2:
        raise DomainError("k >= 2 required")
    if n < ramsey_upper(k):
        raise DomainError(f"n >= k + isqrt(k-1) + 2 = {ramsey_upper(k)} required, got n={n}")
    return Fraction((k + 2) * n, 2) - 3 - Fraction((k - 1) * (k + math.isqrt(k - 2)), 2)


def lower_bound_k2(n: int) -> int:
    if n < 5:
        raise DomainError(f"n >= 5 required, got n={n}")
    return 2 * n - 3


def saturation_bound(n: int) -> int:
    """Minimum edge count of a C4-saturated graph on n >= 5 vertices."""
    return (3 * n - 5) // 2


def s_size_bound(k: int) -> int:
    return k + math.isqrt(k - 2)


@dataclass
class EdgeLemmaStats:
    edge: Edge
    color: str
    common: int
    red_common: int
    blue_u_in_common: int
    blue_v_in_common: int
    blue_disjoint: bool


@dataclass
class LemmaReport:
    k: int
    S: tuple[int, ...]
    S_is_clique: bool
    alpha_blue_S: int
    S_size_bound: int
    S_size_bound_k2_alt: Optional[int]
    edges: list[EdgeLemmaStats]
    ii_holds: bool
    iii_holds: bool
    iii_split_holds: bool

    @property
    def alpha_holds(self) -> bool:
        return self.alpha_blue_S <= 3

    @property
    def S_size_holds(self) -> bool:
        return len(self.S) <= self.S_size_bound

    @property
    def all_hold(self) -> bool:
        """Every assertion of the structural lemma.

        The |S| bound is left out at k = 2, where the general formula and the
        bound used in the k = 2 argument disagree; it is still reported.
        """
        size_ok = self.S_size_holds if self.k > 2 else True
        return (
            self.S_is_clique and self.alpha_holds and size_ok
            and self.ii_holds and self.iii_holds and self.iii_split_holds
        )

    def as_dict(self) -> dict:
        return {
            "S": list(self.S),
            "S_is_clique": self.S_is_clique,
            "alpha_blue_S": self.alpha_blue_S,
            "S_size_bound": self.S_size_bound,
            "S_size_bound_k2_alt": self.S_size_bound_k2_alt,
            "ii_holds": self.ii_holds,
            "iii_holds": self.iii_holds,
            "iii_split_holds": self.iii_split_holds,
            "max_common": max((e.common for e in self.edges), default=0),
        }


def _independence_number(rows: dict[int, int], vertices: int) -> int:
    if not vertices:
        return 0
    v = (vertices & -vertices).bit_length() - 1
    rest = vertices & ~(1 << v)
    without = _independence_number(rows, rest)
    with_v = 1 + _independence_number(rows, rest & ~rows[v])
    return max(without, with_v)


def check_lemma_structures(g: Graph, k: int, c: EdgeColoring) -> LemmaReport:
    if not is_critical(g, k, c):
        raise DomainError("colouring is not critical")
    n = g.n
    red = [0] * n
    blue = [0] * n
    for u, v in g.edges():
        side = blue if (u, v) in c.blue else red
        side[u] |= 1 << v
        side[v] |= 1 << u
    S = tuple(v for v in range(n) if popcount(blue[v]) <= k - 2)
    smask = sum(1 << v for v in S)
    clique = all((g.rows[v] | 1 << v) & smask == smask for v in S)
    alpha = _independence_number({v: blue[v] & smask for v in S}, smask)

    stats = []
    ii = iii = split = True
    for u, v in g.edges():
        common = g.rows[u] & g.rows[v]
        cn = popcount(common)
        red_cn = popcount(red[u] & red[v])
        bu = popcount(blue[u] & common)
        bv = popcount(blue[v] & common)
        disjoint = not (blue[u] & blue[v])
        color = "blue" if (u, v) in c.blue else "red"
        stats.append(EdgeLemmaStats((u, v), color, cn, red_cn, bu, bv, disjoint))
        if cn >= 2 * k - 2 and (color != "red" or red_cn > 1):
            ii = False
        if cn > 2 * k - 1:
            iii = False
        if cn == 2 * k - 1 and not (red_cn == 1 and bu == k - 1 and bv == k - 1 and disjoint):
            split = False
    return LemmaReport(
        k=k,
        S=S,
        S_is_clique=clique,
        alpha_blue_S=alpha,
        S_size_bound=s_size_bound(k) if k >= 2 else 0,
        S_size_bound_k2_alt=3 if k == 2 else None,
        edges=stats,
        ii_holds=ii,
        iii_holds=iii,
        iii_split_holds=split,
    )


@dataclass
class NonEdgeResult:
    edge: Edge
    method: str
    status: str
    nodes: int = 0
    time_ms: float = 0.0
    witness: Optional[EdgeColoring] = None
    refutation: Optional[dict] = None

    def as_dict(self, k: int) -> dict:
        out = {"edge": list(self.edge), "method": self.method, "status": self.status,
               "nodes": self.nodes, "time_ms": self.time_ms}
        if self.refutation is not None:
            out["refutation"] = self.refutation
        if self.witness is not None:
            out["witness"] = self.witness.to_json(k)["edges"]
        return out


def _check_non_edge(args) -> NonEdgeResult:
    g, k, cfg, e = args
    h = g.add_edge(*e)
    start = time.perf_counter()
    ref = precheck_filters(h, k)
    if ref is not None:
        ms = round((time.perf_counter() - start) * 1000, 3)
        return NonEdgeResult(e, "precheck", "refuted", 0, ms, refutation=ref.as_dict())
    outcome = find_critical_coloring(h, k, cfg)
    status = {Status.EXHAUSTED: "refuted", Status.WITNESS: "admits-coloring-after-add",
              Status.ABORTED: "aborted"}[outcome.status]
    return NonEdgeResult(e, "search", status, outcome.stats.nodes,
                         round(outcome.stats.wall_time * 1000, 3), witness=outcome.witness)


@dataclass
class CocriticalReport:
    graph: Graph
    k: int
    verdict: Optional[bool]
    witness: Optional[EdgeColoring]
    non_edge_results: list[NonEdgeResult]
    witness_stats: dict
    bounds: dict
    decomposition: Optional[dict] = None
    checks: dict = field(default_factory=dict)
    lemma: Optional[LemmaReport] = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def e(self) -> int:
        return self.graph.edge_count()

    @property
    def failures(self) -> list[NonEdgeResult]:
        return [r for r in self.non_edge_results if r.status == "admits-coloring-after-add"]

    @property
    def indeterminate(self) -> list[NonEdgeResult]:
        return [r for r in self.non_edge_results if r.status == "aborted"]

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "graph6": encode_graph6(self.graph),
            "k": self.k,
            "n": self.n,
            "e": self.e,
            "bounds": self.bounds,
            "witness": self.witness.to_json(self.k)["edges"] if self.witness else None,
            "failures": [r.as_dict(self.k) for r in self.failures],
            "indeterminate": [list(r.edge) for r in self.indeterminate],
            "decomposition": self.decomposition,
            "checks": self.checks,
            "lemma": self.lemma.as_dict() if self.lemma else None,
            "stats": {
                "witness_search": self.witness_stats,
                "non_edges": [r.as_dict(self.k) for r in self.non_edge_results],
            },
        }


def bound_values(k: int, n: int) -> dict:
    out: dict = {}
    try:
        lb = lower_bound_general(k, n)
        out["general"] = str(lb)
        out["general_ceil"] = math.ceil(lb)
    except DomainError:
        out["general"] = None
        out["general_ceil"] = None
    if k == 2 and n >= 5:
        out["k2"] = lower_bound_k2(n)
    return out


def verify_cocritical(
    g: Graph,
    k: int,
    cfg: SolverConfig = SolverConfig(),
    jobs: int = 1,
    stop_at_first_failure: bool = False,
) -> CocriticalReport:
    """Decide co-criticality and collect the evidence; never raises on aborts.

    ``verdict`` is None when some subproblem aborted and no failure was found.
    """
    if k < 2:
        raise DomainError("k >= 2 required")
    if g.is_complete():
        raise DomainError("complete graphs are never co-critical")
    bounds = bound_values(k, g.n)
    outcome = find_critical_coloring(g, k, cfg)
    wstats = outcome.stats.as_dict()
    if outcome.status is Status.ABORTED:
        return CocriticalReport(g, k, None, None, [], wstats, bounds)
    if outcome.witness is None:
        return CocriticalReport(g, k, False, None, [], wstats, bounds)

    tasks = [(g, k, cfg, e) for e in non_edges(g)]
    results: list[NonEdgeResult] = []
    if jobs > 1 and len(tasks) > 1 and not stop_at_first_failure:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_non_edge, tasks))
    else:
        for t in tasks:
            r = _check_non_edge(t)
            results.append(r)
            if stop_at_first_failure and r.status == "admits-coloring-after-add":
                break
    results.sort(key=lambda r: r.edge)

    report = CocriticalReport(g, k, None, outcome.witness, results, wstats, bounds)
    if report.failures:
        report.verdict = False
    elif report.indeterminate:
        report.verdict = None
    else:
        report.verdict = True
        _post_verification(report)
    return report


def _post_verification(report: CocriticalReport) -> None:
    """Structural consequences that every co-critical graph must satisfy."""
    g, k, n = report.graph, report.k, report.graph.n
    maximal = make_red_maximal(report.witness)
    red_g = maximal.red_graph()
    n_blue = len(maximal.blue)
    lemma = check_lemma_structures(g, k, maximal)
    s = len(lemma.S)
    report.lemma = lemma
    report.decomposition = {"red": red_g.edge_count(), "blue": n_blue, "S": s}
    checks = {
        "red_maximal_is_c4_saturated": is_c4_saturated(red_g),
        "blue_lower_bound": n_blue >= math.ceil(Fraction((k - 1) * (n - s), 2)),
        "lemma_structures": lemma.all_hold,
    }
    if n >= 5:
        checks["red_saturation_bound"] = red_g.edge_count() >= saturation_bound(n)
    if report.bounds.get("general_ceil") is not None:
        checks["general_lower_bound"] = report.e >= report.bounds["general_ceil"]
    if k == 2 and n >= 5:
        checks["k2_lower_bound"] = report.e >= lower_bound_k2(n)
        assert checks["k2_lower_bound"], "co-critical graph below 2n-3 edges"
    report.checks = checks


def is_cocritical(g: Graph, k: int, cfg: SolverConfig = SolverConfig(), jobs: int = 1) -> CocriticalReport:
    """Like :func:`verify_cocritical` but raises when any search aborted."""
    report = verify_cocritical(g, k, cfg, jobs)
    if report.verdict is None:
        raise IndeterminateError("a subproblem exceeded the search budget")
    return report
