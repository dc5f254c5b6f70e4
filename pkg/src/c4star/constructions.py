"""Builders for the extremal (C4, K_{1,k})-co-critical families and their colourings.

Vertex numbering is fixed for reproducibility.  For ``k >= 3`` the A-vertices
``x1, x2, ...`` come first, then X, then Y (``x`` and ``y`` are the first
vertices of X and Y), then the vertices of the regular part R.  For ``k = 2``
the order is ``x1, x2, x3, y1, ...`` followed by the cycle vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coloring import EdgeColoring, SolverConfig, Status, find_critical_coloring, is_critical
from .errors import DomainError, IndeterminateError, UnsupportedParameterError
from .graph import Edge, Graph, norm_edge

CLOSED_FORM = "closed-form-sigma"
SOLVER_FOUND = "solver-found"


@dataclass(frozen=True)
class ConstructionBlueprint:
    family: str
    k: int
    n: int
    eps: int
    eps_star: Optional[int]
    p: Optional[int]
    roles: dict[str, tuple[int, ...]]
    labels: tuple[str, ...]
    factorization: tuple[tuple[Edge, ...], ...] = ()
    graph: Optional[Graph] = field(default=None, compare=False)

    def vertex(self, label: str) -> int:
        return self.labels.index(label)

    def role_json(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "n": self.n,
            "eps": self.eps,
            "eps_star": self.eps_star,
            "p": self.p,
            "roles": {name: list(vs) for name, vs in self.roles.items()},
            "labels": list(self.labels),
            "factorization": [[list(e) for e in m] for m in self.factorization],
        }


@dataclass(frozen=True)
class CertificateColoring:
    coloring: EdgeColoring
    provenance: str


def build_regular_factorized(p: int, k: int) -> tuple[Graph, list[list[Edge]]]:
    """Union of the first ``k`` rounds of the circle-method 1-factorization of K_p."""
    if p % 2 or p <= k:
        raise DomainError(f"need p even and p > k, got p={p}, k={k}")
    if k < 1:
        raise DomainError("k must be positive")
    m = p - 1
    rounds = []
    for r in range(k):
        matching = [norm_edge(r, p - 1)]
        for i in range(1, p // 2):
            matching.append(norm_edge((r + i) % m, (r - i) % m))
        rounds.append(sorted(matching))
    g = Graph.from_edges(p, (e for mt in rounds for e in mt))
    return g, rounds


def _parities(k: int, n: int) -> tuple[int, int, int]:
    eps, eps_star = n % 2, k % 2
    return eps, eps_star, n - 2 * k - 2 - eps * (2 * eps_star - 1)


def _check_params(k: int, n: int) -> None:
    if k < 3:
        raise DomainError(f"k >= 3 required, got k={k}")
    eps, eps_star, _ = _parities(k, n)
    need = 3 * k + 3 + eps * (2 * eps_star - 1)
    if n < need:
        raise DomainError(f"n >= 3k+3+eps(2eps*-1) = {need} violated by n={n}")


def predicted_edge_count(k: int, n: int) -> int:
    _check_params(k, n)
    eps, eps_star, _ = _parities(k, n)
    if eps_star:
        twice = (k + 2) * n - (2 + eps) * k + 4 * eps
    else:
        twice = (k + 2) * n - (2 - eps) * k + 2 * (1 - 2 * eps)
    assert twice % 2 == 0
    return twice // 2


def build_g(k: int, n: int) -> tuple[Graph, ConstructionBlueprint]:
    """The graph G_{eps,eps*} on ``n`` vertices for the star K_{1,k}."""
    _check_params(k, n)
    eps, eps_star, p = _parities(k, n)
    assert p % 2 == 0 and p >= k + 1
    a = 4 + (2 * eps_star - 1) * eps
    A = list(range(a))
    X = list(range(a, a + k - 1))
    Y = list(range(a + k - 1, a + 2 * k - 2))
    R = list(range(a + 2 * k - 2, n))
    assert len(R) == p
    x, y = X[0], Y[0]
    x1, x2 = A[0], A[1]
    H = X + Y

    edges: set[Edge] = set()
    for xi in X:
        for yj in Y:
            if eps_star == 0 and (xi, yj) == (x, y):
                continue
            edges.add((xi, yj))
    _, rounds = build_regular_factorized(p, k)
    shifted = [[(R[u], R[v]) for u, v in mt] for mt in rounds]
    for mt in shifted:
        edges.update(mt)

    def join(v: int, targets) -> None:
        for t in targets:
            edges.add(norm_edge(v, t))

    if eps_star == 1:
        join(x1, H + [A[1], A[2], A[3]])
        join(x2, H + R + A[3:])
        rest = A[2:]
        for i, u in enumerate(rest):
            join(u, rest[i + 1:])
    else:
        last = A[3 - eps]  # x_{4-eps}
        join(x1, H + A[1:4 - eps])
        join(x2, H + R + [last])
        join(x, [last])
        if eps == 0:
            join(A[2], [A[3], y])

    g = Graph.from_edges(n, edges)
    labels = [f"x{i + 1}" for i in A] + [f"X{i + 1}" for i in range(k - 1)]
    labels += [f"Y{i + 1}" for i in range(k - 1)] + [f"R{i + 1}" for i in range(p)]
    roles = {"A": tuple(A), "X": tuple(X), "Y": tuple(Y), "R": tuple(R), "x": (x,), "y": (y,)}
    bp = ConstructionBlueprint(
        family="c4-star",
        k=k,
        n=n,
        eps=eps,
        eps_star=eps_star,
        p=p,
        roles=roles,
        labels=tuple(labels),
        factorization=tuple(tuple(sorted(norm_edge(*e) for e in mt)) for mt in shifted),
        graph=g,
    )
    return g, bp


def certificate_coloring(bp: ConstructionBlueprint, cfg: SolverConfig = SolverConfig()) -> CertificateColoring:
    g = bp.graph
    k = bp.k
    if bp.eps_star == 0:
        outcome = find_critical_coloring(g, k, cfg)
        if outcome.status is Status.ABORTED:
            raise IndeterminateError("solver aborted while searching for a certificate")
        if outcome.witness is None:
            raise DomainError("construction admits no critical colouring")
        return CertificateColoring(outcome.witness, SOLVER_FOUND)

    A, X, Y, R = (list(bp.roles[r]) for r in "AXYR")
    x1, x2 = A[0], A[1]
    matching = list(zip(X, Y))
    half = (k - 1) // 2
    m1 = [v for e in matching[:half] for v in e]
    m2 = [v for e in matching[half:] for v in e]
    red: set[Edge] = {norm_edge(u, v) for u, v in matching}
    red.update(bp.factorization[0])
    red.update(norm_edge(x1, t) for t in m1 + [A[1], A[2], A[3]])
    red.update(norm_edge(x2, t) for t in m2 + R + A[3:])
    blue = frozenset(e for e in g.edges() if e not in red)
    c = EdgeColoring(g, blue)
    if not is_critical(g, k, c):
        raise AssertionError("closed-form colouring is not critical")
    return CertificateColoring(c, CLOSED_FORM)


def _check_k2(n: int) -> None:
    if n < 5:
        raise DomainError(f"n >= 5 required, got n={n}")
    if n in (7, 8):
        raise UnsupportedParameterError(
            f"n={n} would need the cycle C_{n - 6 + n % 2}, which is not a simple graph"
        )


def build_g_k2(n: int) -> tuple[Graph, ConstructionBlueprint]:
    """The graph G_eps with 2n - 3 edges for the star K_{1,2}."""
    _check_k2(n)
    eps = n % 2
    ny = 3 - eps
    x1, x2, x3 = 0, 1, 2
    ys = list(range(3, 3 + ny))
    cyc = list(range(3 + ny, n))
    L = len(cyc)
    assert L == n - 6 + eps
    edges: set[Edge] = {norm_edge(cyc[i], cyc[(i + 1) % L]) for i in range(L)} if L else set()
    edges.update(norm_edge(x3, t) for t in cyc + [x1, x2, ys[0], ys[1]])
    if eps == 0:
        edges.update(norm_edge(x1, t) for t in (x2, ys[0], ys[2]))
        edges.update(norm_edge(x2, t) for t in (ys[1], ys[2]))
    else:
        edges.update(norm_edge(x2, t) for t in (x1, ys[0], ys[1]))
    g = Graph.from_edges(n, edges)
    labels = ["x1", "x2", "x3"] + [f"y{i + 1}" for i in range(ny)] + [f"c{i + 1}" for i in range(L)]
    roles = {"A": (x1, x2, x3), "Ys": tuple(ys), "cycle": tuple(cyc)}
    bp = ConstructionBlueprint(
        family="c4-star-k2", k=2, n=n, eps=eps, eps_star=None, p=None,
        roles=roles, labels=tuple(labels), graph=g,
    )
    return g, bp


def certificate_coloring_k2(bp: ConstructionBlueprint) -> CertificateColoring:
    g = bp.graph
    x1, x2, x3 = bp.roles["A"]
    ys = bp.roles["Ys"]
    cyc = bp.roles["cycle"]
    L = len(cyc)
    if bp.eps == 0:
        y1, y2, y3 = ys
        red = {(x1, x2), (x1, x3), (x2, x3), (x1, y1), (x2, y3)}
        red.update(norm_edge(x3, t) for t in list(cyc) + [y2])
    else:
        y1, y2 = ys
        red = {(x2, x3), (x1, x2), (x2, y2)}
        red.update(norm_edge(x3, t) for t in list(cyc) + [x1, y1])
    red.update(norm_edge(cyc[i], cyc[i + 1]) for i in range(0, L, 2))
    red = {norm_edge(*e) for e in red}
    c = EdgeColoring(g, frozenset(e for e in g.edges() if e not in red))
    if not is_critical(g, 2, c):
        raise AssertionError("reconstructed colouring is not critical")
    return CertificateColoring(c, CLOSED_FORM)
