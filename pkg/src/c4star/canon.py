"""Canonical forms, isomorphism and automorphism counting for small graphs.

The canonical code of a graph is the lexicographically largest upper-triangle
string (graph6 bit order) over all vertex orderings that respect the colour
refinement.  Structures may carry several edge layers (used for red/blue
colourings) and an initial vertex colouring.

Pruning uses only two facts: a prefix that is already smaller than the best
one cannot win, and swapping two twins in the same cell is an automorphism.
Neither depends on labels, so the code is a true isomorphism invariant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .errors import CapabilityError
from .graph import Graph, bits

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class Structure:
    """Vertices ``0..n-1`` with edge layers and vertex colours."""

    n: int
    layers: tuple[tuple[int, ...], ...]
    colors: tuple[int, ...]

    def pair_value(self, u: int, v: int) -> int:
        val = 0
        for i, rows in enumerate(self.layers):
            if rows[u] >> v & 1:
                val |= 1 << i
        return val


def as_structure(g: Graph, colors: Optional[Sequence[int]] = None) -> Structure:
    return Structure(g.n, (g.rows,), tuple(colors) if colors is not None else (0,) * g.n)


def colored_structure(n: int, red_rows: Sequence[int], blue_rows: Sequence[int]) -> Structure:
    return Structure(n, (tuple(red_rows), tuple(blue_rows)), (0,) * n)


def refine(s: Structure) -> list[int]:
    """Stable colour refinement; returns an invariant cell index per vertex."""
    color = list(s.colors)
    # normalise initial colours to 0..m-1 in sorted order
    index = {c: i for i, c in enumerate(sorted(set(color)))}
    color = [index[c] for c in color]
    ncells = len(index)
    while True:
        sigs = []
        for v in range(s.n):
            counts = Counter()
            for layer, rows in enumerate(s.layers):
                for w in bits(rows[v]):
                    counts[layer, color[w]] += 1
            sigs.append((color[v], tuple(sorted(counts.items()))))
        index = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        color = [index[sig] for sig in sigs]
        if len(index) == ncells:
            return color
        ncells = len(index)


def _twins(s: Structure, a: int, b: int) -> bool:
    mask = ~((1 << a) | (1 << b))
    return all(rows[a] & mask == rows[b] & mask for rows in s.layers)


def canonical_labeling(s: Structure) -> tuple[tuple, list[int]]:
    """Return ``(code, order)``; ``order[i]`` is the vertex at canonical position ``i``."""
    n = s.n
    cell = refine(s)
    slots = sorted(range(n), key=lambda v: cell[v])
    slot_cell = [cell[v] for v in slots]
    members: dict[int, list[int]] = {}
    for v in range(n):
        members.setdefault(cell[v], []).append(v)
    pv = [[s.pair_value(u, v) for v in range(n)] for u in range(n)]

    best_cols: list[tuple] = []
    best_order: list[Optional[list[int]]] = [None]
    prefix: list[int] = []
    used = [False] * n

    def dfs(j: int) -> None:
        if j == n:
            if best_order[0] is None:
                best_order[0] = list(prefix)
            return
        tried: list[int] = []
        for v in members[slot_cell[j]]:
            if used[v] or any(_twins(s, v, t) for t in tried):
                continue
            tried.append(v)
            col = tuple(pv[p][v] for p in prefix)
            if j < len(best_cols):
                if col < best_cols[j]:
                    continue
                if col > best_cols[j]:
                    del best_cols[j:]
                    best_cols.append(col)
                    best_order[0] = None
            else:
                best_cols.append(col)
                best_order[0] = None
            used[v] = True
            prefix.append(v)
            dfs(j + 1)
            prefix.pop()
            used[v] = False

    dfs(0)
    order = best_order[0] if n else []
    code = (n, tuple(s.colors[v] for v in order), tuple(best_cols))
    return code, order


def brute_force_code(s: Structure) -> tuple:
    """Maximum code over every vertex ordering; the unpruned oracle."""
    if s.n > BRUTE_FORCE_LIMIT:
        raise CapabilityError(f"brute-force isomorphism limited to n <= {BRUTE_FORCE_LIMIT}")
    best = None
    for order in permutations(range(s.n)):
        key = (
            tuple(-s.colors[v] for v in order),
            tuple(tuple(s.pair_value(order[i], order[j]) for i in range(j)) for j in range(s.n)),
        )
        if best is None or key > best:
            best = key
    return best


def canonical(g: Graph) -> tuple[tuple, Graph]:
    """``(code, relabelled graph)``; isomorphic graphs give equal values for both."""
    code, order = canonical_labeling(as_structure(g))
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    return code, g.relabel(position)


def canonical_form(g: Graph) -> Graph:
    return canonical(g)[1]


def canonical_key(g: Graph) -> tuple:
    return canonical_labeling(as_structure(g))[0]


def are_isomorphic(g1: Graph, g2: Graph, pruned: bool = True) -> bool:
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    if not pruned:
        return brute_force_code(as_structure(g1)) == brute_force_code(as_structure(g2))
    return canonical_key(g1) == canonical_key(g2)


def find_isomorphism(a: Structure, b: Structure) -> Optional[list[int]]:
    """A map ``phi`` with ``phi[v]`` the image in ``b`` of vertex ``v`` of ``a``, or None."""
    if a.n != b.n or len(a.layers) != len(b.layers):
        return None
    code_a, order_a = canonical_labeling(a)
    code_b, order_b = canonical_labeling(b)
    if code_a != code_b:
        return None
    phi = [0] * a.n
    for va, vb in zip(order_a, order_b):
        phi[va] = vb
    return phi


def structure_automorphism_count(s: Structure) -> int:
    """|Aut| by orbit-stabilizer over successive point stabilizers."""
    n = s.n
    base_colors = [c * (n + 2) for c in s.colors]
    fixed: list[int] = []
    total = 1
    for v in range(n):
        colors = list(base_colors)
        for i, f in enumerate(fixed):
            colors[f] += 2 + i
        cell = refine(Structure(n, s.layers, tuple(colors)))

        def marked(w: int) -> tuple:
            c = list(colors)
            c[w] += 1
            return canonical_labeling(Structure(n, s.layers, tuple(c)))[0]

        ref = marked(v)
        orbit = sum(
            1 for w in range(n) if w not in fixed and cell[w] == cell[v] and (w == v or marked(w) == ref)
        )
        total *= orbit
        fixed.append(v)
    return total


def automorphism_count(g: Graph, pruned: bool = True) -> int:
    if not pruned:
        if g.n > BRUTE_FORCE_LIMIT:
            raise CapabilityError(f"brute-force automorphism count limited to n <= {BRUTE_FORCE_LIMIT}")
        edges = set(g.edges())
        return sum(
            1
            for p in permutations(range(g.n))
            if all(((p[u], p[v]) if p[u] < p[v] else (p[v], p[u])) in edges for u, v in edges)
        )
    return structure_automorphism_count(as_structure(g))
