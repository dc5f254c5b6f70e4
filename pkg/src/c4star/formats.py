"""graph6, edge-list and DOT exchange formats."""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .errors import Graph6ParseError, DomainError
from .graph import CAPACITY, Edge, Graph


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))


def encode_graph6(g: Graph) -> str:
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode_graph6(s: str) -> Graph:
    s = s.strip()
    if not s:
        raise Graph6ParseError("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ParseError(f"byte {ch!r} outside the graph6 range 63..126", i)
    if s[0] == "~":
        if len(s) < 4:
            raise Graph6ParseError("truncated long vertex count", len(s))
        if s[1] == "~":
            raise Graph6ParseError("vertex counts above 258047 are not supported", 1)
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    if n > CAPACITY:
        raise Graph6ParseError(f"vertex count {n} exceeds capacity {CAPACITY}", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != need:
        raise Graph6ParseError(f"expected {need} data bytes for n={n}, found {len(body)}", pos + min(len(body), need))
    rows = [0] * n
    i, j = 0, 1
    k = 0
    for off, ch in enumerate(body):
        val = ord(ch) - 63
        for shift in range(5, -1, -1):
            bit = val >> shift & 1
            if k >= nbits:
                if bit:
                    raise Graph6ParseError("non-zero padding bits", pos + off)
                continue
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def read_graph6_lines(text: str) -> list[Graph]:
    return [decode_graph6(line) for line in text.splitlines() if line.strip()]


def parse_edge_list(text: str, n: Optional[int] = None) -> Graph:
    """One ``u v`` pair per line; ``#`` starts a comment.

    Without an explicit ``n`` the vertex count is one more than the largest index.
    """
    edges: list[Edge] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def to_dot(
    g: Graph,
    colors: Optional[Mapping[Edge, str]] = None,
    labels: Optional[Mapping[int, str]] = None,
    name: str = "G",
) -> str:
    """Undirected DOT; edges get ``color=red|blue`` when a colouring is given."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(g.n):
        label = labels.get(v) if labels else None
        lines.append(f'  {v} [label="{label}"];' if label else f"  {v};")
    for u, v in g.edges():
        if colors is not None:
            lines.append(f"  {u} -- {v} [color={colors[u, v]}];")
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


