"""DIMACS-style text format for graphs.

Accepted lines: ``c <comment>`` (ignored), exactly one ``p edge <n> <m>``
header, and exactly m edge lines ``e <u> <v>`` with 1 <= u < v <= n.  Vertices
are renumbered to dense 0-based ids at parse time; writers map them back to
1-based ids in sorted order.
"""
from __future__ import annotations

from .errors import GraphFormatError
from .graph import Graph


def parse_graph(text: str) -> Graph:
    n: int | None = None
    m: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer counts") from None
            if n < 0 or m < 0:
                raise GraphFormatError(f"line {lineno}: negative counts")
            continue
        if tag == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before the problem line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer endpoints") from None
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at {u}")
            if u > v:
                raise GraphFormatError(f"line {lineno}: endpoints must satisfy u < v")
            if not (1 <= u and v <= n):
                raise GraphFormatError(f"line {lineno}: endpoint out of range 1..{n}")
            if (u, v) in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge ({u}, {v})")
            seen.add((u, v))
            edges.append((u - 1, v - 1))
            continue
        raise GraphFormatError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge <n> <m>' line")
    if len(edges) != m:
        raise GraphFormatError(f"header announced {m} edges but {len(edges)} were given")
    return Graph(range(n), edges)


def format_graph(g: Graph, trailer: str | None = None) -> str:
    """Serialize a graph, renumbering vertices to 1..n in ascending-id order."""
    num = {v: i + 1 for i, v in enumerate(g.sorted_vertices)}
    lines = [f"p edge {g.n} {g.m}"]
    for u, v in sorted((min(num[a], num[b]), max(num[a], num[b])) for a, b in g.edges()):
        lines.append(f"e {u} {v}")
    if trailer is not None:
        lines.append(trailer)
    return "\n".join(lines) + "\n"
