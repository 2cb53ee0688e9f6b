"""Immutable simple graphs with block decompositions and cut arithmetic.

All cut targets are kept in integer quarter-units (four times the number of
edges), so no rational arithmetic appears anywhere: a cut of c edges meets a
target of q quarter-units iff 4*c >= q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

# Vertex colors: 0 = red, 1 = blue.
Assignment = dict[int, int]


class Graph:
    """An immutable undirected simple graph over non-negative integer ids.

    Instances are value-like: all derived operations return new graphs and
    never mutate shared state, so graphs can be passed between threads freely.
    """

    __slots__ = ("_adj", "_sorted", "_vset", "_m", "_edges")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = int(v)
            if v < 0:
                raise ValueError(f"vertex ids must be non-negative, got {v}")
            adj.setdefault(v, set())
        m = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u}, {v}) uses an undeclared vertex")
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self._adj = {v: frozenset(nbrs) for v, nbrs in adj.items()}
        self._finish(m)

    def _finish(self, m: int) -> None:
        self._sorted = tuple(sorted(self._adj))
        self._vset = frozenset(self._adj)
        self._m = m
        self._edges = None

    @classmethod
    def _from_adj(cls, adj: dict[int, frozenset[int]], m: int) -> "Graph":
        g = object.__new__(cls)
        g._adj = adj
        g._finish(m)
        return g

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(vertices, edges)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> frozenset[int]:
        return self._vset

    @property
    def sorted_vertices(self) -> tuple[int, ...]:
        return self._sorted

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def sorted_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self._adj[v]))

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, frozenset())

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) pairs with u < v, sorted lexicographically."""
        if self._edges is None:
            es = []
            for u in self._sorted:
                for w in self._adj[u]:
                    if u < w:
                        es.append((u, w))
            es.sort()
            self._edges = tuple(es)
        return self._edges

    def remove_vertices(self, removed: Iterable[int]) -> "Graph":
        """A new graph without the given vertices and their incident edges."""
        rm = frozenset(removed)
        extra = rm - self._vset
        if extra:
            raise ValueError(f"cannot remove absent vertices {sorted(extra)}")
        gone = 0
        inside = 0
        for r in rm:
            deg = len(self._adj[r])
            gone += deg
            inside += len(self._adj[r] & rm)
        gone -= inside // 2
        adj = {v: nbrs - rm for v, nbrs in self._adj.items() if v not in rm}
        return Graph._from_adj(adj, self._m - gone)

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = frozenset(keep)
        extra = keep - self._vset
        if extra:
            raise ValueError(f"unknown vertices {sorted(extra)}")
        return self.remove_vertices(self._vset - keep)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _component_from(g: Graph, start: int, removed: frozenset[int]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return seen


def connected_excluding(g: Graph, removed: Iterable[int] = ()) -> bool:
    """Whether g minus the given vertices is connected (empty counts as connected)."""
    rm = frozenset(removed)
    start = None
    remaining = 0
    for v in g.sorted_vertices:
        if v not in rm:
            remaining += 1
            if start is None:
                start = v
    if start is None:
        return True
    return len(_component_from(g, start, rm)) == remaining


def is_connected(g: Graph) -> bool:
    return connected_excluding(g)


def components_excluding(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of g minus the given vertices, by ascending smallest id."""
    rm = frozenset(removed)
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for v in g.sorted_vertices:
        if v in rm or v in seen:
            continue
        comp = _component_from(g, v, rm)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (biconnected components) of a graph plus the derived statistics.

    Isolated vertices form singleton blocks and bridges form two-vertex blocks,
    so the blocks cover every vertex and partition the edges.  Indices into
    ``blocks`` are used by ``leaf_indices`` (blocks sharing at most one vertex
    with the rest) and ``branching_indices`` (blocks containing at least three
    junction vertices).  ``interiors[i]`` is blocks[i] minus the junctions.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    junction_vertices: frozenset[int]
    interiors: tuple[frozenset[int], ...]
    leaf_indices: frozenset[int]
    branching_indices: frozenset[int]

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)


def blocks(g: Graph) -> BlockDecomposition:
    """Block decomposition via an iterative depth-first search with an edge stack."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    edge_stack: list[tuple[int, int]] = []
    raw_blocks: list[frozenset[int]] = []

    for root in g.sorted_vertices:
        if root in disc:
            continue
        if g.degree(root) == 0:
            raw_blocks.append(frozenset((root,)))
            continue
        disc[root] = low[root] = counter
        counter += 1
        # Frames: (vertex, parent, iterator over sorted neighbors).
        frames: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(g.sorted_neighbors(root)))]
        while frames:
            v, parent, it = frames[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    frames.append((w, v, iter(g.sorted_neighbors(w))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            frames.pop()
            if frames:
                pv = frames[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
                if low[v] >= disc[pv]:
                    # Everything pushed since (pv, v) forms one block.
                    members: set[int] = set()
                    while True:
                        a, b = edge_stack.pop()
                        members.add(a)
                        members.add(b)
                        if (a, b) == (pv, v):
                            break
                    raw_blocks.append(frozenset(members))

    order = sorted(range(len(raw_blocks)), key=lambda i: tuple(sorted(raw_blocks[i])))
    blist = tuple(raw_blocks[i] for i in order)

    membership: dict[int, int] = {}
    for b in blist:
        for v in b:
            membership[v] = membership.get(v, 0) + 1
    junctions = frozenset(v for v, c in membership.items() if c >= 2)
    interiors = tuple(b - junctions for b in blist)
    leaf = frozenset(i for i, b in enumerate(blist) if len(b & junctions) <= 1)
    branching = frozenset(i for i, b in enumerate(blist) if len(b & junctions) >= 3)
    return BlockDecomposition(
        blocks=blist,
        cut_vertices=junctions,
        junction_vertices=junctions,
        interiors=interiors,
        leaf_indices=leaf,
        branching_indices=branching,
    )


def is_complete_set(g: Graph, members: Iterable[int]) -> bool:
    """Whether the given vertices are pairwise adjacent in g."""
    members = frozenset(members)
    need = len(members) - 1
    return all(len(g.neighbors(v) & members) == need for v in members)


def is_clique_forest(g: Graph) -> bool:
    """Whether every block of g induces a complete subgraph."""
    return all(is_complete_set(g, b) for b in blocks(g).blocks)


def cut_value(g: Graph, assignment: Mapping[int, int]) -> int:
    """Number of edges whose endpoints receive different colors."""
    missing = [v for v in g.sorted_vertices if v not in assignment]
    if missing:
        raise ValueError(f"assignment is missing vertices {missing}")
    total = 0
    for u in g.sorted_vertices:
        cu = assignment[u]
        for w in g.neighbors(u):
            if u < w and cu != assignment[w]:
                total += 1
    return total


@dataclass(frozen=True)
class QuarterTarget:
    """A cut-size target expressed in quarter-units (4x the edge count)."""

    quarters: int

    def met_by(self, cut_edges: int) -> bool:
        return 4 * cut_edges >= self.quarters


def threshold_quarters(g: Graph, k: int) -> QuarterTarget:
    """Target 2m + n - 1 + k for "cut >= m/2 + (n-1)/4 + k/4" on a connected graph."""
    if g.n == 0 or not is_connected(g):
        raise ValueError("threshold is defined for non-empty connected graphs only")
    return QuarterTarget(2 * g.m + g.n - 1 + int(k))


def edwards_erdos_quarters(g: Graph) -> int:
    """The guaranteed-cut bound m/2 + (n-1)/4 of a connected graph, in quarter-units."""
    if g.n == 0 or not is_connected(g):
        raise ValueError("the bound is defined for non-empty connected graphs only")
    return 2 * g.m + g.n - 1


def bollobas_scott_bound(m: int) -> tuple[int, int]:
    """The m-only guarantee m/2 + (sqrt(8m+1) - 1)/8 in eighth-units.

    Returns (numerator, 8); the numerator is exact when 8m+1 is a perfect
    square and floored otherwise.
    """
    if m < 0:
        raise ValueError("edge count must be non-negative")
    return 4 * m + math.isqrt(8 * m + 1) - 1, 8
