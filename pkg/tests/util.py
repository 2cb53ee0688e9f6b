"""Shared builders and referee helpers for the test suite."""
from __future__ import annotations

import itertools

from cutabove import Graph, cut_value, oracle_max_cut, threshold_quarters


def path_graph(n):
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    assert n >= 3, n
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(range(n), itertools.combinations(range(n), 2))


def bowtie():
    """Two triangles sharing vertex 2."""
    return Graph(range(5), [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def pincer_graph():
    """Vertices 0,1 adjacent to each other and both of 2 and 3; pendant 4
    hangs off 3."""
    return Graph(range(5), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (3, 4)])


def oracle_decide(g, k):
    """Brute-force referee for the quarter-unit decision."""
    best, _ = oracle_max_cut(g)
    return threshold_quarters(g, k).met_by(best)


def mcwwv_objective(inst, assignment):
    """Cut edges plus the matching side weight of every vertex."""
    total = cut_value(inst.graph, assignment)
    for v in inst.graph.vertices:
        total += inst.w1[v] if assignment[v] == 1 else inst.w0[v]
    return total
