"""Brute-force reference solvers, independent of the real algorithms.

Both oracles enumerate assignments directly over bitmasks; they exist to
cross-check the clever code paths and are deliberately kept separate from
them.
"""
from __future__ import annotations

from .cliqueforest import WeightedInstance
from .graph import Assignment, Graph

MAX_CUT_CAP = 26
MCWWV_CAP = 20


def oracle_max_cut(g: Graph) -> tuple[int, Assignment]:
    """Exact maximum cut by enumeration, n <= 26.

    The smallest vertex is pinned to color 0; among maximizers the witness
    with the smallest bitmask over the remaining vertices (ascending-id bit
    order) is returned.
    """
    if g.n > MAX_CUT_CAP:
        raise ValueError(f"oracle limited to {MAX_CUT_CAP} vertices, got {g.n}")
    vs = g.sorted_vertices
    if g.n == 0:
        return 0, {}
    pos = {v: i for i, v in enumerate(vs)}
    adj_mask = [0] * g.n
    for u, w in g.edges():
        adj_mask[pos[u]] |= 1 << pos[w]
        adj_mask[pos[w]] |= 1 << pos[u]
    full = (1 << g.n) - 1
    best = -1
    best_mask = 0
    for rest in range(1 << (g.n - 1)):
        mask = rest << 1
        cut = 0
        bits = mask
        while bits:
            low = bits & -bits
            p = low.bit_length() - 1
            cut += (adj_mask[p] & ~mask & full).bit_count()
            bits ^= low
        if cut > best:
            best = cut
            best_mask = mask
    witness = {v: (best_mask >> pos[v]) & 1 for v in vs}
    return best, witness


def oracle_mcwwv(inst: WeightedInstance) -> int:
    """Exact optimum of cut-plus-vertex-weights by full enumeration, n <= 20."""
    g, w0, w1 = inst.graph, inst.w0, inst.w1
    if g.n > MCWWV_CAP:
        raise ValueError(f"oracle limited to {MCWWV_CAP} vertices, got {g.n}")
    vs = g.sorted_vertices
    pos = {v: i for i, v in enumerate(vs)}
    adj_mask = [0] * g.n
    for u, w in g.edges():
        adj_mask[pos[u]] |= 1 << pos[w]
        adj_mask[pos[w]] |= 1 << pos[u]
    zeros = [int(w0[v]) for v in vs]
    ones = [int(w1[v]) for v in vs]
    full = (1 << g.n) - 1
    base = sum(zeros)
    diff = [ones[i] - zeros[i] for i in range(g.n)]
    best = 0 if g.n == 0 else -1
    for mask in range(1 << g.n):
        value = base
        cut = 0
        bits = mask
        while bits:
            low = bits & -bits
            p = low.bit_length() - 1
            value += diff[p]
            cut += (adj_mask[p] & ~mask & full).bit_count()
            bits ^= low
        value += cut
        if value > best:
            best = value
    return best
