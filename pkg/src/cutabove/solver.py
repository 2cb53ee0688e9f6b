"""Exact decision solver for cuts above the Edwards-Erdos bound.

Given a connected graph and a quarter-unit slack k, either the one-way
reduction alone certifies a qualifying cut, or it yields a separator S
such that G - S is a clique-forest; the solver then tries all 2^|S|
colorings of S, scoring each with the weighted clique-forest solver, and
reports the exact maximum cut.  The coloring sweep is vectorized with
integer numpy arithmetic and the winning branch is re-solved in plain
Python as a cross-check on every call.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cliqueforest import WeightedInstance, build_elimination_plan, solve_mcwwv
from .errors import InvariantViolation
from .graph import (
    Assignment,
    Graph,
    QuarterTarget,
    cut_value,
    is_connected,
    threshold_quarters,
)
from .reduction import DecidedYes, find_S


@dataclass(frozen=True)
class ColoringBranch:
    """One separator coloring: the satisfied edge count p inside the
    separator and the weighted instance induced on the rest."""

    coloring: Assignment
    p: int
    instance: WeightedInstance


@dataclass(frozen=True)
class SolveOutcome:
    """``best_cut`` is the exact maximum cut when branching ran and None on
    the shortcut path; ``s_size`` is the size of the separator branched
    over (0 when no branching happened)."""

    answer: str
    threshold: QuarterTarget
    best_cut: int | None
    witness: Assignment
    branches_evaluated: int
    s_size: int


def build_branch(g: Graph, separator, coloring: Assignment) -> ColoringBranch:
    """Fix the separator's colors and fold them into vertex weights.

    An outside vertex x gets w0(x) = its separator neighbors colored 1 and
    w1(x) = those colored 0, so each weight counts the cut edges x would
    contribute toward the separator under that side choice.
    """
    sep = frozenset(separator)
    if frozenset(coloring) != sep:
        raise ValueError("coloring must assign exactly the separator vertices")
    p = 0
    for u, w in g.edges():
        if u in sep and w in sep and coloring[u] != coloring[w]:
            p += 1
    rest = g.remove_vertices(sep)
    w0 = {}
    w1 = {}
    for x in rest.vertices:
        ones = 0
        zeros = 0
        for u in g.neighbors(x):
            if u in sep:
                if coloring[u] == 1:
                    ones += 1
                else:
                    zeros += 1
        w0[x] = ones
        w1[x] = zeros
    return ColoringBranch(dict(coloring), p, WeightedInstance(rest, w0, w1))


def _sweep_colorings(g: Graph, sep: list[int]) -> tuple[int, int]:
    """Best (value, coloring bitmask) over all 2^|sep| separator colorings.

    Bit i of a mask is the color of the i-th smallest separator vertex.
    The weighted solve is replayed arithmetically for a whole chunk of
    masks at once: the structural elimination plan is fixed, and each step
    sorts its block's eps row-wise, prefix-sums, and folds the best split
    into the anchor columns.  Ties go to the smallest mask.
    """
    rest = g.remove_vertices(sep)
    out_vs = rest.sorted_vertices
    pos = {v: i for i, v in enumerate(out_vs)}
    spos = {v: i for i, v in enumerate(sep)}
    n_out = len(out_vs)

    nbr_mask = np.zeros(max(n_out, 1), dtype=np.int64)
    deg_s = np.zeros(max(n_out, 1), dtype=np.int64)
    for x in out_vs:
        bits = 0
        for u in g.neighbors(x):
            if u in spos:
                bits |= 1 << spos[u]
        nbr_mask[pos[x]] = bits
        deg_s[pos[x]] = bits.bit_count()
    internal_pairs = [
        (spos[u], spos[w]) for u, w in g.edges() if u in spos and w in spos
    ]

    plan = build_elimination_plan(rest)
    steps = [
        (
            np.array([pos[x] for x in st.members], dtype=np.intp),
            pos[st.anchor],
            len(st.members),
        )
        for st in plan.steps
    ]
    roots = np.array([pos[r] for r in plan.roots], dtype=np.intp)

    total = 1 << len(sep)
    chunk = max(1024, (1 << 21) // max(1, n_out))
    best_value = -1
    best_mask = 0
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        p_vec = np.zeros(len(masks), dtype=np.int64)
        for i, j in internal_pairs:
            p_vec += ((masks >> i) ^ (masks >> j)) & 1
        if n_out:
            w0 = np.bitwise_count(masks[:, None] & nbr_mask[None, :]).astype(np.int64)
            w1 = deg_s[None, :] - w0
            for cols, anchor_col, q in steps:
                eps = w1[:, cols] - w0[:, cols]
                eps = -np.sort(-eps, axis=1)
                prefix = np.zeros((eps.shape[0], q + 1), dtype=np.int64)
                np.cumsum(eps, axis=1, out=prefix[:, 1:])
                zero_total = w0[:, cols].sum(axis=1)
                t = np.arange(q + 1, dtype=np.int64)
                cut1 = (t + 1) * (q - t)
                cut0 = t * (q - t + 1)
                w1[:, anchor_col] += (prefix + cut1[None, :]).max(axis=1) + zero_total
                w0[:, anchor_col] += (prefix + cut0[None, :]).max(axis=1) + zero_total
            values = p_vec + np.maximum(w0[:, roots], w1[:, roots]).sum(axis=1)
        else:
            values = p_vec
        idx = int(np.argmax(values))
        if int(values[idx]) > best_value:
            best_value = int(values[idx])
            best_mask = int(masks[idx])
    return best_value, best_mask


def solve_aee(g: Graph, k: int) -> SolveOutcome:
    """Decide whether g has a cut of at least (2m + n - 1 + k) quarter-units.

    The reduction either settles the question outright (then ``best_cut``
    is absent) or branching over the separator computes the exact maximum
    cut and compares it against the target.
    """
    if not is_connected(g):
        raise ValueError("solver needs a connected graph")
    if k < 0:
        raise ValueError("k must be non-negative")
    target = threshold_quarters(g, k)
    found = find_S(g, k)
    if isinstance(found, DecidedYes):
        if not target.met_by(cut_value(g, found.witness)):
            raise InvariantViolation("extension witness misses the target")
        return SolveOutcome("yes", target, None, found.witness, 0, 0)
    sep = sorted(found.separator)
    best_value, best_mask = _sweep_colorings(g, sep)
    coloring = {v: (best_mask >> i) & 1 for i, v in enumerate(sep)}
    branch = build_branch(g, sep, coloring)
    value, sub_witness = solve_mcwwv(branch.instance)
    if branch.p + value != best_value:
        raise InvariantViolation("coloring sweep and direct branch solve disagree")
    witness = dict(coloring)
    witness.update(sub_witness)
    if cut_value(g, witness) != best_value:
        raise InvariantViolation("witness does not attain the computed cut")
    answer = "yes" if target.met_by(best_value) else "no"
    return SolveOutcome(answer, target, best_value, witness, 1 << len(sep), len(sep))


def solve_aee_whole(g: Graph, k_edges: int) -> SolveOutcome:
    """Same decision with the slack given in whole cut edges."""
    return solve_aee(g, 4 * k_edges)


@dataclass(frozen=True)
class ParamConversion:
    k_quarters: int
    always_yes: bool


def convert_maxcut_param(g: Graph, k_cut: int) -> ParamConversion:
    """Rewrite "is there a cut of size >= k_cut" as a quarter-unit slack.

    A cut of c edges satisfies 4c >= 2m + n - 1 + k_quarters exactly when
    c >= k_cut; a negative slack means every connected graph qualifies, so
    the answer is yes without solving.
    """
    if g.n == 0 or not is_connected(g):
        raise ValueError("conversion needs a non-empty connected graph")
    kq = 4 * k_cut - 2 * g.m - g.n + 1
    return ParamConversion(kq, kq < 0)
