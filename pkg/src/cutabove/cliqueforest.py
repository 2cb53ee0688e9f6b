"""Exact Max-Cut-with-Weighted-Vertices solver on clique-forests.

The objective for an assignment f is the number of cut edges plus
sum of w0(x) over vertices with f(x) = 0 plus sum of w1(x) over vertices
with f(x) = 1.  On graphs whose blocks are all cliques this is solvable
in polynomial time by peeling leaf blocks: the whole block's contribution
is folded into the weight pair of its attachment vertex, and the optimal
split inside the block only needs |X| + 1 prefix candidates once the block
vertices are sorted by weight bias.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .graph import Assignment, Graph, blocks, is_clique_forest


@dataclass(frozen=True)
class WeightedInstance:
    graph: Graph
    w0: dict[int, int]
    w1: dict[int, int]


@dataclass(frozen=True)
class PlanStep:
    """One structural elimination: remove ``members`` of a leaf block, keep
    its attachment vertex ``anchor``."""

    members: tuple[int, ...]
    anchor: int


@dataclass(frozen=True)
class EliminationPlan:
    """Weight-independent elimination order for a clique-forest.

    ``steps`` are valid in sequence (each anchor survives its own step);
    ``roots`` holds the one surviving vertex per component, ascending by id.
    """

    steps: tuple[PlanStep, ...]
    roots: tuple[int, ...]


@dataclass(frozen=True)
class EliminationStep:
    """A plan step plus the numbers that were live when it ran.

    ``block_vertices`` is X sorted by eps descending (ties by ascending id),
    ``eps`` the matching w1 - w0 values, and each split is the pair
    (smallest optimal prefix length t, folded value) for the anchor colored
    1 and 0 respectively.
    """

    block_vertices: tuple[int, ...]
    anchor: int
    eps: tuple[int, ...]
    split_for_r1: tuple[int, int]
    split_for_r0: tuple[int, int]


def build_elimination_plan(g: Graph) -> EliminationPlan:
    """Peel leaf blocks until every component is a single vertex.

    Each round recomputes the block decomposition of what remains and takes
    the first leaf block in canonical order; its anchor is the block's cut
    vertex, or its smallest member when the component is one block.
    """
    steps: list[PlanStep] = []
    current = g
    while True:
        decomp = blocks(current)
        multi = sorted(i for i in decomp.leaf_indices if len(decomp.blocks[i]) > 1)
        if not multi:
            break
        idx = multi[0]
        block = decomp.blocks[idx]
        junction = [v for v in block if v in decomp.junction_vertices]
        anchor = junction[0] if junction else min(block)
        members = tuple(v for v in block if v != anchor)
        steps.append(PlanStep(members, anchor))
        current = current.remove_vertices(members)
    return EliminationPlan(tuple(steps), current.sorted_vertices)


def clique_block_extension(
    r_color: int,
    weights: Sequence[tuple[int, int]],
    block_size_with_r: int,
) -> tuple[int, int]:
    """Best value of one clique block X plus its cut edges toward the anchor.

    ``weights`` lists the (w0, w1) pairs of X in eps-descending order; the
    first t vertices take color 1 and the rest 0, so only |X| + 1 splits are
    candidates.  The anchor's own weight is not included.  Returns the value
    and the smallest optimal t.
    """
    if r_color not in (0, 1):
        raise ValueError("r_color must be 0 or 1")
    q = len(weights)
    if q == 0:
        raise ValueError("block extension needs at least one vertex besides the anchor")
    if block_size_with_r != q + 1:
        raise ValueError("block_size_with_r does not match the weight list")
    zero_total = sum(w for w, _ in weights)
    best_value = None
    best_t = 0
    prefix = 0
    for t in range(q + 1):
        if t:
            w0, w1 = weights[t - 1]
            prefix += w1 - w0
        if r_color == 1:
            cut = (t + 1) * (q - t)
        else:
            cut = t * (q - t + 1)
        value = cut + zero_total + prefix
        if best_value is None or value > best_value:
            best_value = value
            best_t = t
    return best_value, best_t


def run_elimination(
    g: Graph, w0: Mapping[int, int], w1: Mapping[int, int]
) -> tuple[int, list[EliminationStep], Assignment]:
    """Execute the peeling with concrete weights.

    Returns the optimum value, the recorded steps, and the chosen colors of
    the surviving roots (ties go to color 0).
    """
    cur0 = {v: int(w0[v]) for v in g.vertices}
    cur1 = {v: int(w1[v]) for v in g.vertices}
    plan = build_elimination_plan(g)
    steps: list[EliminationStep] = []
    for pstep in plan.steps:
        r = pstep.anchor
        xs = sorted(pstep.members, key=lambda x: (cur0[x] - cur1[x], x))
        eps = tuple(cur1[x] - cur0[x] for x in xs)
        pairs = [(cur0[x], cur1[x]) for x in xs]
        value1, t1 = clique_block_extension(1, pairs, len(xs) + 1)
        value0, t0 = clique_block_extension(0, pairs, len(xs) + 1)
        folded1 = value1 + cur1[r]
        folded0 = value0 + cur0[r]
        steps.append(EliminationStep(tuple(xs), r, eps, (t1, folded1), (t0, folded0)))
        cur1[r] = folded1
        cur0[r] = folded0
    total = 0
    root_colors: Assignment = {}
    for root in plan.roots:
        if cur1[root] > cur0[root]:
            root_colors[root] = 1
            total += cur1[root]
        else:
            root_colors[root] = 0
            total += cur0[root]
    return total, steps, root_colors


def reconstruct(steps: Sequence[EliminationStep], root_colors: Assignment) -> Assignment:
    """Replay elimination steps last-to-first to color every vertex.

    Each step reads its anchor's color and paints the stored block order by
    the matching split: the first t vertices get 1, the rest 0.
    """
    colors = dict(root_colors)
    for step in reversed(steps):
        if step.anchor not in colors:
            raise ValueError(f"no color for surviving vertex {step.anchor}")
        if colors[step.anchor] == 1:
            t = step.split_for_r1[0]
        else:
            t = step.split_for_r0[0]
        for i, x in enumerate(step.block_vertices):
            colors[x] = 1 if i < t else 0
    return colors


def solve_mcwwv(inst: WeightedInstance) -> tuple[int, Assignment]:
    """Exact optimum and an attaining assignment; the graph must be a
    clique-forest (components are handled independently)."""
    g = inst.graph
    if not is_clique_forest(g):
        raise ValueError("graph is not a clique-forest")
    for v in g.vertices:
        if v not in inst.w0 or v not in inst.w1:
            raise ValueError(f"vertex {v} is missing a weight")
    value, steps, root_colors = run_elimination(g, inst.w0, inst.w1)
    witness = reconstruct(steps, root_colors)
    return value, witness
