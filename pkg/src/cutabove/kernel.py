"""Kernelization rules that shrink an instance around a fixed separator.

All rules here are two-way: the reduced instance has the same yes/no answer
as the original. They assume the graph minus the separator is a clique
forest, which is what the one-way reduction guarantees.
"""

from dataclasses import dataclass
from enum import Enum

from .graph import (
    Graph,
    blocks,
    components_excluding,
    is_clique_forest,
    is_complete_set,
    is_connected,
)
from .dimacs import format_graph
from .errors import InvariantViolation, StaleApplicationError
from .reduction import DecidedYes as ReductionDecidedYes, find_S
from .solver import solve_aee


class KernelRule(Enum):
    K1 = "K1"
    K2 = "K2"
    K3 = "K3"
    K4 = "K4"


class KernelReason(Enum):
    """Why kernelize settled the instance without returning a kernel."""

    LEAF_BLOCKS = "leaf_blocks"
    BLOCK_COUNT = "block_count"
    BLOCK_SIZE = "block_size"
    TOTAL_SIZE = "total_size"
    REDUCTION_YES = "reduction_yes"
    DIRECT_SOLVE = "direct_solve"


@dataclass(frozen=True)
class KernelRuleApplication:
    """One pending rule application, pinned to a specific separator.

    anchors holds the rule's named vertices: K1 has ("x",), K2 ("s", "x"),
    K3 ("x", "y", "z", "u", "v") with u and v fresh, K4 none. x_set is the
    clique component for K1/K2, the first block for K3, and the interior
    class for K4. y_set is only used by K3 (the second block).
    """

    rule: KernelRule
    separator: frozenset[int]
    removed: frozenset[int]
    anchors: tuple[tuple[str, int], ...]
    x_set: tuple[int, ...]
    k_delta: int
    y_set: tuple[int, ...] = ()
    added: tuple[int, ...] = ()
    block_index: int = -1

    def anchor(self, name: str) -> int:
        for key, vertex in self.anchors:
            if key == name:
                return vertex
        raise KeyError(name)


@dataclass(frozen=True)
class DecidedYes:
    reason: KernelReason


@dataclass(frozen=True)
class DecidedNo:
    reason: KernelReason


@dataclass(frozen=True)
class Kernel:
    graph: Graph
    k: int
    separator: frozenset[int]


KernelOutcome = DecidedYes | DecidedNo | Kernel


def _check_setting(g: Graph, separator: frozenset[int]) -> None:
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if not separator <= g.vertices:
        raise ValueError("separator must be a subset of the vertices")
    if not is_clique_forest(g.remove_vertices(separator)):
        raise ValueError("graph minus separator must be a clique forest")


def _outside_attached(g: Graph, block: frozenset[int]) -> set[int]:
    """Block vertices with at least one neighbor outside the block."""
    return {v for v in block if g.neighbors(v) - block}


def _find_k1(g: Graph, separator: frozenset[int]):
    for x in sorted(g.vertices - separator):
        for comp in components_excluding(g, separator | {x}):
            if len(comp) < 2:
                continue
            if not is_complete_set(g, comp | {x}):
                continue
            if any(g.neighbors(v) & separator for v in comp):
                continue
            return KernelRuleApplication(
                rule=KernelRule.K1,
                separator=separator,
                removed=comp,
                anchors=(("x", x),),
                x_set=tuple(sorted(comp)),
                k_delta=-1 if len(comp) % 2 == 1 else 0,
            )
    return None


def _find_k2(g: Graph, separator: frozenset[int]):
    for x in sorted(g.vertices - separator):
        for comp in components_excluding(g, separator | {x}):
            if len(comp) < 2:
                continue
            if not is_complete_set(g, comp | {x}):
                continue
            attached = set()
            for v in comp:
                attached |= g.neighbors(v) & separator
            if len(attached) != 1:
                continue
            s = attached.pop()
            if not is_complete_set(g, comp | {s}):
                continue
            keep = min(comp)
            return KernelRuleApplication(
                rule=KernelRule.K2,
                separator=separator,
                removed=comp - {keep},
                anchors=(("s", s), ("x", x)),
                x_set=tuple(sorted(comp)),
                k_delta=-1 if len(comp) % 2 == 0 else 0,
            )
    return None


def _k3_pick_end(g: Graph, block: frozenset[int], z: int):
    """Return the block's attachment vertex besides z, or None if ambiguous.

    Eligible means adjacent to something outside the block. With no such
    vertex any member works and the smallest id is used; with two or more
    the rule cannot apply to this block.
    """
    outside = _outside_attached(g, block) - {z}
    if len(outside) > 1:
        return None
    if outside:
        return outside.pop()
    return min(block - {z})


def _find_k3(g: Graph, separator: frozenset[int], fresh_base: int):
    decomp = blocks(g.remove_vertices(separator))
    odd = [
        i
        for i, b in enumerate(decomp.blocks)
        if len(b) > 1 and len(b) % 2 == 1
    ]
    for pos_i, i in enumerate(odd):
        for j in odd[pos_i + 1 :]:
            shared = decomp.blocks[i] & decomp.blocks[j]
            if len(shared) != 1:
                continue
            z = next(iter(shared))
            x = _k3_pick_end(g, decomp.blocks[i], z)
            if x is None:
                continue
            y = _k3_pick_end(g, decomp.blocks[j], z)
            if y is None:
                continue
            u = fresh_base + 1
            v = fresh_base + 2
            union = decomp.blocks[i] | decomp.blocks[j]
            return KernelRuleApplication(
                rule=KernelRule.K3,
                separator=separator,
                removed=union - {x, y, z},
                anchors=(("x", x), ("y", y), ("z", z), ("u", u), ("v", v)),
                x_set=tuple(sorted(decomp.blocks[i])),
                y_set=tuple(sorted(decomp.blocks[j])),
                k_delta=0,
                added=(u, v),
            )
    return None


def _find_k4(g: Graph, separator: frozenset[int]):
    decomp = blocks(g.remove_vertices(separator))
    junction_count = len(decomp.junction_vertices)
    for i, interior in enumerate(decomp.interiors):
        if not interior:
            continue
        classes: dict[frozenset[int], list[int]] = {}
        for v in sorted(interior):
            classes.setdefault(frozenset(g.neighbors(v) & separator), []).append(v)
        for members in classes.values():
            bound = len(interior) + junction_count + len(separator)
            if 2 * len(members) <= bound:
                continue
            if len(members) < 2:
                continue
            return KernelRuleApplication(
                rule=KernelRule.K4,
                separator=separator,
                removed=frozenset(members[:2]),
                anchors=(),
                x_set=tuple(members),
                k_delta=0,
                block_index=i,
            )
    return None


def find_kernel_rule(
    g: Graph, separator: frozenset[int], fresh_base: int | None = None
) -> KernelRuleApplication | None:
    """First applicable rule in order K1, K2, K3, K4, or None.

    Candidates are scanned deterministically: K1 and K2 by attachment
    vertex ascending then component by smallest member, K3 by block pairs
    in canonical order, K4 by blocks in canonical order. fresh_base sets
    the highest vertex id already handed out, so K3's new vertices never
    collide with removed ones; it defaults to the current maximum.
    """
    separator = frozenset(separator)
    _check_setting(g, separator)
    if fresh_base is None:
        fresh_base = max(g.vertices)
    fresh_base = max(fresh_base, max(g.vertices))
    found = _find_k1(g, separator)
    if found is not None:
        return found
    found = _find_k2(g, separator)
    if found is not None:
        return found
    found = _find_k3(g, separator, fresh_base)
    if found is not None:
        return found
    return _find_k4(g, separator)


def _check_kernel_applicable(g: Graph, app: KernelRuleApplication) -> None:
    def fail(detail: str):
        raise StaleApplicationError(f"{app.rule.value} no longer applies: {detail}")

    separator = app.separator
    if not is_connected(g):
        fail("graph is not connected")
    if not separator <= g.vertices:
        fail("separator vertices are missing")
    if not app.removed <= g.vertices:
        fail("removed vertices are missing")
    if app.removed & separator:
        fail("removed vertices overlap the separator")

    if app.rule in (KernelRule.K1, KernelRule.K2):
        x = app.anchor("x")
        comp = frozenset(app.x_set)
        if x not in g.vertices or x in separator:
            fail("attachment vertex is gone")
        if comp not in components_excluding(g, separator | {x}):
            fail("set is not a component without the attachment vertex")
        if len(comp) < 2:
            fail("component is too small")
        if not is_complete_set(g, comp | {x}):
            fail("component plus attachment vertex is not a clique")
        if app.rule == KernelRule.K1:
            if any(g.neighbors(v) & separator for v in comp):
                fail("component touches the separator")
            if app.removed != comp:
                fail("removed set does not match the component")
            if app.k_delta != (-1 if len(comp) % 2 == 1 else 0):
                fail("parameter change does not match the parity")
        else:
            s = app.anchor("s")
            attached = set()
            for v in comp:
                attached |= g.neighbors(v) & separator
            if attached != {s}:
                fail("component is not attached to exactly that separator vertex")
            if not is_complete_set(g, comp | {s}):
                fail("component plus separator vertex is not a clique")
            if app.removed != comp - {min(comp)}:
                fail("removed set must keep the smallest member")
            if app.k_delta != (-1 if len(comp) % 2 == 0 else 0):
                fail("parameter change does not match the parity")
        return

    if app.rule == KernelRule.K3:
        x = app.anchor("x")
        y = app.anchor("y")
        z = app.anchor("z")
        block_x = frozenset(app.x_set)
        block_y = frozenset(app.y_set)
        decomp = blocks(g.remove_vertices(separator))
        if block_x not in decomp.blocks or block_y not in decomp.blocks:
            fail("blocks are gone")
        if len(block_x) % 2 == 0 or len(block_y) % 2 == 0:
            fail("blocks are not both odd")
        if block_x & block_y != {z}:
            fail("blocks do not share exactly the hinge vertex")
        if x not in block_x or y not in block_y or x == z or y == z:
            fail("end vertices are not placed in their blocks")
        if not _outside_attached(g, block_x) <= {x, z}:
            fail("first block has extra outside attachments")
        if not _outside_attached(g, block_y) <= {y, z}:
            fail("second block has extra outside attachments")
        for fresh in app.added:
            if fresh in g.vertices:
                fail("replacement vertex id is already in use")
        if app.removed != (block_x | block_y) - {x, y, z}:
            fail("removed set does not match the two blocks")
        if app.k_delta != 0:
            fail("parameter must not change")
        return

    if app.rule == KernelRule.K4:
        members = app.x_set
        decomp = blocks(g.remove_vertices(separator))
        if not 0 <= app.block_index < decomp.n_blocks:
            fail("block index is out of range")
        interior = decomp.interiors[app.block_index]
        if not set(members) <= interior:
            fail("class is not interior to the block")
        hoods = {frozenset(g.neighbors(v) & separator) for v in members}
        if len(hoods) != 1:
            fail("class members see different separator vertices")
        bound = len(interior) + len(decomp.junction_vertices) + len(separator)
        if 2 * len(members) <= bound:
            fail("class is not large enough")
        if not app.removed <= set(members) or len(app.removed) != 2:
            fail("removed pair must come from the class")
        if app.k_delta != 0:
            fail("parameter must not change")
        return

    fail("unknown rule")


def apply_kernel_rule(
    g: Graph, k: int, app: KernelRuleApplication
) -> tuple[Graph, int]:
    """Re-validate app against g and perform it, returning the new instance."""
    _check_kernel_applicable(g, app)
    if app.rule != KernelRule.K3:
        return g.remove_vertices(app.removed), k + app.k_delta
    keep = g.vertices - app.removed
    edges = {e for e in g.edges() if e[0] in keep and e[1] in keep}
    u, v = app.added
    five = sorted((app.anchor("x"), app.anchor("y"), app.anchor("z"), u, v))
    for i in range(5):
        for j in range(i + 1, 5):
            edges.add((five[i], five[j]))
    return Graph(keep | {u, v}, edges), k + app.k_delta


def kernel_size_bound(k: int) -> int:
    """Largest vertex count a kernel for parameter k may have."""
    return (
        29160 * k**5
        + 6480 * k**4
        - 8532 * k**3
        - 492 * k**2
        + 731 * k
        - 80
    )


def threshold_decide(
    g: Graph, separator: frozenset[int], k: int
) -> KernelReason | None:
    """Reason the reduced instance is a guaranteed yes, or None.

    Requires at least two separator vertices and k at least 3; the size
    guarantees behind these checks do not hold below that.
    """
    separator = frozenset(separator)
    _check_setting(g, separator)
    if len(separator) < 2:
        raise ValueError("threshold checks need at least two separator vertices")
    if k < 3:
        raise ValueError("threshold checks need k at least 3")
    decomp = blocks(g.remove_vertices(separator))
    s = len(separator)
    leaves = len(decomp.leaf_indices)
    if leaves >= 4 * s**2 + 2 * s + 2 * k - 2:
        return KernelReason.LEAF_BLOCKS
    if decomp.n_blocks >= 4 * s**2 + 2 * s + 4 * leaves + 2 * k - 7:
        return KernelReason.BLOCK_COUNT
    junctions = len(decomp.junction_vertices)
    interior_bound = (
        2 * s**3
        + 5 * s**2
        + (leaves + k - 3) * s
        - 2 * leaves
        - junctions
        - 2 * k
    )
    for interior in decomp.interiors:
        if len(interior) >= interior_bound:
            return KernelReason.BLOCK_SIZE
    if g.n > kernel_size_bound(k):
        return KernelReason.TOTAL_SIZE
    return None


def _solved_directly(g: Graph, k: int) -> KernelOutcome:
    if k < 0:
        return DecidedYes(KernelReason.DIRECT_SOLVE)
    outcome = solve_aee(g, k)
    if outcome.answer == "yes":
        return DecidedYes(KernelReason.DIRECT_SOLVE)
    return DecidedNo(KernelReason.DIRECT_SOLVE)


def kernelize(g: Graph, k: int) -> KernelOutcome:
    """Shrink (g, k) to an equivalent instance of bounded size, or decide it.

    Runs the one-way reduction to find a separator, applies the kernel
    rules to exhaustion, then checks the size thresholds that force a yes
    answer. Degenerate cases (k below 3, a tiny separator, or k dropping
    below 3 during the rules) are solved outright instead of kernelized.
    """
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if k < 3:
        return _solved_directly(g, k)
    found = find_S(g, k)
    if isinstance(found, ReductionDecidedYes):
        return DecidedYes(KernelReason.REDUCTION_YES)
    separator = found.separator
    if len(separator) <= 1:
        return _solved_directly(g, k)
    current = g
    current_k = k
    fresh_base = max(g.vertices)
    while True:
        app = find_kernel_rule(current, separator, fresh_base)
        if app is None:
            break
        current, current_k = apply_kernel_rule(current, current_k, app)
        if app.added:
            fresh_base = max(fresh_base, max(app.added))
    if current_k < 3:
        return _solved_directly(current, current_k)
    reason = threshold_decide(current, separator, current_k)
    if reason is not None:
        return DecidedYes(reason)
    if current.n > kernel_size_bound(current_k):
        raise InvariantViolation("kernel exceeds its size bound")
    return Kernel(current, current_k, separator)


def format_kernel(kernel: Kernel) -> str:
    """Serialize a kernel with its parameter and separator in a trailer line.

    Vertices are renumbered to 1..n like plain graph output; the trailer
    lists the separator under the new numbering, so parsing the file as a
    graph and reading the trailer reproduces the instance.
    """
    num = {v: i + 1 for i, v in enumerate(kernel.graph.sorted_vertices)}
    ids = ",".join(str(num[v]) for v in sorted(kernel.separator))
    trailer = f"c kernel k={kernel.k} s={ids}"
    return format_graph(kernel.graph, trailer=trailer)
