"""One-way reduction rules that shrink a connected graph to a single vertex.

Four rules are tried in a fixed order with ascending-id candidate
enumeration.  Each rule removes a vertex set whose contribution to a best
cut is predictable, possibly lowering the parameter k and marking up to
three vertices per unit of decrease.  The union of marked vertices is a
separator whose removal from the original graph leaves a clique-forest.
The recorded trace can be replayed forward, or backward to extend an
assignment of the single surviving vertex into a full cut that meets the
quarter-unit target whenever the final k is non-positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvariantViolation, StaleApplicationError
from .graph import (
    Assignment,
    Graph,
    blocks,
    components_excluding,
    connected_excluding,
    is_complete_set,
    is_connected,
)


class Rule(Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"


@dataclass(frozen=True)
class RuleApplication:
    """One detected rule instance, with everything needed to apply or undo it.

    ``anchors`` holds the rule's named vertices in rule order (R1/R2: v;
    R3: a, b, c; R4: x, y) and ``x_set`` the clique part X in ascending id
    order (empty for R3).  ``removed_edge_count`` and
    ``removed_vertex_count`` are taken at detection time.
    """

    rule: Rule
    removed: frozenset[int]
    marked: frozenset[int]
    anchors: tuple[tuple[str, int], ...]
    x_set: tuple[int, ...]
    k_delta: int
    removed_edge_count: int
    removed_vertex_count: int

    def anchor(self, name: str) -> int:
        for key, value in self.anchors:
            if key == name:
                return value
        raise KeyError(name)


@dataclass(frozen=True)
class ReductionTrace:
    initial_graph: Graph
    initial_k: int
    steps: tuple[RuleApplication, ...]
    final_graph: Graph
    final_k: int
    marked: frozenset[int]


@dataclass(frozen=True)
class DecidedYes:
    witness: Assignment


@dataclass(frozen=True)
class SeparatorFound:
    separator: frozenset[int]
    trace: ReductionTrace


FindSResult = DecidedYes | SeparatorFound


def _incident_edge_count(g: Graph, removed: frozenset[int]) -> int:
    inside = 0
    crossing = 0
    for v in removed:
        for w in g.neighbors(v):
            if w in removed:
                inside += 1
            else:
                crossing += 1
    return inside // 2 + crossing


def _find_r1(g: Graph) -> tuple[int, tuple[int, ...]] | None:
    """Smallest (v, X) with X a component of g - v and X + v a clique.

    Such an X + v is always a whole block: either g itself is a clique, or
    X + v is a clique leaf block hanging at the cut vertex v, so only blocks
    need scanning.
    """
    decomp = blocks(g)
    if decomp.n_blocks == 1:
        members = decomp.blocks[0]
        if len(members) >= 2 and is_complete_set(g, members):
            v = min(members)
            return v, tuple(sorted(members - {v}))
        return None
    best: tuple[tuple[int, int], int, tuple[int, ...]] | None = None
    for i in decomp.leaf_indices:
        b = decomp.blocks[i]
        if not is_complete_set(g, b):
            continue
        v = min(b & decomp.cut_vertices)
        x = tuple(sorted(b - {v}))
        key = (v, x[0])
        if best is None or key < best[0]:
            best = (key, v, x)
    if best is None:
        return None
    return best[1], best[2]


def _find_r2(g: Graph) -> tuple[int, tuple[int, ...]] | None:
    """Smallest (v, X) with X a component of g - v and X itself a clique.

    Only meaningful after no rule-1 candidate exists; then X + v spans a
    leaf block (or all of a 2-connected g), which again limits the scan to
    blocks.
    """
    decomp = blocks(g)
    if decomp.n_blocks == 1:
        if g.n < 2:
            return None
        rest_pairs = math.comb(g.n - 1, 2)
        for v in g.sorted_vertices:
            if g.m - g.degree(v) == rest_pairs:
                return v, tuple(w for w in g.sorted_vertices if w != v)
        return None
    best: tuple[tuple[int, int], int, tuple[int, ...]] | None = None
    for i in decomp.leaf_indices:
        b = decomp.blocks[i]
        v = min(b & decomp.cut_vertices)
        x = b - {v}
        if not is_complete_set(g, x):
            continue
        xt = tuple(sorted(x))
        key = (v, xt[0])
        if best is None or key < best[0]:
            best = (key, v, xt)
    if best is None:
        return None
    return best[1], best[2]


def _find_r3(g: Graph) -> tuple[int, int, int] | None:
    """First induced two-edge path (a, b, c) whose removal keeps g connected,
    by ascending middle vertex b, then the pair (a, c) lexicographically."""
    for b in g.sorted_vertices:
        nbrs = g.sorted_neighbors(b)
        for i, a in enumerate(nbrs):
            a_nbrs = g.neighbors(a)
            for c in nbrs[i + 1:]:
                if c in a_nbrs:
                    continue
                if connected_excluding(g, (a, b, c)):
                    return a, b, c
    return None


def _find_r4(g: Graph) -> tuple[int, int, tuple[int, ...]] | None:
    """First nonadjacent pair (x, y) splitting g into exactly two components,
    one of which forms a clique with each of x and y."""
    vs = g.sorted_vertices
    for i, x in enumerate(vs):
        x_nbrs = g.neighbors(x)
        for y in vs[i + 1:]:
            if y in x_nbrs:
                continue
            comps = components_excluding(g, (x, y))
            if len(comps) != 2:
                continue
            for comp in comps:
                if is_complete_set(g, comp | {x}) and is_complete_set(g, comp | {y}):
                    return x, y, tuple(sorted(comp))
    return None


def _make_application(
    g: Graph,
    rule: Rule,
    removed: frozenset[int],
    marked: frozenset[int],
    anchors: tuple[tuple[str, int], ...],
    x_set: tuple[int, ...],
    k_delta: int,
) -> RuleApplication:
    return RuleApplication(
        rule=rule,
        removed=removed,
        marked=marked,
        anchors=anchors,
        x_set=x_set,
        k_delta=k_delta,
        removed_edge_count=_incident_edge_count(g, removed),
        removed_vertex_count=len(removed),
    )


def find_next_rule(g: Graph) -> RuleApplication | None:
    """The first applicable rule under the fixed deterministic order, or
    None when g has no edges left."""
    if not is_connected(g):
        raise ValueError("reduction rules need a connected graph")
    if g.m == 0:
        return None
    r1 = _find_r1(g)
    if r1 is not None:
        v, x = r1
        delta = -1 if len(x) % 2 == 1 else 0
        return _make_application(g, Rule.R1, frozenset(x), frozenset(), (("v", v),), x, delta)
    r2 = _find_r2(g)
    if r2 is not None:
        v, x = r2
        return _make_application(g, Rule.R2, frozenset(x), frozenset((v,)), (("v", v),), x, -2)
    r3 = _find_r3(g)
    if r3 is not None:
        a, b, c = r3
        trio = frozenset((a, b, c))
        return _make_application(
            g, Rule.R3, trio, trio, (("a", a), ("b", b), ("c", c)), (), -1
        )
    r4 = _find_r4(g)
    if r4 is not None:
        x, y, comp = r4
        return _make_application(
            g,
            Rule.R4,
            frozenset(comp) | {x, y},
            frozenset((x, y)),
            (("x", x), ("y", y)),
            comp,
            -1,
        )
    return None


def _check_applicable(g: Graph, app: RuleApplication) -> None:
    def fail(reason: str) -> StaleApplicationError:
        return StaleApplicationError(f"{app.rule.value} not applicable: {reason}")

    if not is_connected(g):
        raise fail("graph is not connected")
    if not app.removed <= g.vertices:
        raise fail("removed vertices are not all present")
    for name, v in app.anchors:
        if v not in g:
            raise fail(f"anchor {name}={v} is not present")
    if app.removed_vertex_count != len(app.removed):
        raise fail("vertex count does not match the removed set")
    if app.removed_edge_count != _incident_edge_count(g, app.removed):
        raise fail("edge count does not match the current graph")
    x = frozenset(app.x_set)
    if app.rule is Rule.R1 or app.rule is Rule.R2:
        v = app.anchor("v")
        if v in x or app.removed != x:
            raise fail("removed set must be exactly X")
        if x not in components_excluding(g, (v,)):
            raise fail("X is not a component of the graph minus v")
        if app.rule is Rule.R1:
            if not is_complete_set(g, x | {v}):
                raise fail("X plus v is not a clique")
            want = -1 if len(x) % 2 == 1 else 0
            if app.marked or app.k_delta != want:
                raise fail("marking or k change is wrong for this rule")
        else:
            if _find_r1(g) is not None:
                raise fail("a prior rule still applies")
            if not is_complete_set(g, x):
                raise fail("X is not a clique")
            if app.marked != frozenset((v,)) or app.k_delta != -2:
                raise fail("marking or k change is wrong for this rule")
    elif app.rule is Rule.R3:
        a, b, c = app.anchor("a"), app.anchor("b"), app.anchor("c")
        trio = frozenset((a, b, c))
        if len(trio) != 3 or app.removed != trio or app.marked != trio:
            raise fail("removed and marked sets must be exactly {a, b, c}")
        if not (g.has_edge(a, b) and g.has_edge(b, c)) or g.has_edge(a, c):
            raise fail("a-b-c is not an induced two-edge path")
        if not connected_excluding(g, trio):
            raise fail("removal would disconnect the graph")
        if app.k_delta != -1:
            raise fail("k change is wrong for this rule")
    else:
        px, py = app.anchor("x"), app.anchor("y")
        if px == py or g.has_edge(px, py):
            raise fail("x and y must be distinct nonadjacent vertices")
        comps = components_excluding(g, (px, py))
        if len(comps) != 2 or x not in comps:
            raise fail("graph minus {x, y} must split into X and one other component")
        if not (is_complete_set(g, x | {px}) and is_complete_set(g, x | {py})):
            raise fail("X does not form a clique with both x and y")
        if app.removed != x | {px, py}:
            raise fail("removed set must be X plus x and y")
        if app.marked != frozenset((px, py)) or app.k_delta != -1:
            raise fail("marking or k change is wrong for this rule")


def apply_rule(g: Graph, k: int, app: RuleApplication) -> tuple[Graph, int]:
    """Revalidate the application against g, then delete its vertices and
    update k."""
    _check_applicable(g, app)
    return g.remove_vertices(app.removed), k + app.k_delta


def reduce_exhaustively(g: Graph, k: int) -> ReductionTrace:
    """Apply rules until none fits; the survivor is a single vertex."""
    if g.n == 0 or not is_connected(g):
        raise ValueError("reduction needs a non-empty connected graph")
    if k < 0:
        raise ValueError("k must be non-negative")
    steps: list[RuleApplication] = []
    marked: set[int] = set()
    cur = g
    cur_k = k
    while True:
        app = find_next_rule(cur)
        if app is None:
            if cur.m:
                raise InvariantViolation("no rule applies although edges remain")
            break
        cur, cur_k = apply_rule(cur, cur_k, app)
        steps.append(app)
        marked |= app.marked
    return ReductionTrace(
        initial_graph=g,
        initial_k=k,
        steps=tuple(steps),
        final_graph=cur,
        final_k=cur_k,
        marked=frozenset(marked),
    )


def find_S(g: Graph, k: int) -> FindSResult:
    """Either decide yes outright, or hand back the marked separator.

    When the parameter is used up during reduction, coloring the final
    vertex arbitrarily and extending backward meets the original target.
    Otherwise the marked set S satisfies |S| <= 3(k - final k) and g - S
    is a clique-forest.
    """
    trace = reduce_exhaustively(g, k)
    if trace.final_k <= 0:
        root = trace.final_graph.sorted_vertices[0]
        witness = extend_assignment(trace, {root: 0})
        return DecidedYes(witness)
    return SeparatorFound(trace.marked, trace)


def _undo_step(before: Graph, app: RuleApplication, colors: Assignment) -> int:
    """Color the vertices removed by one step and return how many of the
    edges deleted with them are cut."""
    if app.rule is Rule.R1:
        v = app.anchor("v")
        gamma = colors[v]
        # Balanced clique cut over X + v: flip the larger half of X.
        flip = (len(app.x_set) + 2) // 2
        for idx, u in enumerate(app.x_set):
            colors[u] = 1 - gamma if idx < flip else gamma
    elif app.rule is Rule.R2:
        v = app.anchor("v")
        gamma = colors[v]
        vn = before.neighbors(v)
        order = [u for u in app.x_set if u in vn] + [u for u in app.x_set if u not in vn]
        flip = (len(order) + 1) // 2
        for idx, u in enumerate(order):
            colors[u] = 1 - gamma if idx < flip else gamma
    elif app.rule is Rule.R3:
        a, b, c = app.anchor("a"), app.anchor("b"), app.anchor("c")
        first = {a: 0, c: 0, b: 1}
        second = {a: 1, c: 1, b: 0}
        sat_first = 0
        sat_second = 0
        for t in (a, b, c):
            for w in before.neighbors(t):
                if w in app.removed:
                    continue
                if first[t] != colors[w]:
                    sat_first += 1
                if second[t] != colors[w]:
                    sat_second += 1
        colors.update(first if sat_first >= sat_second else second)
    else:
        px, py = app.anchor("x"), app.anchor("y")
        for_zero = 0
        for_one = 0
        for t in (px, py):
            for w in before.neighbors(t):
                if w in app.removed:
                    continue
                if colors[w] == 1:
                    for_zero += 1
                else:
                    for_one += 1
        gamma = 0 if for_zero >= for_one else 1
        colors[px] = gamma
        colors[py] = gamma
        size = len(app.x_set)
        opp = (size + 1) // 2 if size % 2 == 1 else size // 2 + 1
        for idx, u in enumerate(app.x_set):
            colors[u] = 1 - gamma if idx < opp else gamma
    q = 0
    for u in app.removed:
        cu = colors[u]
        for w in before.neighbors(u):
            if w in app.removed and not u < w:
                continue
            if cu != colors[w]:
                q += 1
    return q


def extend_assignment(
    trace: ReductionTrace,
    base: Assignment,
    audit: list[tuple[Rule, int, int, int, int]] | None = None,
) -> Assignment:
    """Grow an assignment of the reduced graph back to the initial one.

    Steps are undone in reverse; each undo must newly cut q edges with
    4q >= 2m' + n' - k_delta for its removed-edge count m' and removed-vertex
    count n', which is checked and optionally reported via ``audit`` as
    (rule, q, m', n', k_delta) tuples.
    """
    if frozenset(base) != trace.final_graph.vertices:
        raise ValueError("assignment does not cover exactly the reduced graph")
    history = [trace.initial_graph]
    cur = trace.initial_graph
    for app in trace.steps:
        cur = cur.remove_vertices(app.removed)
        history.append(cur)
    colors = dict(base)
    for i in range(len(trace.steps) - 1, -1, -1):
        before = history[i]
        app = trace.steps[i]
        q = _undo_step(before, app, colors)
        m_removed = before.m - history[i + 1].m
        n_removed = len(app.removed)
        if 4 * q < 2 * m_removed + n_removed - app.k_delta:
            raise InvariantViolation(
                f"undoing {app.rule.value} cut only {q} of {m_removed} removed edges"
            )
        if audit is not None:
            audit.append((app.rule, q, m_removed, n_removed, app.k_delta))
    return colors


def trace_log_lines(trace: ReductionTrace) -> tuple[str, ...]:
    """One text line per step: rule name, anchors, X, removed ids, k change."""
    lines = []
    for app in trace.steps:
        parts = [app.rule.value]
        parts.extend(f"{name}={v}" for name, v in app.anchors)
        if app.x_set:
            parts.append("X=" + ",".join(str(u) for u in app.x_set))
        parts.append("removed=" + ",".join(str(u) for u in sorted(app.removed)))
        parts.append(f"k_delta={app.k_delta}")
        lines.append(" ".join(parts))
    return tuple(lines)
