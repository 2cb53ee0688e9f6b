"""Kernelization rules, size-threshold decisions, and the full pipeline."""
from __future__ import annotations

import itertools
import random

import pytest

from cutabove import (
    Graph,
    Kernel,
    KernelDecidedNo,
    KernelDecidedYes,
    KernelReason,
    KernelRule,
    KernelRuleApplication,
    StaleApplicationError,
    apply_kernel_rule,
    blocks,
    find_S,
    find_kernel_rule,
    format_kernel,
    gen_clique_forest,
    gen_connected,
    is_clique_forest,
    is_connected,
    kernel_size_bound,
    kernelize,
    oracle_max_cut,
    parse_graph,
    solve_aee,
    threshold_decide,
    threshold_quarters,
)
from util import bowtie, complete_graph, cycle_graph, oracle_decide, path_graph

fs = frozenset


def rule_equivalent(g, g2, k, k2, k_range=range(0, 7)):
    """Two-way check over a window of budgets: shifting the budget by the
    rule's delta must not change any answer (oracle referee)."""
    shift = k2 - k
    best1, _ = oracle_max_cut(g)
    best2, _ = oracle_max_cut(g2)
    for kk in k_range:
        if kk + shift < 0:
            continue
        before = threshold_quarters(g, kk).met_by(best1)
        after = threshold_quarters(g2, kk + shift).met_by(best2)
        assert before == after, (kk, shift)


def test_component_clique_rule():
    g = Graph(range(4), [(0, 1), (1, 2), (1, 3), (2, 3)])
    app = find_kernel_rule(g, fs({0}))
    assert app.rule == KernelRule.K1
    assert app.anchor("x") == 1
    assert app.x_set == (2, 3)
    assert app.removed == {2, 3}
    assert app.k_delta == 0
    g2, k2 = apply_kernel_rule(g, 1, app)
    assert g2 == Graph([0, 1], [(0, 1)])
    assert k2 == 1
    rule_equivalent(g, g2, 1, k2)


def test_component_clique_rule_odd_pays():
    # A triangle behind x is an odd component, so the budget drops by one.
    g = Graph(range(5), [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    app = find_kernel_rule(g, fs({0}))
    assert (app.rule, app.anchor("x"), app.x_set) == (KernelRule.K1, 1, (2, 3, 4))
    assert app.k_delta == -1
    g2, k2 = apply_kernel_rule(g, 3, app)
    assert g2 == Graph([0, 1], [(0, 1)])
    assert k2 == 2
    rule_equivalent(g, g2, 3, 2)


def test_tiny_components_are_not_consumed():
    # A single vertex behind x is left alone by every rule.
    assert find_kernel_rule(path_graph(3), fs({0})) is None


def test_single_attachment_rule():
    g = Graph(range(4), [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    app = find_kernel_rule(g, fs({0}))
    assert app.rule == KernelRule.K2
    assert app.anchor("s") == 0
    assert app.anchor("x") == 1
    assert app.x_set == (2, 3)
    assert app.removed == {3}
    assert app.k_delta == -1
    g2, k2 = apply_kernel_rule(g, 4, app)
    assert g2 == Graph([0, 1, 2], [(0, 2), (1, 2)])
    assert k2 == 3
    rule_equivalent(g, g2, 4, 3)


def test_empty_separator_prefers_first_rule():
    app = find_kernel_rule(bowtie(), fs())
    assert (app.rule, app.anchor("x"), app.x_set) == (KernelRule.K1, 2, (0, 1))
    tri = complete_graph(3)
    app = find_kernel_rule(tri, fs())
    assert (app.rule, app.anchor("x"), app.x_set) == (KernelRule.K1, 0, (1, 2))
    rule_equivalent(tri, apply_kernel_rule(tri, 3, app)[0], 3, 3)


def test_block_merge_rule():
    """Pendant separator vertices block the component rules, so the two odd
    triangles of the bowtie merge into a fresh five-clique."""
    g = Graph(
        list(range(5)) + [8, 9],
        [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (0, 8), (3, 9)],
    )
    app = find_kernel_rule(g, fs({8, 9}))
    assert app.rule == KernelRule.K3
    assert [app.anchor(n) for n in "xyzuv"] == [0, 3, 2, 10, 11]
    assert app.x_set == (0, 1, 2)
    assert app.y_set == (2, 3, 4)
    assert app.removed == {1, 4}
    assert app.added == (10, 11)
    assert app.k_delta == 0
    g2, k2 = apply_kernel_rule(g, 4, app)
    assert g2.sorted_vertices == (0, 2, 3, 8, 9, 10, 11)
    five = [0, 2, 3, 10, 11]
    want = sorted(itertools.combinations(five, 2)) + [(0, 8), (3, 9)]
    assert sorted(g2.edges()) == sorted(want)
    assert k2 == 4
    rule_equivalent(g, g2, 4, 4)


def test_block_merge_rule_by_hand_on_bowtie():
    """Direct application without separator pendants: the two triangles
    collapse to one five-clique on fresh ids."""
    g = bowtie()
    app = KernelRuleApplication(
        rule=KernelRule.K3,
        separator=fs(),
        removed=fs({1, 4}),
        anchors=(("x", 0), ("y", 3), ("z", 2), ("u", 5), ("v", 6)),
        x_set=(0, 1, 2),
        y_set=(2, 3, 4),
        added=(5, 6),
        k_delta=0,
    )
    g2, k2 = apply_kernel_rule(g, 2, app)
    assert g2 == complete_graph(7).subgraph([0, 2, 3, 5, 6])
    assert k2 == 2
    rule_equivalent(g, g2, 2, 2)


def planted_twin_graph(q):
    """K_q plus two separator vertices: q-2 clique vertices share the first
    separator vertex as their whole outside neighborhood."""
    edges = list(itertools.combinations(range(q), 2))
    edges += [(i, q) for i in range(1, q - 1)]
    edges += [(0, q), (0, q + 1)]
    return Graph(range(q + 2), edges)


def test_twin_trim_rule():
    g = planted_twin_graph(7)
    app = find_kernel_rule(g, fs({7, 8}))
    assert app.rule == KernelRule.K4
    assert app.x_set == (1, 2, 3, 4, 5)
    assert app.removed == {1, 2}
    assert app.k_delta == 0
    assert app.anchors == ()
    g2, k2 = apply_kernel_rule(g, 5, app)
    assert g2.vertices == g.vertices - {1, 2}
    assert k2 == 5
    rule_equivalent(g, g2, 5, 5)


def test_twin_trim_rule_family():
    for q in (7, 8, 9):
        g = planted_twin_graph(q)
        app = find_kernel_rule(g, fs({q, q + 1}))
        assert app is not None and app.rule == KernelRule.K4, q
        assert app.removed == {1, 2}, q
        g2, k2 = apply_kernel_rule(g, 4, app)
        rule_equivalent(g, g2, 4, k2)


def test_twin_trim_needs_enough_members():
    # q=6 gives 2*4 = 8, not above 6+0+2, so nothing fires.
    g = planted_twin_graph(6)
    assert find_kernel_rule(g, fs({6, 7})) is None


def test_apply_rejects_stale_application():
    g = Graph(range(4), [(0, 1), (1, 2), (1, 3), (2, 3)])
    app = find_kernel_rule(g, fs({0}))
    changed = Graph(range(4), list(g.edges()) + [(0, 2)])
    with pytest.raises(StaleApplicationError):
        apply_kernel_rule(changed, 1, app)
    shrunk = g.remove_vertices([3])
    with pytest.raises(StaleApplicationError):
        apply_kernel_rule(shrunk, 1, app)


def test_rejects_bad_setting():
    with pytest.raises(ValueError):
        find_kernel_rule(cycle_graph(4), fs())
    with pytest.raises(ValueError):
        find_kernel_rule(path_graph(3), fs({7}))
    with pytest.raises(ValueError):
        find_kernel_rule(Graph([0, 1], []), fs())


def leaf_heavy_graph(pairs=26):
    """Many two-vertex blocks, each end adjacent to both separator
    vertices 0 and 1."""
    verts = [0, 1]
    edges = []
    for i in range(pairs):
        a, b = 2 + 2 * i, 3 + 2 * i
        verts += [a, b]
        edges += [(a, b), (0, a), (1, a), (0, b), (1, b)]
    return Graph(verts, edges)


def spider_graph(leg_lengths=(10, 10, 10, 9, 9)):
    """A star of long paths hanging off one center, separator {0, 1}
    attached at the center only."""
    verts = [0, 1, 2]
    edges = [(0, 2), (1, 2)]
    nxt = 3
    for leg in leg_lengths:
        prev = 2
        for _ in range(leg):
            verts.append(nxt)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(verts, edges)


def big_block_graph():
    """One K33 block, half attached to each separator vertex."""
    verts = list(range(35))
    edges = list(itertools.combinations(range(33), 2))
    edges += [(v, 33) for v in range(17)]
    edges += [(v, 34) for v in range(17, 33)]
    return Graph(verts, edges)


def test_threshold_many_leaf_blocks():
    g = leaf_heavy_graph()
    assert find_kernel_rule(g, fs({0, 1})) is None
    assert threshold_decide(g, fs({0, 1}), 3) == KernelReason.LEAF_BLOCKS
    # Two fewer pairs sits below the 4s^2+2s+2k-2 = 24 line.
    small = leaf_heavy_graph(23)
    assert find_kernel_rule(small, fs({0, 1})) is None
    assert threshold_decide(small, fs({0, 1}), 3) is None


def test_threshold_many_blocks():
    g = spider_graph()
    assert find_kernel_rule(g, fs({0, 1})) is None
    assert threshold_decide(g, fs({0, 1}), 3) == KernelReason.BLOCK_COUNT


def test_threshold_huge_block():
    g = big_block_graph()
    assert find_kernel_rule(g, fs({33, 34})) is None
    assert threshold_decide(g, fs({33, 34}), 3) == KernelReason.BLOCK_SIZE


def test_threshold_decisions_are_sound():
    """Any construct the size checks decide must really be a yes at that
    budget (referee on the solver for sizes past the oracle cap)."""
    leafy = leaf_heavy_graph()
    assert solve_aee(leafy, 3).answer == "yes"
    spider = spider_graph()
    assert solve_aee(spider, 3).answer == "yes"
    big = big_block_graph()
    assert solve_aee(big, 3).answer == "yes"


def test_threshold_guards():
    g = leaf_heavy_graph()
    with pytest.raises(ValueError):
        threshold_decide(g, fs({0}), 3)
    with pytest.raises(ValueError):
        threshold_decide(g, fs({0, 1}), 2)


def test_size_bound_polynomial():
    assert kernel_size_bound(3) == 7378081
    assert kernel_size_bound(4) == 30967644


def test_kernelize_path_decided_by_reduction():
    out = kernelize(path_graph(10), 3)
    assert out == KernelDecidedYes(KernelReason.REDUCTION_YES)
    assert oracle_decide(path_graph(10), 3)


def test_kernelize_short_path_is_no():
    out = kernelize(path_graph(3), 3)
    assert out == KernelDecidedNo(KernelReason.DIRECT_SOLVE)
    assert not oracle_decide(path_graph(3), 3)


def test_kernelize_small_budget_solves_directly():
    out = kernelize(cycle_graph(4), 1)
    assert out == KernelDecidedYes(KernelReason.DIRECT_SOLVE)
    out = kernelize(path_graph(3), -1)
    assert out == KernelDecidedYes(KernelReason.DIRECT_SOLVE)


def test_kernelize_cycle_returns_kernel():
    out = kernelize(cycle_graph(4), 3)
    assert isinstance(out, Kernel)
    assert out.graph == cycle_graph(4)
    assert out.k == 3
    assert out.separator == {0, 1, 3}
    composed = solve_aee(out.graph, out.k).answer
    assert composed == solve_aee(cycle_graph(4), 3).answer == "yes"


def test_kernelize_rejects_disconnected():
    with pytest.raises(ValueError):
        kernelize(Graph([0, 1], []), 3)


def test_kernelize_matches_direct_solve():
    """End to end on seeded graphs: solving the kernel (or trusting the
    decision) equals solving the original."""
    rng = random.Random(421)
    for trial in range(60):
        n = rng.randrange(2, 40)
        g = gen_connected(n, rng.random() * 0.3, rng.randrange(10**6))
        k = 3
        want = solve_aee(g, k).answer
        out = kernelize(g, k)
        if isinstance(out, KernelDecidedYes):
            got = "yes"
        elif isinstance(out, KernelDecidedNo):
            got = "no"
        else:
            assert len(out.graph.vertices) <= kernel_size_bound(out.k), trial
            got = solve_aee(out.graph, out.k).answer
        assert got == want, (trial, n, out)


def shaped_instance(rng):
    """Clique-forest with two separator vertices randomly attached; built so
    the rules actually fire."""
    base = gen_clique_forest(rng.randrange(1, 5), rng.randrange(2, 6), rng.randrange(10**6))
    s1, s2 = 90, 91
    edges = list(base.edges())
    for v in base.sorted_vertices:
        if rng.random() < 0.2:
            edges.append((v, s1))
        if rng.random() < 0.2:
            edges.append((v, s2))
    g = Graph(list(base.sorted_vertices) + [s1, s2], edges)
    if not is_connected(g):
        return None
    return g


def test_rule_loop_preserves_answers_and_measure():
    """Drive the rules to exhaustion by hand on shaped instances; every
    application must keep all small-budget answers (per the oracle) and
    shrink the (vertices, blocks) measure."""
    rng = random.Random(77)
    applied = {r: 0 for r in KernelRule}
    for trial in range(300):
        g = shaped_instance(rng)
        if g is None or g.n > 24:
            continue
        sep = fs({90, 91})
        if not is_clique_forest(g.remove_vertices(sep)):
            continue
        k = 5
        fresh = max(g.vertices)
        while True:
            app = find_kernel_rule(g, sep, fresh)
            if app is None:
                break
            g2, k2 = apply_kernel_rule(g, k, app)
            applied[app.rule] += 1
            if g.n <= 18:
                rule_equivalent(g, g2, k, k2, k_range=range(0, 9))
            d, d2 = blocks(g.remove_vertices(sep)), blocks(g2.remove_vertices(sep))
            m1 = (g.n, d.n_blocks)
            m2 = (g2.n, d2.n_blocks)
            assert m2 < m1, (trial, app.rule, m1, m2)
            assert is_connected(g2), (trial, app.rule)
            assert is_clique_forest(g2.remove_vertices(sep)), (trial, app.rule)
            fresh = max(fresh, *app.added) if app.added else fresh
            g, k = g2, k2
    assert applied[KernelRule.K1] > 0, applied
    assert applied[KernelRule.K2] > 0, applied
    assert applied[KernelRule.K3] > 0, applied


def test_format_kernel_round_trip():
    out = kernelize(cycle_graph(4), 3)
    text = format_kernel(out)
    assert text == (
        "p edge 4 4\n"
        "e 1 2\n"
        "e 1 4\n"
        "e 2 3\n"
        "e 3 4\n"
        "c kernel k=3 s=1,2,4\n"
    )
    back = parse_graph(text)
    assert back == Graph(range(4), [(0, 1), (0, 3), (1, 2), (2, 3)])


def test_kernel_threshold_outcome_end_to_end():
    """A graph whose reduction leaves a big separator-free remainder that
    only the size thresholds can decide."""
    g = leaf_heavy_graph()
    out = kernelize(g, 3)
    if isinstance(out, KernelDecidedYes):
        assert out.reason in (
            KernelReason.REDUCTION_YES,
            KernelReason.LEAF_BLOCKS,
            KernelReason.BLOCK_COUNT,
            KernelReason.BLOCK_SIZE,
            KernelReason.TOTAL_SIZE,
            KernelReason.DIRECT_SOLVE,
        )
        assert solve_aee(g, 3).answer == "yes"
    else:
        assert isinstance(out, Kernel)
        assert solve_aee(out.graph, out.k).answer == solve_aee(g, 3).answer
