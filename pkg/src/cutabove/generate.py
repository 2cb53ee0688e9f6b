"""Seeded random instance generators used by tests and the CLI."""
from __future__ import annotations

import random

from .graph import Graph


def gen_connected(n: int, p: float, seed: int) -> Graph:
    """Connected graph on vertices 0..n-1: a uniform random spanning tree
    plus each remaining pair independently with probability p.

    Deterministic for a given (n, p, seed).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    vertices = range(n)
    edges: set[tuple[int, int]] = set()
    if n >= 2:
        if n == 2:
            edges.add((0, 1))
        else:
            # Decode a random Pruefer sequence; every tree is equally likely.
            seq = [rng.randrange(n) for _ in range(n - 2)]
            degree = [1] * n
            for x in seq:
                degree[x] += 1
            for x in seq:
                for y in range(n):
                    if degree[y] == 1:
                        edges.add((min(x, y), max(x, y)))
                        degree[x] -= 1
                        degree[y] -= 1
                        break
            last = [y for y in range(n) if degree[y] == 1]
            edges.add((min(last), max(last)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p and (u, v) not in edges:
                edges.add((u, v))
    return Graph(vertices, edges)


def gen_clique_forest(block_count: int, max_block: int, seed: int) -> Graph:
    """Connected graph whose blocks are cliques, built by gluing random-size
    cliques one at a time at a random existing vertex.

    Vertex ids are dense starting at 0. Deterministic for a given argument
    triple.
    """
    if block_count < 1:
        raise ValueError("block_count must be at least 1")
    if max_block < 2:
        raise ValueError("max_block must be at least 2")
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    next_id = 0
    for b in range(block_count):
        size = rng.randint(2, max_block)
        if b == 0:
            members = list(range(size))
            next_id = size
        else:
            attach = rng.randrange(next_id)
            fresh = list(range(next_id, next_id + size - 1))
            next_id += size - 1
            members = [attach] + fresh
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                edges.add((min(u, v), max(u, v)))
    return Graph(range(next_id), edges)
