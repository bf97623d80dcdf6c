"""Seeded random instance generators used by tests and experiments.

All functions take an explicit :class:`random.Random`; nothing here touches
global RNG state, so corpora are reproducible from a single seed.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .multigraph import MultiGraph


def random_multigraph(rng: random.Random, n: int, m: int,
                      connected: bool = False) -> MultiGraph:
    """n vertices, m uniformly random non-loop edges (parallels allowed)."""
    while True:
        pairs = []
        for _ in range(m):
            u = rng.randrange(n)
            v = rng.randrange(n)
            while v == u:
                v = rng.randrange(n)
            pairs.append((u, v))
        g = MultiGraph.from_edge_list(pairs, vertices=range(n))
        if not connected or g.is_connected():
            return g


def union_closed_tours(rng: random.Random, vertices: Sequence[int],
                       count: int) -> MultiGraph:
    """Union of ``count`` random spanning cycles.

    Every cut is crossed at least twice by each cycle, so the union is
    2*count-edge-connected (and Eulerian: all degrees are 2*count).
    """
    vs = list(vertices)
    pairs: List[Tuple[int, int]] = []
    for _ in range(count):
        perm = vs[:]
        rng.shuffle(perm)
        for i, u in enumerate(perm):
            pairs.append((u, perm[(i + 1) % len(perm)]))
    return MultiGraph.from_edge_list(pairs, vertices=vs)


def random_k_ec(rng: random.Random, k: int, n: int, extra: int = 0) -> MultiGraph:
    """A k-edge-connected multigraph on n >= 3 vertices.

    Union of ceil(k/2) spanning cycles plus ``extra`` random edges.
    """
    g = union_closed_tours(rng, range(n), (k + 1) // 2)
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        g, _eid = g.add_edge(u, v)
    return g


def random_sk_instance(rng: random.Random, k: int, deg_s: int,
                       n_others: int, extra: int = 0) -> Tuple[MultiGraph, int]:
    """A graph that is (s, k)-edge-connected with a prescribed degree at s.

    Build a k-edge-connected core on the other vertices, then attach ``s``
    by ``deg_s`` random edges; pairs away from s already have their k paths
    inside the core.  With deg_s >= k the whole graph is k-edge-connected.
    """
    core = random_k_ec(rng, k, n_others, extra=extra)
    s = n_others
    g = core.add_vertex(s)
    for _ in range(deg_s):
        v = rng.randrange(n_others)
        g, _eid = g.add_edge(s, v)
    return g, s


def random_eulerian_2k_ec(rng: random.Random, k: int, n: int) -> MultiGraph:
    """Eulerian and 2k-edge-connected: union of k spanning cycles."""
    return union_closed_tours(rng, range(n), k)


def random_demand_pairs(rng: random.Random, g: MultiGraph, count: int,
                        avoid: Sequence[int] = ()) -> List[Tuple[int, int]]:
    """``count`` demand pairs with distinct endpoints per pair."""
    pool = sorted(set(g.vertices) - set(avoid))
    pairs = []
    for _ in range(count):
        u = rng.choice(pool)
        v = rng.choice(pool)
        while v == u:
            v = rng.choice(pool)
        pairs.append((u, v))
    return pairs
