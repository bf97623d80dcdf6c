"""Independent brute-force oracles for the test-suite.

Everything here is deliberately naive: subset enumeration and exhaustive
search, no flow computations, no reuse of library algorithms.  Tests compare
library output against these on small instances.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from liftlink.multigraph import MultiGraph


def cut_size(g: MultiGraph, side: Set[int]) -> int:
    n = 0
    for eid in g.edge_ids:
        u, v = g.endpoints(eid)
        if (u in side) != (v in side):
            n += 1
    return n


def subsets_containing(vertices: Sequence[int], inside, outside):
    """All subsets of ``vertices`` containing ``inside``, avoiding ``outside``."""
    inside = set(inside)
    outside = set(outside)
    rest = sorted(set(vertices) - inside - outside)
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            yield inside | set(combo)


def brute_min_cut(g: MultiGraph, u: int, v: int) -> int:
    """min |boundary(A)| over all A with u in A and v not in A."""
    best = None
    for side in subsets_containing(g.vertices, [u], [v]):
        c = cut_size(g, side)
        if best is None or c < best:
            best = c
    assert best is not None
    return best


def brute_edge_connectivity(g: MultiGraph) -> int:
    vs = sorted(g.vertices)
    if len(vs) < 2:
        return len(g.edge_ids) + 1  # vacuous; larger than any cut
    u = vs[0]
    return min(brute_min_cut(g, u, v) for v in vs[1:])


def brute_is_k_ec(g: MultiGraph, k: int) -> bool:
    if g.num_vertices <= 1:
        return True
    return brute_edge_connectivity(g) >= k


def brute_is_sk_ec(g: MultiGraph, s: int, k: int) -> bool:
    """Every pair of non-s vertices has k edge-disjoint connections.

    Enumerated directly over pairs of non-s vertices.
    """
    others = sorted(set(g.vertices) - {s})
    for u, v in combinations(others, 2):
        if brute_min_cut(g, u, v) < k:
            return False
    return True


def lifted_edge_list(g: MultiGraph, s: int, e: int, f: int):
    """Edge list of the graph after lifting edges e,f at s (done by hand)."""
    x = g.other_endpoint(e, s)
    y = g.other_endpoint(f, s)
    pairs = [g.endpoints(eid) for eid in g.edge_ids if eid not in (e, f)]
    if x != y:
        pairs.append((x, y))
    return pairs, sorted(g.vertices)


def brute_is_liftable(g: MultiGraph, s: int, e: int, f: int, k: int) -> bool:
    pairs, vs = lifted_edge_list(g, s, e, f)
    h = MultiGraph.from_edge_list(pairs, vertices=vs)
    return brute_is_sk_ec(h, s, k)


def brute_lifting_graph_edges(g: MultiGraph, s: int, k: int) -> Set[FrozenSet[int]]:
    incident = sorted(g.incident(s))
    out: Set[FrozenSet[int]] = set()
    for e, f in combinations(incident, 2):
        if brute_is_liftable(g, s, e, f, k):
            out.add(frozenset((e, f)))
    return out


def brute_dangerous_sets(g: MultiGraph, s: int, k: int) -> List[Set[int]]:
    """All A with s not in A, |boundary(A)| <= k+1, and A+{s} not the whole
    vertex set."""
    all_vs = set(g.vertices)
    found = []
    for side in subsets_containing(g.vertices, [], [s]):
        if not side:
            continue
        if all_vs - side - {s} and cut_size(g, side) <= k + 1:
            found.append(side)
    return found


def _trails(g: MultiGraph, src: int, dst: int, used: Set[int]):
    """All edge-simple trails src->dst avoiding ``used`` (generator of
    edge-id tuples)."""
    path: List[int] = []

    def rec(at: int):
        if at == dst and path:
            yield tuple(path)
        for eid in sorted(g.incident(at)):
            if eid in used or eid in path:
                continue
            path.append(eid)
            yield from rec(g.other_endpoint(eid, at))
            path.pop()

    if src == dst:
        yield ()
    else:
        yield from rec(src)


def brute_linkage_exists(g: MultiGraph, pairs: Sequence[Tuple[int, int]]) -> bool:
    """Exhaustive search for pairwise edge-disjoint trails joining the pairs."""

    def rec(i: int, used: Set[int]) -> bool:
        if i == len(pairs):
            return True
        s, t = pairs[i]
        for trail in _trails(g, s, t, used):
            if rec(i + 1, used | set(trail)):
                return True
        return False

    return rec(0, set())


def brute_max_disjoint_paths(g: MultiGraph, u: int, v: int) -> int:
    """Largest number of pairwise edge-disjoint u-v trails."""
    best = 0
    while brute_linkage_exists(g, [(u, v)] * (best + 1)):
        best += 1
        if best > g.degree(u):
            break
    return best


def brute_vertex_disjoint_count(g: MultiGraph, sources: Set[int],
                                sinks: Set[int]) -> int:
    """Menger count: max internally vertex-disjoint source->sink paths.

    Recursive: try every simple path, delete its interior vertices, recurse.
    Paths sharing only a common source-sink vertex count via the trivial
    zero-length path.
    """
    common = sources & sinks

    def rec(avail: Set[int], banned: Set[int]) -> int:
        best = 0
        paths = []
        for s0 in sorted(sources & avail):
            stack: List[Tuple[int, Tuple[int, ...]]] = [(s0, (s0,))]
            while stack:
                at, vp = stack.pop()
                if at in sinks:
                    paths.append(vp)
                    continue
                for eid in sorted(g.incident(at)):
                    w = g.other_endpoint(eid, at)
                    if w in avail and w not in vp and w not in banned:
                        stack.append((w, vp + (w,)))
        for vp in paths:
            interior = set(vp)
            best = max(best, 1 + rec(avail - interior, banned))
        return best

    usable = set(g.vertices) - common
    return len(common) + rec(usable, set())
