import random

import pytest
from hypothesis import given, settings, strategies as st

from liftlink import MultiGraph
from liftlink.flows import (
    arc_connectivity,
    edge_disjoint_paths,
    is_k_edge_connected,
    is_sk_edge_connected,
    local_edge_connectivity,
    min_cut_side,
    mixed_reachable,
    unit_maxflow,
    vertex_disjoint_count,
)
from liftlink.randgen import random_multigraph, random_sk_instance

from bruteforce import (
    brute_is_k_ec,
    brute_is_sk_ec,
    brute_min_cut,
    brute_vertex_disjoint_count,
    cut_size,
)


def small(seed):
    rng = random.Random(seed)
    return random_multigraph(rng, rng.randrange(3, 8), rng.randrange(2, 16))


def test_frozen_small_cases():
    # theta graph: two vertices joined by three internally disjoint paths
    theta = MultiGraph.from_edge_list(
        [(0, 1), (1, 5), (0, 2), (2, 5), (0, 3), (3, 4), (4, 5)])
    assert local_edge_connectivity(theta, 0, 5) == 3
    assert local_edge_connectivity(theta, 1, 2) == 2
    paths, verts = edge_disjoint_paths(theta, 0, 5)
    assert len(paths) == 3
    used = [e for p in paths for e in p]
    assert len(used) == len(set(used))
    for p, vp in zip(paths, verts):
        assert vp[0] == 0 and vp[-1] == 5 and len(p) == len(vp) - 1
    # bond of 2 parallel edges
    bond = MultiGraph.from_edge_list([(0, 1), (0, 1)])
    assert local_edge_connectivity(bond, 0, 1) == 2
    assert is_k_edge_connected(bond, 2)
    assert not is_k_edge_connected(bond, 3)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_local_connectivity_matches_subset_enumeration(seed, ):
    g = small(seed)
    vs = sorted(g.vertices)
    u, v = vs[0], vs[-1]
    assert local_edge_connectivity(g, u, v) == brute_min_cut(g, u, v)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_min_cut_side_is_certificate(seed):
    g = small(seed)
    vs = sorted(g.vertices)
    u, v = vs[0], vs[-1]
    side = min_cut_side(g, u, v)
    assert u in side and v not in side
    assert cut_size(g, side) == brute_min_cut(g, u, v)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_disjoint_paths_are_disjoint_and_max(seed):
    g = small(seed)
    vs = sorted(g.vertices)
    u, v = vs[0], vs[-1]
    paths, verts = edge_disjoint_paths(g, u, v)
    used = [e for p in paths for e in p]
    assert len(used) == len(set(used))
    for p, vp in zip(paths, verts):
        assert vp[0] == u and vp[-1] == v
        for i, eid in enumerate(p):
            assert set(g.endpoints(eid)) == {vp[i], vp[i + 1]}
    assert len(paths) == brute_min_cut(g, u, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 5))
def test_k_edge_connected_matches_brute(seed, k):
    g = small(seed)
    assert is_k_edge_connected(g, k) == brute_is_k_ec(g, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 4))
def test_sk_edge_connected_matches_brute(seed, k):
    g = small(seed)
    s = sorted(g.vertices)[0]
    assert is_sk_edge_connected(g, s, k) == brute_is_sk_ec(g, s, k)


def test_sk_instances_from_generator():
    rng = random.Random(11)
    for k in (2, 3, 4):
        g, s = random_sk_instance(rng, k, deg_s=k + 2, n_others=6)
        assert is_sk_edge_connected(g, s, k)
        assert g.degree(s) == k + 2


def test_sk_tolerates_low_degree_centre():
    # centre degree below k but other pairs still k-connected through core
    rng = random.Random(3)
    g, s = random_sk_instance(rng, 4, deg_s=2, n_others=6)
    assert is_sk_edge_connected(g, s, 4)
    assert not is_k_edge_connected(g, 4)


def test_multi_terminal_flow_with_forbidden_edges():
    g = MultiGraph.from_edge_list(
        [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2), (0, 3)])
    # each occurrence of a terminal contributes one unit of capacity
    r = unit_maxflow(g, [0] * 3, [3] * 3)
    assert r.value == 3
    r2 = unit_maxflow(g, [0] * 3, [3] * 3, forbidden={5})
    assert r2.value == 2
    assert all(5 not in p for p in r2.paths)
    r3 = unit_maxflow(g, [0, 0], [3, 3])
    assert r3.value == 2
    assert unit_maxflow(g, [0], [3]).value == 1


def test_flow_respects_partial_orientation():
    g = MultiGraph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    # orient edge 0 as 1 -> 0: 0 can reach 2 only through vertex 2's side
    direction = {0: (1, 0)}
    r = unit_maxflow(g, [0], [1], direction=direction)
    assert r.value == 1  # only 0-2-1 remains in forward direction
    assert arc_connectivity(g, direction, 1, 0) == 2
    assert mixed_reachable(g, 0, direction) == {0, 1, 2}
    # every arc pointing at 0: nothing is reachable from it
    assert mixed_reachable(g, 0, {0: (1, 0), 1: (2, 1), 2: (2, 0)}) == {0}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_vertex_disjoint_count_matches_brute(seed):
    rng = random.Random(seed)
    g = random_multigraph(rng, rng.randrange(4, 7), rng.randrange(3, 10))
    vs = sorted(g.vertices)
    sources = set(vs[:2])
    sinks = set(vs[-2:])
    got = vertex_disjoint_count(g, sources, sinks)
    assert got == brute_vertex_disjoint_count(g, sources, sinks)


def test_vertex_disjoint_shared_terminal():
    # everything funnels through vertex 1, so only one path fits
    g = MultiGraph.from_edge_list([(0, 1), (1, 2)])
    assert vertex_disjoint_count(g, {0, 1}, {1, 2}) == 1
    # two shared vertices give two zero-length paths
    h = MultiGraph.from_edge_list([(0, 1), (0, 2), (1, 2)])
    assert vertex_disjoint_count(h, {0, 1}, {0, 1}) == 2


def test_flow_limit_short_circuits():
    g = MultiGraph.from_edge_list([(0, 1)] * 5)
    assert local_edge_connectivity(g, 0, 1, limit=3) == 3
    r = unit_maxflow(g, [0] * 5, [1] * 5, limit=2)
    assert r.value == 2 and r.cut_side is None
