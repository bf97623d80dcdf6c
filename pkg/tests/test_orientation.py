"""Tests for orientations: Euler tours, verified extension, round growth."""

import itertools
import random

import pytest

from bruteforce import brute_is_k_ec
from liftlink.errors import (NotEulerian, PreconditionViolated,
                             ResourceBudgetExceeded)
from liftlink.families import CylinderLadder, SquareGrid
from liftlink.flows import arc_connectivity
from liftlink.multigraph import MultiGraph
from liftlink.orientation import (Orientation, extend_orientation,
                                  orient_eulerian_consistent, orient_infinite,
                                  verify_k_arc_connected, verify_well_balanced)
from liftlink.randgen import random_eulerian_2k_ec

C4 = MultiGraph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0)])


def brute_k_arc(o, k):
    """Reference check: directed flow for every ordered pair, no shortcuts."""
    g = o.base
    return all(arc_connectivity(g, o.direction, x, y) >= k
               for x in g.vertices for y in g.vertices if x != y)


# ---------------------------------------------------------------------------
# euler orienting and verification


def test_cycle_tour():
    o = orient_eulerian_consistent(C4)
    assert verify_k_arc_connected(o, 1)
    assert all(o.out_degree(v) == 1 and o.in_degree(v) == 1
               for v in C4.vertices)


def test_reversed_arc_breaks_it():
    o = orient_eulerian_consistent(C4)
    flipped = dict(o.direction)
    flipped[0] = flipped[0][::-1]
    assert not verify_k_arc_connected(Orientation(C4, flipped), 1)


def test_doubled_cycle_two_arc():
    g = MultiGraph.from_edge_list(
        [(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (3, 0), (3, 0)])
    assert verify_k_arc_connected(orient_eulerian_consistent(g), 2)


def test_k5_two_arc():
    k5 = MultiGraph.from_edge_list(
        [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert verify_k_arc_connected(orient_eulerian_consistent(k5), 2)


def test_not_eulerian():
    with pytest.raises(NotEulerian):
        orient_eulerian_consistent(MultiGraph.from_edge_list([(0, 1)]))
    two = MultiGraph.from_edge_list(
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    with pytest.raises(NotEulerian):
        orient_eulerian_consistent(two)


def test_verifier_matches_brute():
    rng = random.Random(31337)
    for _ in range(40):
        k = rng.choice([1, 2])
        g = random_eulerian_2k_ec(rng, k, rng.randint(4, 7))
        direction = {}
        for e in g.edge_ids:
            u, v = g.endpoints(e)
            direction[e] = (u, v) if rng.random() < 0.5 else (v, u)
        o = Orientation(g, direction)
        for level in (1, 2):
            assert verify_k_arc_connected(o, level) == brute_k_arc(o, level)


def test_well_balanced_euler():
    rng = random.Random(5)
    g = random_eulerian_2k_ec(rng, 2, 6)
    assert verify_well_balanced(orient_eulerian_consistent(g))


def test_well_balanced_trivial_and_unbalanced():
    single = MultiGraph.from_edge_list([(0, 1)])
    assert verify_well_balanced(Orientation(single, {0: (0, 1)}))
    k4 = MultiGraph.from_edge_list(
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    sink = {e: (max(k4.endpoints(e)), min(k4.endpoints(e)))
            if 0 in k4.endpoints(e) else k4.endpoints(e)
            for e in k4.edge_ids}
    assert not verify_well_balanced(Orientation(k4, sink))


# ---------------------------------------------------------------------------
# extension


def test_extension_empty_pre_eulerian():
    g = MultiGraph.from_edge_list(
        [(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (3, 0), (3, 0)])
    o = extend_orientation(g, 2, Orientation(g, {}))
    assert o.is_total and verify_k_arc_connected(o, 2)


def test_extension_keeps_pre():
    g = MultiGraph.from_edge_list(
        [(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0),
         (0, 3), (3, 1), (1, 3), (3, 2), (2, 3), (3, 0)])
    pre = Orientation(g, {0: (0, 1), 1: (1, 2), 2: (2, 0)})
    o = extend_orientation(g, 2, pre)
    assert verify_k_arc_connected(o, 2)
    assert all(o.direction[e] == arc for e, arc in pre.direction.items())


def test_extension_bad_pre():
    g = MultiGraph.from_edge_list([(0, 1), (1, 2), (2, 0), (0, 1)])
    with pytest.raises(PreconditionViolated):
        extend_orientation(g, 1, Orientation(g, {0: (0, 1)}))


def test_extension_budget():
    k4 = MultiGraph.from_edge_list(
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    with pytest.raises(ResourceBudgetExceeded):
        extend_orientation(k4, 1, Orientation(k4, {}), budget=0)


def test_extension_robbins_exhaustive():
    # every 2-edge-connected graph on <= 5 vertices gets a strong orientation
    pairs5 = list(itertools.combinations(range(5), 2))
    found = 0
    for n, pool in ((4, list(itertools.combinations(range(4), 2))),
                    (5, pairs5)):
        for bits in range(1 << len(pool)):
            edges = [pool[i] for i in range(len(pool)) if bits >> i & 1]
            if len(edges) < n:
                continue
            if {v for e in edges for v in e} != set(range(n)):
                continue
            g = MultiGraph.from_edge_list(edges)
            if g.num_vertices != n or not brute_is_k_ec(g, 2):
                continue
            o = extend_orientation(g, 1, Orientation(g, {}))
            assert verify_k_arc_connected(o, 1)
            found += 1
    assert found > 200


# ---------------------------------------------------------------------------
# round growth


def check_identified_eulerian(result):
    """Merging the round's branch vertices must balance every vertex."""
    branch = set(result.branch)
    balance = {}
    merged = 0
    for t, h in result.orientation.direction.values():
        if t in branch:
            merged += 1
        else:
            balance[t] = balance.get(t, 0) + 1
        if h in branch:
            merged -= 1
        else:
            balance[h] = balance.get(h, 0) - 1
    assert merged == 0
    assert all(b == 0 for b in balance.values())


def test_grid_rounds():
    rounds = orient_infinite(SquareGrid(), k=1, rounds=2)
    assert [len(r.branch) for r in rounds] == [4, 42]
    for r in rounds:
        check_identified_eulerian(r)
        assert r.min_flow >= 1
    # full pairwise audit of the first round, no fixed-root shortcut
    first = rounds[0]
    g, d = first.orientation.base, first.orientation.direction
    for y in first.branch:
        for z in first.branch:
            if y != z:
                assert arc_connectivity(g, d, y, z) >= 1
    # monotone: directions never flip
    prev = rounds[0].orientation.direction
    nxt = rounds[1].orientation.direction
    assert all(nxt[e] == arc for e, arc in prev.items())


def test_ladder_rounds_route_through_hubs():
    rounds = orient_infinite(CylinderLadder(width=5), k=1, rounds=2)
    first = rounds[0]
    assert len(first.branch) == 7  # five ring vertices plus two hubs
    hubs = [v for v in first.certificate.pattern.vertices if v < 0]
    assert len(hubs) == 2
    check_identified_eulerian(first)
    check_identified_eulerian(rounds[1])


def test_cut_transfer_small_pattern():
    # every 2-split of the first ladder pattern carries >= k arcs each way
    first = orient_infinite(CylinderLadder(width=5), k=1, rounds=1)[0]
    h = first.certificate.pattern
    d = first.pattern_direction
    vs = sorted(h.vertices)
    assert len(vs) <= 8
    for bits in range(1, 1 << (len(vs) - 1)):
        side = {vs[i] for i in range(len(vs) - 1) if bits >> i & 1}
        fwd = back = 0
        for e in h.edge_ids:
            t, hd = d[e]
            if (t in side) != (hd in side):
                if t in side:
                    fwd += 1
                else:
                    back += 1
        assert fwd >= 1 and back >= 1


def test_round_determinism():
    a = orient_infinite(SquareGrid(), k=1, rounds=1)[0]
    b = orient_infinite(SquareGrid(), k=1, rounds=1)[0]
    assert a.orientation.direction == b.orientation.direction
    assert a.branch == b.branch


def test_round_preconditions():
    with pytest.raises(PreconditionViolated):
        orient_infinite(SquareGrid(), k=1, rounds=0)
    with pytest.raises(PreconditionViolated):
        orient_infinite(SquareGrid(), k=2, rounds=1)
