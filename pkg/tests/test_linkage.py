"""Tests for linkage verification, the finite solver, block routing, and
the infinite pipeline."""

import random

import pytest

from bruteforce import brute_linkage_exists
from liftlink.errors import (ConsistencyError, DisconnectedGraph, OddK,
                             PreconditionViolated, ResourceBudgetExceeded)
from liftlink.families import CylinderLadder, SquareGrid
from liftlink.flows import is_k_edge_connected
from liftlink.linkage import (Linkage, LinkageInstance, assemble_blocks,
                              counterexample_family, route_via_blocks,
                              solve_finite, solve_infinite, solve_via_blocks,
                              verify_linkage)
from liftlink.multigraph import MultiGraph
from liftlink.randgen import random_demand_pairs, random_k_ec, random_multigraph

GRID = SquareGrid()
LADDER = CylinderLadder(width=5)


def bundle_instance(k):
    g = MultiGraph([0, 1], {i: (0, 1) for i in range(k)})
    return LinkageInstance(g, k, tuple((0, 1) for _ in range(k)))


# ---------------------------------------------------------------------------
# verification


def test_verify_accepts_parallel_bundle():
    inst = bundle_instance(3)
    cand = Linkage(((0, 1), (0, 1), (0, 1)), ((0,), (1,), (2,)))
    ok, diags = verify_linkage(inst, cand)
    assert ok and diags == []


def test_verify_flags_shared_edge():
    inst = bundle_instance(2)
    cand = Linkage(((0, 1), (0, 1)), ((0,), (0,)))
    ok, diags = verify_linkage(inst, cand)
    assert not ok
    assert any("0" in d and "twice" in d for d in diags)


def test_verify_flags_wrong_endpoint():
    g = MultiGraph([0, 1, 2], {0: (0, 1), 1: (1, 2)})
    inst = LinkageInstance(g, 1, ((0, 2),))
    ok, diags = verify_linkage(inst, Linkage(((0, 1),), ((0,),)))
    assert not ok and any("joins" in d for d in diags)


def test_verify_flags_fake_adjacency():
    g = MultiGraph([0, 1, 2], {0: (0, 1), 1: (1, 2)})
    inst = LinkageInstance(g, 1, ((0, 2),))
    ok, diags = verify_linkage(inst, Linkage(((0, 2),), ((0,),)))
    assert not ok and any("join" in d for d in diags)


def test_instance_validation():
    g = MultiGraph([0, 1], {0: (0, 1)})
    with pytest.raises(PreconditionViolated):
        LinkageInstance(g, 2, ((0, 1),))
    with pytest.raises(PreconditionViolated):
        LinkageInstance(g, 1, ((0, 0),))


# ---------------------------------------------------------------------------
# finite solver


def test_solver_menger_bundle():
    got = solve_finite(bundle_instance(4))
    assert got is not None
    assert sorted(es[0] for es in got.path_edges) == [0, 1, 2, 3]


def test_solver_square_infeasible():
    inst = counterexample_family(2)
    assert solve_finite(inst) is None


def test_solver_matches_bruteforce():
    rng = random.Random(1009)
    agree = 0
    for _ in range(60):
        n = rng.randint(3, 7)
        m = rng.randint(n, 12)
        g = random_multigraph(rng, n, m, connected=True)
        k = rng.randint(1, 3)
        pairs = tuple(random_demand_pairs(rng, g, k))
        inst = LinkageInstance(g, k, pairs)
        got = solve_finite(inst)
        want = brute_linkage_exists(g, pairs)
        assert (got is not None) == want
        if got is not None:
            ok, diags = verify_linkage(inst, got)
            assert ok, diags
            agree += 1
    assert agree > 10  # corpus exercises both outcomes


def test_solver_huck_never_blocks():
    rng = random.Random(4242)
    for _ in range(25):
        k = rng.choice([1, 3])
        g = random_k_ec(rng, k + 1, rng.randint(5, 8), extra=rng.randint(0, 3))
        pairs = tuple(random_demand_pairs(rng, g, k))
        got = solve_finite(LinkageInstance(g, k, pairs))
        assert got is not None


def test_solver_budget_bites():
    rng = random.Random(7)
    g = random_k_ec(rng, 4, 9, extra=6)
    pairs = tuple(random_demand_pairs(rng, g, 3))
    with pytest.raises(ResourceBudgetExceeded):
        solve_finite(LinkageInstance(g, 3, pairs), budget=5)


def test_solver_deterministic():
    rng = random.Random(99)
    g = random_k_ec(rng, 4, 7, extra=2)
    pairs = tuple(random_demand_pairs(rng, g, 3))
    inst = LinkageInstance(g, 3, pairs)
    assert solve_finite(inst) == solve_finite(inst)


# ---------------------------------------------------------------------------
# the tight family


def test_counterexample_smallest():
    inst = counterexample_family(2)
    assert inst.graph.num_vertices == 4
    assert inst.graph.num_edges == 4
    assert inst.pairs == ((0, 2), (1, 3))
    assert is_k_edge_connected(inst.graph, 2)


def test_counterexample_doubled_octagon():
    inst = counterexample_family(4)
    assert inst.graph.num_vertices == 8
    assert inst.graph.num_edges == 16
    assert is_k_edge_connected(inst.graph, 4)
    assert solve_finite(inst) is None


def test_counterexample_rejects_odd():
    with pytest.raises(OddK):
        counterexample_family(3)


# ---------------------------------------------------------------------------
# block routing


def test_blocks_single_block_identity():
    g = MultiGraph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0)])
    routing = route_via_blocks(g, [(0, 2)])
    assert len(routing.blocks) == 1
    assert len(routing.instances) == 1
    assert routing.plan == (((0, 0, 0, 2),),)


def test_blocks_two_triangles():
    g = MultiGraph.from_edge_list(
        [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    routing = route_via_blocks(g, [(0, 4)])
    assert len(routing.blocks) == 2
    assert len(routing.instances) == 2
    subs = {tuple(inst.pairs) for _b, inst in routing.instances}
    assert subs == {((0, 2),), ((2, 4),)}


def test_blocks_chain_solves_and_verifies():
    g = MultiGraph.from_edge_list(
        [(0, 1), (1, 2), (2, 0),
         (2, 3), (3, 4), (4, 2),
         (4, 5), (5, 6), (6, 4)])
    got = solve_via_blocks(g, [(0, 6)])
    assert got is not None
    inst = LinkageInstance(g, 1, ((0, 6),))
    ok, diags = verify_linkage(inst, got)
    assert ok, diags


def test_blocks_bridges_are_blocks():
    g = MultiGraph.from_edge_list([(0, 1), (1, 2), (2, 3)])
    routing = route_via_blocks(g, [(0, 3)])
    assert len(routing.blocks) == 3
    got = solve_via_blocks(g, [(0, 3)])
    assert got is not None and got.paths[0] == (0, 1, 2, 3)


def test_blocks_need_connected_graph():
    g = MultiGraph.from_edge_list([(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraph):
        route_via_blocks(g, [(0, 3)])


def test_blocks_assembly_shortcut_roundtrip():
    g = MultiGraph.from_edge_list(
        [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    routing = route_via_blocks(g, [(1, 3), (0, 2)])
    solved = {b: solve_finite(inst) for b, inst in routing.instances}
    assert all(v is not None for v in solved.values())
    out = assemble_blocks(routing, solved)
    ok, diags = verify_linkage(LinkageInstance(g, 2, ((1, 3), (0, 2))), out)
    assert ok, diags


# ---------------------------------------------------------------------------
# infinite pipeline


def test_infinite_grid_three_pairs():
    pairs = ((GRID.vertex(0, 0), GRID.vertex(2, 0)),
             (GRID.vertex(1, 1), GRID.vertex(-1, 0)),
             (GRID.vertex(0, 1), GRID.vertex(1, 0)))
    out = solve_infinite(GRID, pairs, k=3)
    ok, diags = verify_linkage(LinkageInstance(GRID, 3, pairs), out.linkage)
    assert ok, diags
    for _i, fan in out.fans:
        assert len(fan.paths) % 2 == 0


def test_infinite_grid_single_pair():
    pairs = ((GRID.vertex(0, 0), GRID.vertex(3, 2)),)
    out = solve_infinite(GRID, pairs, k=1)
    ok, diags = verify_linkage(LinkageInstance(GRID, 1, pairs), out.linkage)
    assert ok, diags
    vs = out.linkage.paths[0]
    assert vs[0] == GRID.vertex(0, 0) and vs[-1] == GRID.vertex(3, 2)


def test_infinite_ladder_two_sides():
    pairs = ((LADDER.vertex(0, 0), LADDER.vertex(2, 1)),
             (LADDER.vertex(-2, 2), LADDER.vertex(1, 3)),
             (LADDER.vertex(0, 4), LADDER.vertex(-1, 0)))
    out = solve_infinite(LADDER, pairs, k=3)
    ok, diags = verify_linkage(LinkageInstance(LADDER, 3, pairs), out.linkage)
    assert ok, diags


def test_infinite_crossing_engages_fans():
    # Three copies of one rung demand: the direct edge serves one path and
    # the only length-2 routes run through the contracted half-ladders, so
    # the answer must stitch crossings through hub fans.
    s, t = LADDER.vertex(4, 0), LADDER.vertex(4, 1)
    pairs = ((s, t), (s, t), (s, t))
    out = solve_infinite(LADDER, pairs, k=3)
    ok, diags = verify_linkage(LinkageInstance(LADDER, 3, pairs), out.linkage)
    assert ok, diags
    assert out.fans, "expected hub fans for tail crossings"
    for _i, fan in out.fans:
        assert fan.paths and len(fan.paths) % 2 == 0


def test_infinite_rejects_even_k():
    with pytest.raises(OddK):
        solve_infinite(GRID, ((GRID.vertex(0, 0), GRID.vertex(1, 0)),) * 2, k=2)


def test_infinite_needs_declared_connectivity():
    pairs = tuple((GRID.vertex(0, 0), GRID.vertex(1, 0)) for _ in range(5))
    with pytest.raises(PreconditionViolated):
        solve_infinite(GRID, pairs, k=5)


def test_infinite_rejects_deep_terminals():
    pairs = ((GRID.vertex(0, 0), GRID.vertex(40, 0)),)
    with pytest.raises(PreconditionViolated):
        solve_infinite(GRID, pairs, k=1, depth=16)
