"""Tests for layered separators and hub fans onto ray bundles."""

from collections import Counter, deque

import pytest

from liftlink.errors import DepthExhausted, PreconditionViolated
from liftlink.families import CylinderLadder, SquareGrid, truncate_region
from liftlink.fan import FanRequest, FanResult, build_layers, linking_fan
from liftlink.rays import RaySystem, boundary_linked_decomposition

GRID = SquareGrid()
LADDER = CylinderLadder(width=5)


def origin_system(depth=12):
    _core, sets = boundary_linked_decomposition(GRID, [GRID.origin()], depth=depth)
    return sets[0].rays


def subset(system, count):
    return RaySystem(region=system.region, rays=system.rays[:count],
                     verified_depth=system.verified_depth)


def check_fan(req: FanRequest, res: FanResult):
    """Audit a fan against the raw family adjacency; no solver reuse."""
    fam = req.system.region.family
    rays = req.system.rays
    assert len(res.paths) == len(rays)
    all_edges = Counter()
    for i, (vs, es) in enumerate(zip(res.paths, res.path_edges)):
        assert len(vs) == len(es) + 1
        assert vs[0] == res.hub
        assert vs[-1] == rays[i].prefix[0]
        assert len(set(vs)) == len(vs)  # simple
        for j, e in enumerate(es):
            assert (e, vs[j + 1]) in fam.neighbors(vs[j])
            assert e not in req.avoid
        all_edges.update(es)
        q = res.segment_lengths[i]
        want = rays[i].edges(fam, q)
        assert list(es[-q:]) == list(reversed(want))
    assert all(c == 1 for c in all_edges.values())


def test_fan_on_four_grid_rays():
    system = origin_system()
    req = FanRequest(k=4, system=system)
    res = linking_fan(req, depth=30)
    assert res.hub is not None
    assert len(res.layers) == 5
    check_fan(req, res)
    assert min(res.segment_lengths) >= 12  # default 3 * (m + 0)
    spread = set().union(*res.layers)
    assert res.hub not in spread


def test_fan_single_ray():
    system = subset(origin_system(), 1)
    req = FanRequest(k=4, system=system, length=5)
    res = linking_fan(req, depth=16)
    assert len(res.paths) == 1
    assert len(res.layers) == 2
    assert min(res.segment_lengths) >= 5
    check_fan(req, res)


def test_fan_dodges_forbidden_box():
    a, b, c, d = (GRID.vertex(1, 1), GRID.vertex(2, 1),
                  GRID.vertex(2, 2), GRID.vertex(1, 2))
    box = frozenset(eid for u, w in [(a, b), (b, c), (c, d), (d, a)]
                    for eid, other in GRID.neighbors(u) if other == w)
    assert len(box) == 4
    system = origin_system()
    req = FanRequest(k=4, system=system, avoid=box, length=8)
    res = linking_fan(req, depth=30)
    check_fan(req, res)
    assert {a, b, c, d} <= res.layers[0]


def test_fan_on_ladder_subset():
    rung = [LADDER.vertex(0, r) for r in range(5)]
    _core, sets = boundary_linked_decomposition(LADDER, rung, depth=10)
    system = subset(sets[0].rays, 4)
    req = FanRequest(k=4, system=system, length=4)
    res = linking_fan(req, depth=24)
    check_fan(req, res)


def test_fan_rejects_too_many_rays():
    system = origin_system()
    with pytest.raises(PreconditionViolated):
        linking_fan(FanRequest(k=3, system=system), depth=20)


def test_fan_rejects_avoid_on_ray():
    system = origin_system()
    ray_edge = system.rays[0].edges(GRID, 3)[1]
    with pytest.raises(PreconditionViolated):
        linking_fan(FanRequest(k=4, system=system,
                               avoid=frozenset([ray_edge])), depth=20)


def test_fan_needs_depth_for_long_segments():
    system = origin_system()
    with pytest.raises(DepthExhausted):
        linking_fan(FanRequest(k=4, system=system, length=20), depth=10)


def test_fan_deterministic():
    system = origin_system()
    req = FanRequest(k=4, system=system, length=6)
    assert linking_fan(req, depth=24) == linking_fan(req, depth=24)


def test_layers_nest_and_separate():
    system = origin_system()
    req = FanRequest(k=4, system=system, length=6)
    ls = build_layers(req, depth=24)
    rt = truncate_region(system.region, 24)
    g = rt.graph
    for i, li in enumerate(ls.layers):
        for lj in ls.layers[i + 1:]:
            assert not (li & lj)
    # every separator is connected within its own vertex set
    for verts in ls.layers[1:]:
        start = min(verts)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for e in g.incident(v):
                w = g.other_endpoint(e, v)
                if w in verts and w not in seen:
                    seen.add(w)
                    queue.append(w)
        assert seen == set(verts)
    # removing separator i leaves the next component cut off from everything
    # before it
    for i in range(1, 5):
        beyond = ls.components[i]
        before = ls.base if i == 1 else ls.layers[i - 1]
        seen = set()
        queue = deque([min(beyond)])
        seen.add(min(beyond))
        while queue:
            v = queue.popleft()
            for e in g.incident(v):
                w = g.other_endpoint(e, v)
                if w not in seen and w not in ls.layers[i]:
                    seen.add(w)
                    queue.append(w)
        assert seen == set(beyond)
        assert not (seen & set(before))
        assert not (seen & ls.base)


def test_layers_empty_request():
    system = subset(origin_system(), 0)
    eid = GRID.neighbors(GRID.vertex(3, 3))[0][0]
    other = GRID.neighbors(GRID.vertex(3, 3))[0][1]
    ls = build_layers(FanRequest(k=4, system=system,
                                 avoid=frozenset([eid])), depth=10)
    assert ls.layers == (frozenset({GRID.vertex(3, 3), other}),)
    assert ls.components == ()
    res = linking_fan(FanRequest(k=4, system=system), depth=10)
    assert res.hub is None and res.paths == ()
