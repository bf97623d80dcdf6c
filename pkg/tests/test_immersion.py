"""Tests for the immersion construction and its certificate audit."""

import dataclasses
import random

import pytest

from liftlink.errors import PreconditionViolated
from liftlink.families import CylinderLadder, SquareGrid, TreeWithLevelCycles
from liftlink.flows import is_k_edge_connected
from liftlink.immersion import check_certificate, immerse

GRID = SquareGrid()
LADDER = CylinderLadder(width=5)


def audit(cert, fam):
    diags = check_certificate(cert, fam)
    assert diags == [], diags
    assert is_k_edge_connected(cert.pattern, 2 * cert.k)


def test_grid_single_seed():
    cert = immerse(GRID, [GRID.vertex(0, 0)], k=1)
    audit(cert, GRID)
    assert cert.core == frozenset([GRID.vertex(0, 0)])
    assert cert.pattern.num_vertices == 1
    assert cert.pattern.num_edges == 0
    # all four boundary edges come back as two closed walks at the seed
    assert len(cert.closed_images) == 2
    covered = {e for _vs, es in cert.closed_images for e in es}
    assert set(cert.boundaries[0]) <= covered
    assert not cert.fans


def test_grid_box_seed():
    seed = [GRID.vertex(x, y) for x in (0, 1) for y in (0, 1)]
    cert = immerse(GRID, seed, k=1)
    audit(cert, GRID)
    assert set(seed) <= set(cert.core)
    # one end, even boundary: everything lifts, no hubs survive
    assert not cert.fans
    assert all(v >= 0 for v in cert.pattern.vertices)
    for eid in cert.pattern.edge_ids:
        u, v = cert.pattern.endpoints(eid)
        if eid >= 0 and u in cert.core and v in cert.core:
            assert cert.images[eid] == ((u, v), (eid,))


def test_ladder_two_hubs():
    cert = immerse(LADDER, [LADDER.vertex(0, 0)], k=1)
    audit(cert, LADDER)
    assert len(cert.core) == 5
    assert cert.pattern.num_vertices == 7
    assert cert.pattern.num_edges == 13
    hubs = sorted(v for v in cert.pattern.vertices if v < 0)
    assert hubs == [-2, -1]
    for c in hubs:
        assert cert.pattern.degree(c) == 3
        assert cert.branch[c] not in cert.core
    # hubs map into their own piece, away from each other
    assert cert.branch[-1] != cert.branch[-2]


def test_tree_family():
    # levels triple in size, so keep the working depth small
    fam = TreeWithLevelCycles(branching=3)
    cert = immerse(fam, [fam.vertex(0, 0)], k=1, depth=4, depth_cap=8)
    audit(cert, fam)
    assert len(cert.fans) == 1  # the root's own degree-3 boundary survives


def test_randomized_seeds():
    rng = random.Random(2024)
    for _ in range(4):
        seed = {GRID.vertex(rng.randint(-2, 2), rng.randint(-2, 2))
                for _ in range(rng.randint(1, 4))}
        cert = immerse(GRID, seed, k=1)
        audit(cert, GRID)
        assert seed <= set(cert.core)
        used = {e for _vs, es in cert.images.values() for e in es}
        used |= {e for _vs, es in cert.closed_images for e in es}
        for edges in cert.boundaries:
            assert set(edges) <= used


def test_audit_catches_tampering():
    cert = immerse(LADDER, [LADDER.vertex(0, 0)], k=1)
    eid = next(e for e in cert.pattern.edge_ids
               if len(cert.images[e][1]) > 1)
    vs, es = cert.images[eid]

    broken = dict(cert.images)
    broken[eid] = (vs[:-1] + (vs[0],), es)
    bad = dataclasses.replace(cert, images=broken)
    assert any("image" in d for d in check_certificate(bad, LADDER))

    other = next(e for e in cert.pattern.edge_ids if e != eid)
    doubled = dict(cert.images)
    doubled[other] = cert.images[eid]
    bad = dataclasses.replace(cert, images=doubled)
    diags = check_certificate(bad, LADDER)
    assert any("twice" in d or "two image walks" in d for d in diags)


def test_preconditions():
    with pytest.raises(PreconditionViolated):
        immerse(GRID, [GRID.vertex(0, 0)], k=0)
    with pytest.raises(PreconditionViolated):
        immerse(GRID, [GRID.vertex(0, 0)], k=2)  # needs 5-edge-connectivity
