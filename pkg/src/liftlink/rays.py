"""Ray systems witnessing boundary-linked sets, and the decomposition
of a family into a finite core plus boundary-linked components.

All guarantees here are depth-limited: a verified system certifies the
required properties on the depth-d truncation; failures are reported as
non-authoritative (None / DepthExhausted), never as disproofs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import DepthExhausted
from .families import (LazyFamily, Ray, Region, RegionTruncation, Truncation,
                       truncate, truncate_region)
from .flows import unit_maxflow
from .multigraph import MultiGraph


@dataclass(frozen=True)
class RaySystem:
    """Edge-disjoint escape rays of a region, one per boundary edge."""

    region: Region
    rays: Tuple[Ray, ...]
    verified_depth: int

    def ray_for_edge(self, eid: int) -> Ray:
        for r in self.rays:
            if r.first_edge == eid:
                return r
        raise KeyError(f"no ray with first edge {eid}")


@dataclass(frozen=True)
class BoundaryLinkedSet:
    """A region with finite boundary plus its verified ray system."""

    region: Region
    boundary: Tuple[Tuple[int, int, int], ...]  # (edge_id, outer, inner)
    rays: RaySystem

    @property
    def boundary_edges(self) -> Tuple[int, ...]:
        return tuple(e for e, _o, _i in self.boundary)


def check_ray_system(system: RaySystem, depth: int,
                     rt: Optional[RegionTruncation] = None) -> List[str]:
    """Depth-limited audit; returns a list of problems (empty = verified).

    Checks: first edges biject onto the boundary; prefixes stay inside the
    region as far as the truncation reaches and never re-enter after
    leaving; materializations out to twice the depth (edge ids are pure
    arithmetic, no truncation needed) are pairwise edge-disjoint; and all
    rays leave through one end-component of the truncation.
    """
    fam = system.region.family
    if rt is None:
        rt = truncate_region(system.region, depth)
    problems: List[str] = []
    want = sorted(e for e, _o, _i in rt.boundary)
    got = sorted(r.first_edge for r in system.rays)
    if want != got:
        problems.append(f"first edges {got} do not match boundary {want}")
        return problems
    if not system.rays:
        return problems
    g = rt.graph
    horizon = 2 * max(2, depth)
    materialized: List[Tuple[List[int], List[int]]] = []
    for r in system.rays:
        vs = r.vertices(fam, horizon + 1)
        es = r.edges(fam, horizon)
        materialized.append((vs, es))
    seen: Dict[int, int] = {}
    deepest: List[Optional[int]] = []
    cut = depth // 2
    for idx, (vs, es) in enumerate(materialized):
        if vs[0] not in system.region.forbidden:
            problems.append(f"ray {idx} does not start in the removed set")
        inside = len(vs)
        for j in range(1, len(vs)):
            if not g.has_vertex(vs[j]):
                inside = j
                break
        if any(g.has_vertex(v) for v in vs[inside:]):
            problems.append(f"ray {idx} re-enters the explored region")
        for e in es[1:inside - 1]:
            if not g.has_edge(e):
                problems.append(f"ray {idx} uses non-region edge {e}")
                break
        deep = [v for v in vs[1:inside] if rt.dist.get(v, 0) > cut]
        deepest.append(deep[-1] if deep else None)
        if not deep:
            problems.append(f"ray {idx} never passes depth {cut}")
        for e in es:
            if e in seen and seen[e] != idx:
                problems.append(f"rays {seen[e]} and {idx} share edge {e}")
            seen[e] = idx
    if problems:
        return problems
    # one-end check: deep vertices of all rays in one far component
    far_vertices = {v for v, dv in rt.dist.items() if dv > cut}
    if far_vertices and len(system.rays) > 1:
        far = g.restriction(
            [e for e in g.edge_ids
             if set(g.endpoints(e)) <= far_vertices],
            keep_vertices=far_vertices)
        comps = {v: i for i, comp in enumerate(far.components())
                 for v in comp}
        homes = {comps[v] for v in deepest if v is not None}
        if len(homes) > 1:
            problems.append(f"rays end in {len(homes)} different components")
    return problems


def find_witnessing_rays(fam: LazyFamily, region: Region,
                         depth: int) -> Optional[RaySystem]:
    """A verified ray system for the region, or None (not verified).

    Canonical straight rays are used when the removed set has the family's
    standard buffer shape; otherwise boundary edges are routed to the deep
    frontier by a flow and the path endpoints promoted to periodic tails.
    """
    rt = truncate_region(region, depth)
    if not rt.boundary:
        return RaySystem(region=region, rays=(), verified_depth=depth)
    canonical = fam.canonical_rays(region.forbidden, rt.boundary)
    if canonical is not None:
        system = RaySystem(region=region, rays=tuple(canonical),
                           verified_depth=depth)
        if not check_ray_system(system, depth, rt):
            return system
    promoted = _promote_by_flow(fam, region, rt)
    if promoted is None:
        return None
    system = RaySystem(region=region, rays=tuple(promoted),
                       verified_depth=depth)
    if check_ray_system(system, depth, rt):
        return None
    return system


def _escape_tail(fam: LazyFamily, v: int) -> Optional[Tuple]:
    """A family tail rule pointing away from the explored core at ``v``."""
    name = getattr(fam, "name", "")
    if name in ("grid", "grid-multi"):
        x, y = fam.coords(v)  # type: ignore[attr-defined]
        if abs(x) >= abs(y):
            return ("line", 1 if x >= 0 else -1, 0, 0)
        return ("line", 0, 1 if y >= 0 else -1, 0)
    if name == "ladder":
        x, _r = fam.coords(v)  # type: ignore[attr-defined]
        return ("line", 1 if x >= 0 else -1)
    if name == "tree-cycles":
        return ("down",)
    if name == "user-periodic":
        if fam._has_straight_lines():  # type: ignore[attr-defined]
            n, _i = fam.coords(v)  # type: ignore[attr-defined]
            return ("line", 1 if n >= 0 else -1)
    return None


def _promote_by_flow(fam: LazyFamily, region: Region,
                     rt: RegionTruncation) -> Optional[List[Ray]]:
    g = rt.graph
    if not rt.frontier:
        return None
    inner_counts: Dict[int, int] = {}
    for _e, _o, inner in rt.boundary:
        inner_counts[inner] = inner_counts.get(inner, 0) + 1
    sources = [v for v, c in sorted(inner_counts.items()) for _ in range(c)]
    # one unit per frontier vertex: paths then end at distinct vertices,
    # so their periodic tails start from distinct points
    sinks = sorted(rt.frontier)
    res = unit_maxflow(g, sources, sinks, want_paths=True)
    if res.value < len(rt.boundary):
        return None
    pending: Dict[int, List[Tuple[int, int]]] = {}
    for eid, outer, inner in rt.boundary:
        pending.setdefault(inner, []).append((eid, outer))
    rays: List[Ray] = []
    for path_edges, path_verts in zip(res.paths, res.path_vertices):
        start = path_verts[0]
        if start not in pending or not pending[start]:
            return None
        eid, outer = pending[start].pop(0)
        tail = _escape_tail(fam, path_verts[-1])
        if tail is None:
            return None
        rays.append(Ray(first_edge=eid,
                        prefix=(outer, *path_verts),
                        prefix_edges=(eid, *path_edges),
                        tail=tail))
    if any(v for v in pending.values()):
        return None
    rays.sort(key=lambda r: r.first_edge)
    return rays


def boundary_linked_decomposition(
        fam: LazyFamily, a0: Iterable[int], depth: int,
        max_buffer_level: int = 6
) -> Tuple[FrozenSet[int], List[BoundaryLinkedSet]]:
    """Split the graph into a finite core A and boundary-linked sets.

    A contains ``a0``, a grown standard buffer, and any finite components
    left over; the returned sets partition the rest, each carrying a ray
    system verified at ``depth``.  Raises DepthExhausted when no buffer
    level verifies within the depth.
    """
    a0 = frozenset(a0)
    for level in range(max_buffer_level + 1):
        buffer = fam.standard_buffer(a0, level)
        if a0 and not buffer:
            continue
        if not buffer:
            region = Region(family=fam, forbidden=frozenset(),
                            seed=fam.origin())
            system = find_witnessing_rays(fam, region, depth)
            if system is None:
                continue
            return frozenset(), [BoundaryLinkedSet(region=region, boundary=(),
                                                   rays=system)]
        trunc = truncate(fam, buffer, depth)
        outside = set(trunc.graph.vertices) - buffer
        sub = trunc.graph.restriction(
            [e for e in trunc.graph.edge_ids
             if set(trunc.graph.endpoints(e)) <= outside],
            keep_vertices=outside)
        comps = sub.components()
        absorbed: Set[int] = set()
        infinite: List[FrozenSet[int]] = []
        for comp in comps:
            if comp & trunc.frontier:
                infinite.append(comp)
            else:
                absorbed |= comp
        core = frozenset(buffer | absorbed)
        sets: List[BoundaryLinkedSet] = []
        ok = True
        for comp in sorted(infinite, key=min):
            region = Region(family=fam, forbidden=core, seed=min(comp))
            system = find_witnessing_rays(fam, region, depth)
            if system is None:
                ok = False
                break
            rt = truncate_region(region, depth)
            sets.append(BoundaryLinkedSet(region=region, boundary=rt.boundary,
                                          rays=system))
        if ok and sets:
            return core, sets
    raise DepthExhausted(
        f"no buffer level up to {max_buffer_level} verified at depth {depth}")
