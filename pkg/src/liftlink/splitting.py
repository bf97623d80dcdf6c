"""Contracting boundary-linked regions and splitting them off again.

The engine contracts each boundary-linked set to a single vertex, then
repeatedly lifts pairs of edges at those vertices.  A pair is only lifted
when (a) the lift preserves centered k-edge-connectivity and (b) the two
escape rays anchored at the pair are linked by many vertex-disjoint
connectors inside the region; each executed lift records a concrete
linking path so later stages can expand synthetic edges back into the
region.  Vertices of even degree disappear entirely; odd ones stop at
degree k+1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (ConsistencyError, DepthExhausted, OddK,
                     PreconditionViolated, Stuck)
from .families import LazyFamily, RegionTruncation, truncate_region
from .flows import is_k_edge_connected, vertex_disjoint_count
from .lifting import is_liftable
from .multigraph import MultiGraph
from .rays import BoundaryLinkedSet, RaySystem


@dataclass(frozen=True)
class LinkStep:
    """One executed lift at a contracted vertex, with its linking path.

    ``lifted`` holds the two edge ids removed at the contracted vertex,
    ``created`` the replacement edge id (negative, synthetic) or None when
    the pair closed on a single vertex and was simply dropped.  The path
    joins the two rays' entry vertices inside the region.
    """

    set_index: int
    lifted: Tuple[int, int]
    created: Optional[int]
    rays: Tuple[int, int]
    path_vertices: Tuple[int, ...]
    path_edges: Tuple[int, ...]


@dataclass(frozen=True)
class SplitResult:
    """Final graph plus the full lift record."""

    graph: MultiGraph
    steps: Tuple[LinkStep, ...]
    remaining: Dict[int, int]  # set index -> contracted vertex still present
    depth: int

    def steps_for(self, eid: int) -> Optional[LinkStep]:
        for s in self.steps:
            if s.created == eid:
                return s
        return None


def contracted_vertex(index: int) -> int:
    """Vertex id used for the contraction of set ``index`` (negative)."""
    return -(index + 1)


def contracted_instance(fam: LazyFamily, core: Iterable[int],
                        sets: Sequence[BoundaryLinkedSet]
                        ) -> Tuple[MultiGraph, Dict[int, int]]:
    """Finite graph with every boundary-linked set shrunk to one vertex.

    Core-internal edges keep their canonical ids; each boundary edge keeps
    its id but now ends at the set's contracted vertex.
    """
    core = frozenset(core)
    vertices: Set[int] = set(core)
    edges: Dict[int, Tuple[int, int]] = {}
    for v in sorted(core):
        for eid, w in fam.neighbors(v):
            if w in core and eid not in edges:
                edges[eid] = (min(v, w), max(v, w))
    cmap: Dict[int, int] = {}
    for i, blk in enumerate(sets):
        c = contracted_vertex(i)
        if c in vertices:
            raise ConsistencyError(f"vertex id {c} already in use")
        cmap[i] = c
        vertices.add(c)
        for eid, outer, _inner in blk.boundary:
            if outer not in core:
                raise PreconditionViolated(
                    f"boundary edge {eid} does not land in the core")
            if eid in edges:
                raise ConsistencyError(f"edge id {eid} seen twice")
            edges[eid] = (outer, c)
    return MultiGraph(vertices, edges), cmap


def _materialize(fam: LazyFamily, ray, g: MultiGraph
                 ) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """The ray's vertices and edges inside ``g``, boundary edge excluded."""
    seq_v = list(ray.prefix)
    seq_e = list(ray.prefix_edges)
    verts: List[int] = []
    edges: List[int] = []
    cap = g.num_vertices + len(seq_v) + 2
    idx = 1
    while idx < cap:
        while idx >= len(seq_v):
            nxt, eid = fam.ray_step(seq_v[-1], ray.tail)
            seq_v.append(nxt)
            seq_e.append(eid)
        v = seq_v[idx]
        if not g.has_vertex(v):
            break
        if idx >= 2 and not g.has_edge(seq_e[idx - 1]):
            break
        if idx >= 2:
            edges.append(seq_e[idx - 1])
        verts.append(v)
        idx += 1
    return tuple(verts), tuple(edges)


def _bfs_path(g: MultiGraph, starts: Iterable[int], goals: Iterable[int],
              forbidden: FrozenSet[int]
              ) -> Optional[Tuple[List[int], List[int]]]:
    """Shortest path between two vertex sets avoiding the forbidden edges."""
    goal_set = set(goals)
    parent: Dict[int, Tuple[Optional[int], Optional[int]]] = {}
    queue: deque = deque()
    for s in sorted(set(starts)):
        if s in goal_set:
            return [s], []
        parent[s] = (None, None)
        queue.append(s)
    while queue:
        v = queue.popleft()
        for e in g.incident(v):
            if e in forbidden:
                continue
            w = g.other_endpoint(e, v)
            if w in parent:
                continue
            parent[w] = (v, e)
            if w in goal_set:
                vs, es = [w], []
                while True:
                    pv, pe = parent[vs[-1]]
                    if pv is None:
                        break
                    es.append(pe)
                    vs.append(pv)
                vs.reverse()
                es.reverse()
                return vs, es
            queue.append(w)
    return None


def _rays_linked(rt: RegionTruncation, mats, active: Iterable[int],
                 r1: int, r2: int, t: int) -> bool:
    """At least ``t`` vertex-disjoint connectors between two rays.

    Connector endpoints lie on the rays; connector edges avoid every
    active ray (including the two being joined).  ``mats`` maps ray index
    to its (vertices, edges) materialization.
    """
    if t <= 0:
        return True
    forbidden = set()
    for r in active:
        forbidden.update(mats[r][1])
    return vertex_disjoint_count(rt.graph, mats[r1][0], mats[r2][0],
                                 limit=t, forbidden=forbidden) >= t


def r_graph(system: RaySystem, depth: int, t: int,
            ray_indices: Optional[Sequence[int]] = None,
            rt: Optional[RegionTruncation] = None) -> MultiGraph:
    """Linkedness graph on the region's boundary edges.

    Nodes are boundary edge ids; two are joined when their rays admit at
    least ``t`` vertex-disjoint connectors inside the region, avoiding all
    considered rays.  A depth-limited approximation: absent edges may
    appear at larger depth, present ones never vanish.
    """
    fam = system.region.family
    if rt is None:
        rt = truncate_region(system.region, depth)
    indices = sorted(ray_indices) if ray_indices is not None else list(
        range(len(system.rays)))
    mats = {r: _materialize(fam, system.rays[r], rt.graph) for r in indices}
    nodes = {r: system.rays[r].first_edge for r in indices}
    edges: Dict[int, Tuple[int, int]] = {}
    eid = 0
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            ra, rb = indices[a], indices[b]
            if _rays_linked(rt, mats, indices, ra, rb, t):
                edges[eid] = (min(nodes[ra], nodes[rb]),
                              max(nodes[ra], nodes[rb]))
                eid += 1
    return MultiGraph(nodes.values(), edges)


def _link_path(rt: RegionTruncation,
               mats: Sequence[Tuple[Tuple[int, ...], Tuple[int, ...]]],
               active: Iterable[int], r1: int, r2: int,
               used: Set[int]) -> Optional[Tuple[List[int], List[int]]]:
    """A concrete path joining the entry vertices of two rays.

    The path may run along the two rays themselves but not along any other
    active ray, and must avoid edges already spent on earlier paths.
    """
    forbidden = set(used)
    for r in active:
        if r not in (r1, r2):
            forbidden.update(mats[r][1])
    start = mats[r1][0][0] if mats[r1][0] else None
    goal = mats[r2][0][0] if mats[r2][0] else None
    if start is None or goal is None:
        return None
    return _bfs_path(rt.graph, [start], [goal], frozenset(forbidden))


def compatible_splitting(fam: LazyFamily, core: Iterable[int],
                         sets: Sequence[BoundaryLinkedSet], k: int,
                         depth: int = 16, depth_cap: int = 256,
                         t: Optional[int] = None) -> SplitResult:
    """Lift away the contracted vertices, recording a path per lift.

    Requires even ``k`` and a k-edge-connected contraction.  Retries with
    doubled depth whenever no admissible pair is found, up to the cap.
    """
    if k <= 0 or k % 2:
        raise OddK("splitting requires even positive k")
    core = frozenset(core)
    threshold = k + 1 if t is None else t
    d = depth
    last: Optional[Stuck] = None
    while d <= depth_cap:
        try:
            return _attempt(fam, core, sets, k, d, threshold)
        except Stuck as exc:
            last = exc
            d *= 2
    raise DepthExhausted(
        f"no admissible lift pair up to depth {depth_cap}: {last}")


def _attempt(fam: LazyFamily, core: FrozenSet[int],
             sets: Sequence[BoundaryLinkedSet], k: int, depth: int,
             t: int) -> SplitResult:
    h, cmap = contracted_instance(fam, core, sets)
    if not is_k_edge_connected(h, k):
        raise PreconditionViolated(
            f"contracted instance is not {k}-edge-connected")
    contracted_ids = set(cmap.values())
    anchors: List[Dict[int, int]] = []
    truncs: List[RegionTruncation] = []
    mats: List[List[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = []
    used: List[Set[int]] = []
    for blk in sets:
        rt = truncate_region(blk.region, depth)
        truncs.append(rt)
        mats.append([_materialize(fam, ray, rt.graph)
                     for ray in blk.rays.rays])
        anchors.append({ray.first_edge: idx
                        for idx, ray in enumerate(blk.rays.rays)})
        used.append(set())
    steps: List[LinkStep] = []
    next_eid = -1
    for i in range(len(sets)):
        c = cmap[i]
        start_deg = h.degree(c)
        target = 0 if start_deg % 2 == 0 else k + 1
        if target > start_deg:
            raise ConsistencyError(
                f"odd contracted vertex of degree {start_deg} below {k + 1}")
        while h.degree(c) > target:
            pick = _find_pick(h, c, k, anchors, i, contracted_ids,
                              truncs[i], mats[i], used[i], t)
            if pick is None:
                raise Stuck(
                    f"no liftable linked pair at set {i} (depth {depth})")
            e1, e2, r1, r2, path = pick
            vs, es = path
            h, created = h.lift(c, e1, e2, new_eid=next_eid)
            if created is not None:
                next_eid -= 1
            amap = anchors[i]
            del amap[e1]
            del amap[e2]
            _inherit_anchors(anchors, i, e1, e2, created)
            used[i].update(es)
            steps.append(LinkStep(set_index=i, lifted=(e1, e2),
                                  created=created, rays=(r1, r2),
                                  path_vertices=tuple(vs),
                                  path_edges=tuple(es)))
        if target == 0:
            h = h.delete_vertex(c)
            del cmap[i]
    if not is_k_edge_connected(h, k):
        raise ConsistencyError(
            f"split graph lost {k}-edge-connectivity")
    return SplitResult(graph=h, steps=tuple(steps), remaining=dict(cmap),
                       depth=depth)


def _find_pick(h: MultiGraph, c: int, k: int,
               anchors: List[Dict[int, int]], i: int,
               contracted_ids: Set[int], rt: RegionTruncation,
               mat: List[Tuple[Tuple[int, ...], Tuple[int, ...]]],
               used: Set[int], t: int):
    amap = anchors[i]
    current = sorted(h.incident(c))
    for e in current:
        if e not in amap:
            raise ConsistencyError(f"edge {e} at contracted vertex lost its ray")
    active = sorted(amap.values())
    for a in range(len(current)):
        for b in range(a + 1, len(current)):
            e1, e2 = current[a], current[b]
            r1, r2 = amap[e1], amap[e2]
            if r1 == r2:
                continue
            x = h.other_endpoint(e1, c)
            y = h.other_endpoint(e2, c)
            if x == y and x in contracted_ids:
                # the replacement would close a loop on a partner set's
                # vertex, silently dropping two of its boundary edges
                continue
            if not is_liftable(h, c, k, e1, e2, precheck=False):
                continue
            if not _rays_linked(rt, mat, active, r1, r2, t):
                continue
            path = _link_path(rt, mat, active, r1, r2, used)
            if path is None:
                continue
            return e1, e2, r1, r2, path
    return None


def _inherit_anchors(anchors: List[Dict[int, int]], active_set: int,
                     e1: int, e2: int, created: Optional[int]) -> None:
    """Re-anchor a replacement edge for every other set it still bounds."""
    for m, amap in enumerate(anchors):
        if m == active_set:
            continue
        for old in (e1, e2):
            if old in amap:
                if created is None:
                    raise ConsistencyError(
                        "partner boundary edge vanished in a dropped lift")
                if created in amap:
                    raise ConsistencyError(
                        "replacement edge would anchor two rays of one set")
                amap[created] = amap.pop(old)


def expand_lift(eid: int, u: int, v: int,
                by_created: Dict[int, LinkStep],
                ends: Dict[int, Tuple[int, int]]) -> Tuple[List[int], List[int]]:
    """Walk from u to v realizing one contracted-graph edge in the family.

    ``ends`` maps every original boundary edge to its (outer, inner)
    endpoints; synthetic edges unroll into the two lifted edges joined by
    the recorded linking path.  Lifted edges are always original: the
    contraction puts every synthetic edge between core vertices, so it can
    never be lifted again.
    """
    step = by_created.get(eid)
    if step is None:
        return [u, v], [eid]
    e1, e2 = step.lifted
    if e1 in by_created or e2 in by_created:
        raise ConsistencyError("a lifted edge was itself created by a lift; "
                               "components sharing edges are not supported")
    o1, i1 = ends[e1]
    o2, i2 = ends[e2]
    pv = list(step.path_vertices)
    pe = list(step.path_edges)
    if pv[0] != i1 or pv[-1] != i2:
        raise ConsistencyError("recorded linking path does not join the "
                               "lifted pair's entry vertices")
    vs = [o1] + pv + [o2]
    es = [e1] + pe + [e2]
    if (u, v) == (o2, o1):
        vs.reverse()
        es.reverse()
    elif (u, v) != (o1, o2):
        raise ConsistencyError(f"edge {eid} expands between {o1} and {o2}, "
                               f"not {u} and {v}")
    return vs, es
