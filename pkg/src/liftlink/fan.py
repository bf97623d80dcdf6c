"""Edge-disjoint fans from a hub vertex onto a bundle of escape rays.

Given m edge-disjoint rays sharing one end and a finite edge set to avoid,
this module produces a hub vertex deep in the graph together with m
pairwise edge-disjoint paths, one per ray, each running from the hub all
the way back along a long initial segment of its ray to the ray's origin.

The construction peels off a sequence of nested separators ("layers"),
routes hub paths through a contracted auxiliary graph, and reattaches the
ray segments; all results are depth-limited and reported with a full audit
trail so an independent checker can replay them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import ConsistencyError, DepthExhausted, PreconditionViolated
from .families import LazyFamily, Ray, Region, truncate_region
from .flows import unit_maxflow
from .multigraph import MultiGraph
from .rays import RaySystem

_HUB_SCAN_CAP = 500000


@dataclass(frozen=True)
class FanRequest:
    """Inputs for a fan: rays, connectivity budget, edges to dodge.

    ``system`` carries both the rays and the region they live in (the
    region may have an empty forbidden set, meaning the whole graph).
    ``avoid`` is a finite edge set disjoint from the rays.  ``length``
    lower-bounds the ray initial segment each returned path must contain;
    ``None`` picks a default comfortably clearing the avoided edges.
    """

    k: int
    system: RaySystem
    avoid: FrozenSet[int] = frozenset()
    length: Optional[int] = None

    @property
    def m(self) -> int:
        return len(self.system.rays)


@dataclass(frozen=True)
class LayerStructure:
    """Audit trail of the nested separator construction.

    ``layers[0]`` is the seed layer (avoided-edge endpoints plus ray
    segments); ``layers[i]`` for i >= 1 is a connected separator inside
    ``components[i-1]``.  ``components`` lists the surviving deep
    components C_1 .. C_{m+1}.  ``base`` is the removed set that defines
    C_1: the seed layer plus every ray's initial run to its last visit
    there.  ``r0_cut[i]`` / ``exit_cut[i]`` index, per ray, the last visit
    to the seed layer and the first visit to the deepest separator.
    """

    layers: Tuple[FrozenSet[int], ...]
    layer_edges: Tuple[Tuple[int, ...], ...]
    components: Tuple[FrozenSet[int], ...]
    base: FrozenSet[int]
    segment: int
    r0_cut: Tuple[int, ...]
    exit_cut: Tuple[int, ...]
    walks: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...] = field(repr=False)


@dataclass(frozen=True)
class FanResult:
    """A hub and one path per ray, plus everything needed to audit them.

    ``paths[i]`` runs from ``hub`` to the origin of ray i and finishes
    with at least ``segment_lengths[i]`` consecutive initial edges of that
    ray.  The paths are pairwise edge-disjoint and avoid the requested
    edge set.
    """

    hub: Optional[int]
    paths: Tuple[Tuple[int, ...], ...]
    path_edges: Tuple[Tuple[int, ...], ...]
    segment_lengths: Tuple[int, ...]
    layers: Tuple[FrozenSet[int], ...]
    depth: int


def _reach(fam: LazyFamily, ray: Ray, g: MultiGraph,
           horizon: int) -> Tuple[List[int], List[int], int]:
    """Materialized vertices/edges plus the index of the first exit from g."""
    vs = ray.vertices(fam, horizon + 1)
    es = ray.edges(fam, horizon)
    inside = 1
    while inside < len(vs) and g.has_vertex(vs[inside]):
        inside += 1
    return vs, es, inside


def _component(g: MultiGraph, removed: Set[int], start: int) -> FrozenSet[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in g.incident(v):
            w = g.other_endpoint(e, v)
            if w not in seen and w not in removed:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def _end_component(g: MultiGraph, removed: Set[int],
                   reps: Sequence[int], what: str) -> FrozenSet[int]:
    """Component of g - removed holding every ray's deep representative."""
    for rep in reps:
        if rep in removed:
            raise DepthExhausted(f"{what} swallows a ray tail; deepen the truncation")
    comp = _component(g, removed, reps[0])
    for rep in reps[1:]:
        if rep not in comp:
            raise DepthExhausted(f"ray tails split by {what}; deepen the truncation")
    return comp


def _spanning_tree(g: MultiGraph, allowed: FrozenSet[int],
                   targets: Sequence[int]) -> Tuple[FrozenSet[int], Tuple[int, ...]]:
    """Vertices and edges of a BFS tree inside ``allowed`` joining ``targets``."""
    root = min(targets)
    parent: Dict[int, Tuple[int, int]] = {root: (root, -1)}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in g.incident(v):
            w = g.other_endpoint(e, v)
            if w in allowed and w not in parent:
                parent[w] = (v, e)
                queue.append(w)
    verts: Set[int] = set()
    edges: Set[int] = set()
    for t in targets:
        if t not in parent:
            raise ConsistencyError("separator target unreachable inside its component")
        v = t
        while v != root:
            verts.add(v)
            p, e = parent[v]
            edges.add(e)
            v = p
        verts.add(root)
    return frozenset(verts), tuple(sorted(edges))


def build_layers(req: FanRequest, depth: int) -> LayerStructure:
    """Grow the nested separators L_0 .. L_m and components C_1 .. C_{m+1}.

    The seed layer holds the avoided edges' endpoints and an initial
    segment of every ray; each later layer is a connected separator
    shielding everything before it from the deep component the rays
    escape into.
    """
    system = req.system
    fam = system.region.family
    m = req.m
    if m > req.k:
        raise PreconditionViolated(f"{m} rays exceed the connectivity budget {req.k}")
    rt = truncate_region(system.region, depth)
    g = rt.graph
    avoid_vertices: Set[int] = set()
    for e in req.avoid:
        if not g.has_edge(e):
            raise DepthExhausted(f"avoided edge {e} outside the depth-{depth} truncation")
        avoid_vertices.update(g.endpoints(e))
    seg = req.length if req.length is not None else 3 * (m + len(avoid_vertices))
    seg = max(seg, 1)

    horizon = 2 * max(2, depth)
    walks = []
    for ray in system.rays:
        vs, es, inside = _reach(fam, ray, g, horizon)
        if set(es[:horizon]) & req.avoid:
            raise PreconditionViolated("avoided edges lie on a ray")
        if inside <= seg + 1:
            raise DepthExhausted("requested segment outruns the truncation")
        walks.append((vs, es, inside))

    seed_layer: Set[int] = set(avoid_vertices)
    for vs, _es, _inside in walks:
        seed_layer.update(vs[:seg + 1])

    if m == 0:
        return LayerStructure(layers=(frozenset(seed_layer),), layer_edges=((),),
                              components=(), base=frozenset(seed_layer),
                              segment=seg, r0_cut=(), exit_cut=(), walks=())

    r0_cut = []
    base: Set[int] = set(seed_layer)
    for vs, _es, inside in walks:
        last = max(j for j in range(inside) if vs[j] in seed_layer)
        r0_cut.append(last)
        base.update(vs[:last + 1])

    reps = [vs[inside - 1] for vs, _es, inside in walks]
    layers: List[FrozenSet[int]] = [frozenset(seed_layer)]
    layer_edges: List[Tuple[int, ...]] = [()]
    components: List[FrozenSet[int]] = []
    removed: Set[int] = set(base)
    for i in range(1, m + 1):
        comp = _end_component(g, removed, reps, f"layer {i - 1}")
        components.append(comp)
        targets = sorted({w for v in removed if g.has_vertex(v)
                          for e in g.incident(v)
                          for w in [g.other_endpoint(e, v)] if w in comp})
        if not targets:
            raise ConsistencyError("deep component detached from the previous layer")
        verts, edges = _spanning_tree(g, comp, targets)
        layers.append(verts)
        layer_edges.append(edges)
        removed = set(verts)
    components.append(_end_component(g, removed, reps, f"layer {m}"))

    exit_cut = []
    top = layers[m]
    for vs, _es, inside in walks:
        hits = [j for j in range(inside) if vs[j] in top]
        if not hits:
            raise DepthExhausted("a ray misses the deepest separator; deepen the truncation")
        exit_cut.append(hits[0])

    return LayerStructure(layers=tuple(layers), layer_edges=tuple(layer_edges),
                          components=tuple(components), base=frozenset(base),
                          segment=seg, r0_cut=tuple(r0_cut), exit_cut=tuple(exit_cut),
                          walks=tuple((tuple(vs), tuple(es)) for vs, es, _i in walks))


def _pick_hub(fam: LazyFamily, comp: FrozenSet[int]) -> int:
    for n, v in enumerate(fam.enumerate_vertices()):
        if v in comp:
            return v
        if n >= _HUB_SCAN_CAP:
            break
    return min(comp)


def _first_visit_prefix(vertices: List[int], edges: List[int],
                        stop: FrozenSet[int]) -> Tuple[List[int], List[int]]:
    for j, v in enumerate(vertices):
        if v in stop:
            return vertices[:j + 1], edges[:j]
    raise ConsistencyError("hub path never meets the first separator")


def _shortcut(vertices: List[int], edges: List[int]) -> Tuple[List[int], List[int]]:
    """Remove closed detours so the walk becomes a simple path."""
    out_v = [vertices[0]]
    out_e: List[int] = []
    at = {vertices[0]: 0}
    for i in range(1, len(vertices)):
        v = vertices[i]
        if v in at:
            j = at[v]
            for w in out_v[j + 1:]:
                del at[w]
            del out_v[j + 1:]
            del out_e[j:]
        else:
            at[v] = len(out_v)
            out_v.append(v)
            out_e.append(edges[i - 1])
    return out_v, out_e


def _segment_run(path_edges: Sequence[int], ray_edges: Sequence[int]) -> int:
    """Longest q with the path finishing on the ray's first q edges reversed."""
    q = 0
    while (q < len(ray_edges) and q < len(path_edges)
           and path_edges[-1 - q] == ray_edges[q]):
        q += 1
    return q


def linking_fan(req: FanRequest, depth: int) -> FanResult:
    """Hub plus one edge-disjoint path per ray, each ending down its ray.

    Peels the layer structure, links the hub to the first separator,
    contracts the seed layer to a single terminal in a small auxiliary
    graph, routes one path per ray through it, and reattaches the ray
    initial runs.  Raises DepthExhausted whenever the truncation is too
    shallow for any stage; retrying with a larger depth is always safe.
    """
    system = req.system
    fam = system.region.family
    m = req.m
    ls = build_layers(req, depth)
    if m == 0:
        return FanResult(hub=None, paths=(), path_edges=(), segment_lengths=(),
                         layers=ls.layers, depth=depth)
    rt = truncate_region(system.region, depth)
    g = rt.graph

    hub = _pick_hub(fam, ls.components[m])
    first_sep = ls.layers[1]
    c1 = ls.components[0]
    c1_edges = [e for e in g.edge_ids
                if all(v in c1 for v in g.endpoints(e))]
    arena = g.restriction(c1_edges, keep_vertices=c1)
    sinks = [v for v in sorted(first_sep) for _ in range(m)]
    spokes = unit_maxflow(arena, [hub] * m, sinks, want_paths=True)
    if spokes.value < m:
        raise DepthExhausted("hub cannot reach the first separator m ways; deepen")

    aux_hub = -1
    aux_vertices: Set[int] = {aux_hub, hub}
    aux_edges: Dict[int, Tuple[int, int]] = {}

    def put(eid: int, u: int, v: int) -> None:
        old = aux_edges.get(eid)
        if old is not None and set(old) != {u, v}:
            raise ConsistencyError(f"edge {eid} enters the auxiliary graph twice")
        aux_edges[eid] = (u, v)
        aux_vertices.add(u)
        aux_vertices.add(v)

    for verts, edges in zip(ls.layers[1:], ls.layer_edges[1:]):
        aux_vertices.update(verts)
        for e in edges:
            u, v = g.endpoints(e)
            put(e, u, v)
    for pv, pe in zip(spokes.path_vertices, spokes.paths):
        tv, te = _first_visit_prefix(pv, pe, first_sep)
        for i, e in enumerate(te):
            put(e, tv[i], tv[i + 1])

    entry: Dict[int, int] = {}
    for idx, (vs, es) in enumerate(ls.walks):
        a, b = ls.r0_cut[idx], ls.exit_cut[idx]
        put(es[a], aux_hub, vs[a + 1])
        entry[es[a]] = idx
        for j in range(a + 1, b):
            put(es[j], vs[j], vs[j + 1])

    aux = MultiGraph(aux_vertices, aux_edges)
    bundle = unit_maxflow(aux, [aux_hub] * m, [hub] * m, want_paths=True)
    if bundle.value < m:
        raise DepthExhausted("auxiliary hub linkage came up short; deepen")

    paths: List[Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = [None] * m
    lengths = [0] * m
    for pv, pe in zip(bundle.path_vertices, bundle.paths):
        if pv[0] != aux_hub:
            pv, pe = pv[::-1], pe[::-1]
        idx = entry.get(pe[0])
        if idx is None or pv[0] != aux_hub:
            raise ConsistencyError("auxiliary path does not start at the seed terminal")
        vs, es = ls.walks[idx]
        a = ls.r0_cut[idx]
        walk_v = list(pv[1:][::-1]) + [vs[j] for j in range(a, -1, -1)]
        walk_e = list(pe[1:][::-1]) + [es[a]] + [es[j] for j in range(a - 1, -1, -1)]
        sv, se = _shortcut(walk_v, walk_e)
        if sv[0] != hub or sv[-1] != vs[0]:
            raise ConsistencyError("fan path lost an endpoint while shortcutting")
        paths[idx] = (tuple(sv), tuple(se))
        lengths[idx] = _segment_run(se, es)
    if any(p is None for p in paths):
        raise ConsistencyError("auxiliary linkage reused a ray attachment")

    for q in lengths:
        if q < ls.segment:
            raise ConsistencyError("shortcutting ate into a ray segment")

    return FanResult(hub=hub,
                     paths=tuple(p[0] for p in paths),       # type: ignore[index]
                     path_edges=tuple(p[1] for p in paths),  # type: ignore[index]
                     segment_lengths=tuple(lengths),
                     layers=ls.layers, depth=depth)
