"""Connectivity oracles built on the unit-capacity flow kernel.

Everything reduces to breadth-first augmenting paths over edge ids (the
classical edge-disjoint-paths special case of max-flow / min-cut).  Partial
direction maps turn the same kernel into a mixed- or fully-directed oracle;
virtual super-source and super-sink arcs are always one-way.

The k = 1 and k = 2 special cases (connectivity, bridge analysis) are exact
linear-time shortcuts; tests pin them to the flow definition.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ._flow import unit_flow
from .errors import SameVertex, UnknownVertex
from .multigraph import MultiGraph, bridges


@dataclass
class FlowResult:
    """A flow outcome translated back to graph vocabulary."""

    value: int
    paths: List[List[int]]            # edge-id paths (real edges only)
    path_vertices: List[List[int]]    # matching vertex sequences
    cut_side: Optional[FrozenSet[int]]  # source side of a min cut; None if limited


def _real_arrays(g: MultiGraph, forbidden: FrozenSet[int],
                 direction: Optional[Dict[int, Tuple[int, int]]]):
    vkeys, vindex, eids, eu, ev, start, adj = g.csr()
    keep = range(len(eids)) if not forbidden else [i for i, e in enumerate(eids) if e not in forbidden]
    out_eids: List[int] = []
    out_u = array("i")
    out_v = array("i")
    out_d = bytearray()
    for i in keep:
        e = eids[i]
        out_eids.append(e)
        if direction is not None and e in direction:
            tail, head = direction[e]
            out_u.append(vindex[tail])
            out_v.append(vindex[head])
            out_d.append(1)
        else:
            out_u.append(eu[i])
            out_v.append(ev[i])
            out_d.append(0)
    return vkeys, vindex, out_eids, out_u, out_v, out_d


def _adjacency(n: int, eu, ev):
    deg = [0] * n
    for i in range(len(eu)):
        deg[eu[i]] += 1
        deg[ev[i]] += 1
    start = array("i", [0] * (n + 1))
    for i in range(n):
        start[i + 1] = start[i] + deg[i]
    fill = list(start[:n])
    adj = array("i", [0] * (2 * len(eu)))
    for i in range(len(eu)):
        adj[fill[eu[i]]] = i
        fill[eu[i]] += 1
        adj[fill[ev[i]]] = i
        fill[ev[i]] += 1
    return start, adj


def _extract_index_trails(eu, ev, state, s: int, t: int) -> List[List[int]]:
    """Decompose kernel flow into edge-index trails from s to t."""
    out_at: Dict[int, List[int]] = {}
    for i in range(len(eu)):
        st = state[i]
        if st == 0:
            continue
        tail = eu[i] if st == 1 else ev[i]
        out_at.setdefault(tail, []).append(i)
    for lst in out_at.values():
        lst.sort(reverse=True)
    trails: List[List[int]] = []
    while out_at.get(s):
        x = s
        trail: List[int] = []
        while x != t:
            lst = out_at[x]
            e = lst.pop()
            if not lst:
                del out_at[x]
            trail.append(e)
            x = ev[e] if state[e] == 1 else eu[e]
        trails.append(trail)
    return trails


def _simplify(verts: List[int], edges: List[int]) -> Tuple[List[int], List[int]]:
    """Shortcut repeated vertices out of a trail, keeping a simple path."""
    pos = {verts[0]: 0}
    out_v = [verts[0]]
    out_e: List[int] = []
    for i, e in enumerate(edges):
        y = verts[i + 1]
        out_e.append(e)
        if y in pos:
            k = pos[y]
            for drop in out_v[k + 1:]:
                del pos[drop]
            del out_v[k + 1:]
            del out_e[k:]
        else:
            pos[y] = len(out_v)
            out_v.append(y)
    return out_v, out_e


def unit_maxflow(g: MultiGraph, sources: Sequence[int], sinks: Sequence[int],
                 limit: Optional[int] = None, forbidden: Iterable[int] = (),
                 direction: Optional[Dict[int, Tuple[int, int]]] = None,
                 want_paths: bool = False) -> FlowResult:
    """Edge-disjoint paths from a source set to a sink set.

    ``sources`` and ``sinks`` list real vertices; repeating a vertex raises
    the capacity of its virtual attachment arc.  A partial ``direction`` map
    (eid -> (tail, head)) makes those edges one-way; the rest stay
    undirected.  Paths, when requested, are simple.
    """
    forb = frozenset(forbidden)
    for v in list(sources) + list(sinks):
        if not g.has_vertex(v):
            raise UnknownVertex(f"unknown vertex {v}")
    vkeys, vindex, eids, eu, ev, dflag, = _real_arrays(g, forb, direction)
    n = len(vkeys)
    src, dst = n, n + 1
    full_u = array("i", eu)
    full_v = array("i", ev)
    full_d = bytearray(dflag)
    for v in sources:
        full_u.append(src)
        full_v.append(vindex[v])
        full_d.append(1)
    for v in sinks:
        full_u.append(vindex[v])
        full_v.append(dst)
        full_d.append(1)
    start, adj = _adjacency(n + 2, full_u, full_v)
    value, state, reach = unit_flow(n + 2, full_u, full_v, full_d, start, adj, src, dst, limit)
    cut = None
    if reach[src]:
        cut = frozenset(vkeys[i] for i in range(n) if reach[i])
    paths: List[List[int]] = []
    pverts: List[List[int]] = []
    if want_paths and value:
        m_real = len(eids)
        for trail in _extract_index_trails(full_u, full_v, state, src, dst):
            real = [i for i in trail if i < m_real]
            verts: List[int] = []
            if real:
                first = real[0]
                x = full_u[first] if state[first] == 1 else full_v[first]
                verts.append(vkeys[x])
                for i in real:
                    x = full_v[i] if state[i] == 1 else full_u[i]
                    verts.append(vkeys[x])
            else:
                # a source vertex that is itself a sink: single-vertex path
                x = full_v[trail[0]]
                verts.append(vkeys[x])
            sv, se = _simplify(verts, [eids[i] for i in real])
            paths.append(se)
            pverts.append(sv)
    return FlowResult(value, paths, pverts, cut)


def local_edge_connectivity(g: MultiGraph, u: int, v: int,
                            limit: Optional[int] = None) -> int:
    """Maximum number of edge-disjoint u-v paths."""
    if u == v:
        raise SameVertex("local connectivity needs two distinct vertices")
    for x in (u, v):
        if not g.has_vertex(x):
            raise UnknownVertex(f"unknown vertex {x}")
    vkeys, vindex, eids, eu, ev, dflag = _real_arrays(g, frozenset(), None)
    start, adj = _adjacency(len(vkeys), eu, ev)
    value, _state, _reach = unit_flow(len(vkeys), eu, ev, dflag, start, adj,
                                      vindex[u], vindex[v], limit)
    return value


def min_cut_side(g: MultiGraph, u: int, v: int) -> FrozenSet[int]:
    """The u-side of some minimum u-v edge cut."""
    if u == v:
        raise SameVertex("cut sides need two distinct vertices")
    vkeys, vindex, eids, eu, ev, dflag = _real_arrays(g, frozenset(), None)
    start, adj = _adjacency(len(vkeys), eu, ev)
    _value, _state, reach = unit_flow(len(vkeys), eu, ev, dflag, start, adj,
                                      vindex[u], vindex[v], None)
    return frozenset(vkeys[i] for i in range(len(vkeys)) if reach[i])


def edge_disjoint_paths(g: MultiGraph, u: int, v: int,
                        limit: Optional[int] = None) -> Tuple[List[List[int]], List[List[int]]]:
    """A maximum family of edge-disjoint simple u-v paths (ids, vertices)."""
    res = unit_maxflow(g, [u] * min(g.degree(u), limit or g.degree(u)),
                       [v] * min(g.degree(v), limit or g.degree(v)),
                       limit=limit, want_paths=True)
    return res.paths, res.path_vertices


def arc_connectivity(g: MultiGraph, direction: Dict[int, Tuple[int, int]],
                     x: int, y: int, limit: Optional[int] = None) -> int:
    """Arc-disjoint directed x->y paths under a full orientation."""
    res = unit_maxflow(g, [x] * g.degree(x), [y] * g.degree(y),
                       limit=limit, direction=direction)
    return res.value


def vertex_disjoint_count(g: MultiGraph, sources: Iterable[int], sinks: Iterable[int],
                          limit: Optional[int] = None,
                          forbidden: Iterable[int] = ()) -> int:
    """Maximum number of fully vertex-disjoint paths between two vertex sets.

    A vertex lying in both sets contributes a zero-length path.  Edges in
    ``forbidden`` may not be used.  Built on the standard in/out vertex
    splitting; every arc is one-way, which is exact here because
    vertex-disjointness already forbids two paths on one undirected edge.
    """
    forb = frozenset(forbidden)
    vkeys, vindex, eids, eu, ev, _d = _real_arrays(g, forb, None)
    n = len(vkeys)
    # node 2i = v_in, 2i+1 = v_out, then src, dst
    src, dst = 2 * n, 2 * n + 1
    fu = array("i")
    fv = array("i")
    for i in range(n):
        fu.append(2 * i)
        fv.append(2 * i + 1)
    for i in range(len(eids)):
        a, b = eu[i], ev[i]
        fu.append(2 * a + 1)
        fv.append(2 * b)
        fu.append(2 * b + 1)
        fv.append(2 * a)
    srcs = sorted({vindex[v] for v in sources})
    snks = sorted({vindex[v] for v in sinks})
    for i in srcs:
        fu.append(src)
        fv.append(2 * i)
    for i in snks:
        fu.append(2 * i + 1)
        fv.append(dst)
    dirs = bytearray([1]) * len(fu)
    start, adj = _adjacency(2 * n + 2, fu, fv)
    value, _state, _reach = unit_flow(2 * n + 2, fu, fv, dirs, start, adj, src, dst, limit)
    return value


def mixed_reachable(g: MultiGraph, start: int,
                    direction: Dict[int, Tuple[int, int]],
                    forbidden: Iterable[int] = ()) -> FrozenSet[int]:
    """Vertices reachable from ``start`` when ``direction`` pins some edges.

    Undirected (unlisted) edges may be crossed both ways.
    """
    forb = frozenset(forbidden)
    seen = {start}
    queue = deque((start,))
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            if e in forb:
                continue
            d = direction.get(e)
            if d is not None and d[0] != x:
                continue
            y = g.other_endpoint(e, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


# -- global and centered edge connectivity -----------------------------------


def is_k_edge_connected(g: MultiGraph, k: int) -> bool:
    """Every vertex pair joined by k edge-disjoint paths.

    Graphs with at most one vertex pass vacuously.  Uses connectivity and
    bridge shortcuts for k <= 2 and fixed-root flow checks otherwise (a
    minimum cut separates any fixed root from something).
    """
    if k <= 0 or g.num_vertices <= 1:
        return True
    if not g.is_connected():
        return False
    if k == 1:
        return True
    if k == 2:
        return not bridges(g)
    root = min(g.vertices)
    for v in sorted(g.vertices):
        if v == root:
            continue
        if local_edge_connectivity(g, root, v, limit=k) < k:
            return False
    return True


def is_sk_edge_connected(g: MultiGraph, s: int, k: int) -> bool:
    """k edge-disjoint paths between every vertex pair away from ``s``.

    Paths may pass through ``s``.  Equivalent cut form: every vertex set A
    avoiding ``s`` with vertices on both sides of {A, V - A - s} has
    boundary at least k.
    """
    if not g.has_vertex(s):
        raise UnknownVertex(f"unknown vertex {s}")
    others = sorted(g.vertices - {s})
    if len(others) <= 1 or k <= 0:
        return True
    comp_count = sum(1 for c in g.components() if c - {s})
    if comp_count > 1:
        return False
    if k == 1:
        return True
    if k == 2:
        for e in bridges(g):
            u, v = g.endpoints(e)
            gone = g.delete_edges([e])
            for side_root in (u, v):
                side = gone.component_of(side_root)
                if s not in side and (g.vertices - side - {s}):
                    return False
        return True
    root = others[0]
    for v in others[1:]:
        if local_edge_connectivity(g, root, v, limit=k) < k:
            return False
    return True
