"""Finite multigraphs with stable integer edge ids.

The model: loopless multigraphs whose parallel edges are distinct objects.
Vertices are opaque integers; every edge carries an id that survives all
derived-graph constructions (deletion, contraction, restriction), so paths,
cuts and certificates can always be expressed as edge-id sequences.  Newly
created edges (by :meth:`MultiGraph.add_edge` or :meth:`MultiGraph.lift`)
draw fresh ids from a monotone counter that never reuses an old id.

Instances are immutable by convention: mutating operations return a new
graph and never touch the receiver.  This keeps certified pipelines
replayable - a certificate can reference any intermediate graph by value.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import (
    DisconnectedContractionSet,
    DisconnectedGraph,
    NonIntersectingSets,
    NotEulerian,
    NotIncident,
    SameEdge,
    SameVertex,
    UnknownVertex,
)


@dataclass(frozen=True)
class VertexCut:
    """A vertex set together with its boundary edge ids."""

    side: FrozenSet[int]
    boundary: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class ContractionMap:
    """Bookkeeping for a single-set contraction.

    ``inner_edges`` are the deleted ids (both ends inside the set);
    ``boundary_endpoint`` maps each surviving edge that used to touch the
    set to its original endpoint inside it.
    """

    new_vertex: int
    members: FrozenSet[int]
    inner_edges: Tuple[int, ...]
    boundary_endpoint: Dict[int, int] = field(default_factory=dict)


class MultiGraph:
    """Immutable loopless multigraph over integer vertex and edge ids."""

    __slots__ = ("_vertices", "_edges", "_adj", "_next_eid", "lift_origin", "_csr")

    def __init__(self, vertices: Iterable[int] = (), edges: Optional[Dict[int, Tuple[int, int]]] = None,
                 lift_origin: Optional[Dict[int, Tuple[int, int, int]]] = None,
                 _next_eid: Optional[int] = None):
        vset = set(vertices)
        emap: Dict[int, Tuple[int, int]] = {}
        if edges:
            for eid, (u, v) in edges.items():
                if u == v:
                    raise SameVertex(f"edge {eid} would be a loop at {u}")
                if u not in vset or v not in vset:
                    raise UnknownVertex(f"edge {eid} touches unknown vertex")
                emap[int(eid)] = (u, v)
        self._vertices = frozenset(vset)
        self._edges = emap
        adj: Dict[int, List[int]] = {v: [] for v in vset}
        for eid in sorted(emap):
            u, v = emap[eid]
            adj[u].append(eid)
            adj[v].append(eid)
        self._adj = adj
        if _next_eid is None:
            _next_eid = max(emap) + 1 if emap else 0
        self._next_eid = _next_eid
        self.lift_origin = dict(lift_origin) if lift_origin else {}
        self._csr = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edge_list(cls, pairs: Iterable[Tuple[int, int]], vertices: Iterable[int] = ()) -> "MultiGraph":
        """Build a graph from (u, v) pairs; ids are assigned 0, 1, 2, ..."""
        pairs = list(pairs)
        vset = set(vertices)
        for u, v in pairs:
            vset.add(u)
            vset.add(v)
        return cls(vset, {i: (u, v) for i, (u, v) in enumerate(pairs)})

    # -- basic queries ----------------------------------------------------

    @property
    def vertices(self) -> FrozenSet[int]:
        return self._vertices

    @property
    def edges(self) -> Dict[int, Tuple[int, int]]:
        return dict(self._edges)

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(self._edges))

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._vertices

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def endpoints(self, eid: int) -> Tuple[int, int]:
        try:
            return self._edges[eid]
        except KeyError:
            raise NotIncident(f"no edge with id {eid}") from None

    def other_endpoint(self, eid: int, x: int) -> int:
        u, v = self.endpoints(eid)
        if x == u:
            return v
        if x == v:
            return u
        raise NotIncident(f"edge {eid} does not touch vertex {x}")

    def incident(self, v: int) -> Tuple[int, ...]:
        """Ids of the edges at ``v`` in ascending order."""
        try:
            return tuple(self._adj[v])
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted({self.other_endpoint(e, v) for e in self.incident(v)}))

    def parallel_count(self, u: int, v: int) -> int:
        a, b = (u, v) if u <= v else (v, u)
        return sum(1 for e in self.incident(a) if self.other_endpoint(e, a) == b)

    # -- cuts --------------------------------------------------------------

    def boundary(self, side: Iterable[int]) -> Tuple[int, ...]:
        """Edge ids with exactly one endpoint in ``side``."""
        inside = set(side)
        for v in inside:
            if v not in self._vertices:
                raise UnknownVertex(f"unknown vertex {v}")
        out = []
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            if (u in inside) != (v in inside):
                out.append(eid)
        return tuple(out)

    def boundary_between(self, a: Iterable[int], b: Iterable[int]) -> Tuple[int, ...]:
        """Edge ids with one endpoint in ``a`` and the other in ``b``."""
        aset, bset = set(a), set(b)
        out = []
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            if (u in aset and v in bset) or (u in bset and v in aset):
                out.append(eid)
        return tuple(out)

    def cut(self, side: Iterable[int]) -> VertexCut:
        s = frozenset(side)
        return VertexCut(s, self.boundary(s))

    # -- derived graphs ----------------------------------------------------

    def _clone(self, vertices, edges) -> "MultiGraph":
        g = MultiGraph(vertices, edges, lift_origin=self.lift_origin, _next_eid=self._next_eid)
        return g

    def add_vertex(self, v: int) -> "MultiGraph":
        if v in self._vertices:
            return self
        return self._clone(self._vertices | {v}, self._edges)

    def add_edge(self, u: int, v: int,
                 eid: Optional[int] = None) -> Tuple["MultiGraph", int]:
        if u == v:
            raise SameVertex("loops are not supported")
        if u not in self._vertices or v not in self._vertices:
            raise UnknownVertex(f"cannot add edge {u}-{v}")
        if eid is None:
            eid = self._next_eid
        elif eid in self._edges:
            raise SameEdge(f"edge id {eid} already present")
        edges = dict(self._edges)
        edges[eid] = (u, v)
        g = MultiGraph(self._vertices, edges, lift_origin=self.lift_origin,
                       _next_eid=max(self._next_eid, eid + 1))
        return g, eid

    def delete_edges(self, eids: Iterable[int]) -> "MultiGraph":
        drop = set(eids)
        for e in drop:
            if e not in self._edges:
                raise NotIncident(f"no edge with id {e}")
        edges = {e: uv for e, uv in self._edges.items() if e not in drop}
        return self._clone(self._vertices, edges)

    def delete_vertex(self, v: int) -> "MultiGraph":
        if v not in self._vertices:
            raise UnknownVertex(f"unknown vertex {v}")
        edges = {e: uv for e, uv in self._edges.items() if v not in uv}
        return self._clone(self._vertices - {v}, edges)

    def restriction(self, eids: Iterable[int], keep_vertices: Iterable[int] = ()) -> "MultiGraph":
        """Subgraph spanned by the given edge ids (plus optional vertices)."""
        keep = set(eids)
        vset = set(keep_vertices)
        edges = {}
        for e in keep:
            uv = self._edges.get(e)
            if uv is None:
                raise NotIncident(f"no edge with id {e}")
            edges[e] = uv
            vset.update(uv)
        return self._clone(vset, edges)

    def lift(self, s: int, e: int, f: int,
             new_eid: Optional[int] = None) -> Tuple["MultiGraph", Optional[int]]:
        """Replace the edges ``e = sx`` and ``f = sy`` by a new edge ``xy``.

        When ``x == y`` the pair is simply deleted (the would-be loop is
        dropped).  Returns the new graph and the id of the replacement edge,
        or ``None`` in the deletion case.  The replacement is recorded in
        ``lift_origin`` as ``new_id -> (e, f, s)``.
        """
        if e == f:
            raise SameEdge("lifting needs two distinct edges")
        x = self.other_endpoint(e, s)
        y = self.other_endpoint(f, s)
        edges = dict(self._edges)
        del edges[e]
        del edges[f]
        if x == y:
            return self._clone(self._vertices, edges), None
        if new_eid is None:
            eid = self._next_eid
        elif new_eid in self._edges:
            raise SameEdge(f"edge id {new_eid} already present")
        else:
            eid = new_eid
        edges[eid] = (x, y)
        origin = dict(self.lift_origin)
        origin[eid] = (e, f, s)
        g = MultiGraph(self._vertices, edges, lift_origin=origin,
                       _next_eid=max(self._next_eid, eid + 1))
        return g, eid

    def contract(self, members: Iterable[int], new_vertex: Optional[int] = None) -> Tuple["MultiGraph", ContractionMap]:
        """Contract a connected vertex set onto a single fresh vertex."""
        mset = frozenset(members)
        if not mset:
            raise UnknownVertex("cannot contract the empty set")
        for v in mset:
            if v not in self._vertices:
                raise UnknownVertex(f"unknown vertex {v}")
        if not self._connected_within(mset):
            raise DisconnectedContractionSet(f"{sorted(mset)} does not induce a connected subgraph")
        if new_vertex is None:
            new_vertex = max(self._vertices) + 1
        elif new_vertex in self._vertices and new_vertex not in mset:
            raise SameVertex(f"vertex id {new_vertex} already in use")
        inner = []
        boundary_endpoint: Dict[int, int] = {}
        edges: Dict[int, Tuple[int, int]] = {}
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            iu, iv = u in mset, v in mset
            if iu and iv:
                inner.append(eid)
            elif iu:
                boundary_endpoint[eid] = u
                edges[eid] = (new_vertex, v)
            elif iv:
                boundary_endpoint[eid] = v
                edges[eid] = (u, new_vertex)
            else:
                edges[eid] = (u, v)
        vset = (self._vertices - mset) | {new_vertex}
        g = self._clone(vset, edges)
        return g, ContractionMap(new_vertex, mset, tuple(inner), boundary_endpoint)

    def identify(self, members: Iterable[int], new_vertex: Optional[int] = None
                 ) -> Tuple["MultiGraph", Tuple[int, ...], ContractionMap]:
        """Identify a vertex set (not necessarily connected) to one vertex.

        Edges joining two members would become loops and are removed; their
        ids are returned alongside the map.
        """
        mset = frozenset(members)
        for v in mset:
            if v not in self._vertices:
                raise UnknownVertex(f"unknown vertex {v}")
        if new_vertex is None:
            new_vertex = max(self._vertices) + 1 if self._vertices else 0
        dropped = []
        boundary_endpoint: Dict[int, int] = {}
        edges: Dict[int, Tuple[int, int]] = {}
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            iu, iv = u in mset, v in mset
            if iu and iv:
                dropped.append(eid)
            elif iu:
                boundary_endpoint[eid] = u
                edges[eid] = (new_vertex, v)
            elif iv:
                boundary_endpoint[eid] = v
                edges[eid] = (u, new_vertex)
            else:
                edges[eid] = (u, v)
        vset = (self._vertices - mset) | {new_vertex}
        g = self._clone(vset, edges)
        return g, tuple(dropped), ContractionMap(new_vertex, mset, tuple(dropped), boundary_endpoint)

    # -- traversal helpers -------------------------------------------------

    def _connected_within(self, vset: FrozenSet[int]) -> bool:
        if len(vset) <= 1:
            return True
        start = next(iter(vset))
        seen = {start}
        queue = deque((start,))
        while queue:
            x = queue.popleft()
            for e in self._adj[x]:
                y = self.other_endpoint(e, x)
                if y in vset and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen == vset

    def component_of(self, v: int, forbidden_vertices: FrozenSet[int] = frozenset()) -> FrozenSet[int]:
        if v not in self._vertices:
            raise UnknownVertex(f"unknown vertex {v}")
        seen = {v}
        queue = deque((v,))
        while queue:
            x = queue.popleft()
            for e in self._adj[x]:
                y = self.other_endpoint(e, x)
                if y not in seen and y not in forbidden_vertices:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def components(self) -> List[FrozenSet[int]]:
        left = set(self._vertices)
        out = []
        while left:
            v = min(left)
            comp = self.component_of(v)
            out.append(comp)
            left -= comp
        return out

    def is_connected(self) -> bool:
        return len(self._vertices) <= 1 or len(self.components()) == 1

    # -- flow network cache ------------------------------------------------

    def csr(self):
        """Cached CSR incidence arrays: (vkeys, vindex, eids, eu, ev, st, ed)."""
        if self._csr is None:
            vkeys = tuple(sorted(self._vertices))
            vindex = {v: i for i, v in enumerate(vkeys)}
            eids = tuple(sorted(self._edges))
            eu = array("i", bytes(0))
            ev = array("i", bytes(0))
            for e in eids:
                u, v = self._edges[e]
                eu.append(vindex[u])
                ev.append(vindex[v])
            n = len(vkeys)
            deg = [0] * n
            for i in range(len(eids)):
                deg[eu[i]] += 1
                deg[ev[i]] += 1
            start = array("i", [0] * (n + 1))
            for i in range(n):
                start[i + 1] = start[i] + deg[i]
            fill = list(start[:n])
            adj = array("i", [0] * (2 * len(eids)))
            for i in range(len(eids)):
                adj[fill[eu[i]]] = i
                fill[eu[i]] += 1
                adj[fill[ev[i]]] = i
                fill[ev[i]] += 1
            self._csr = (vkeys, vindex, eids, eu, ev, start, adj)
        return self._csr

    # -- misc ----------------------------------------------------------------

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted(len(self._adj[v]) for v in self._vertices))

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={self.num_vertices}, |E|={self.num_edges})"

    def same_edges(self, other: "MultiGraph") -> bool:
        return self._vertices == other._vertices and self._edges == other._edges


# -- two-set counting identity ----------------------------------------------


def cut_identity_sides(g: MultiGraph, a1: Iterable[int], a2: Iterable[int]) -> Tuple[int, int]:
    """Both sides of the submodularity-style counting identity.

    For intersecting vertex sets ``a1``, ``a2`` returns ``(lhs, rhs)`` with::

        lhs = 2 * (d(a1) + d(a2) - d(a1&a2 : co) - d(a2-a1 : a1-a2))
        rhs = d(a1&a2) + d(a2-a1) + d(a1-a2) + d(co)

    where ``co`` is the complement of ``a1 | a2`` and ``d(X : Y)`` counts the
    edges between ``X`` and ``Y``.  The two sides agree on every multigraph;
    tests enforce this with direct counting.
    """
    s1, s2 = set(a1), set(a2)
    if not (s1 & s2):
        raise NonIntersectingSets("the identity needs intersecting sets")
    for v in s1 | s2:
        if v not in g.vertices:
            raise UnknownVertex(f"unknown vertex {v}")
    inter = s1 & s2
    only1 = s1 - s2
    only2 = s2 - s1
    co = set(g.vertices) - (s1 | s2)
    lhs = 2 * (
        len(g.boundary(s1))
        + len(g.boundary(s2))
        - len(g.boundary_between(inter, co))
        - len(g.boundary_between(only2, only1))
    )
    rhs = (
        len(g.boundary(inter))
        + len(g.boundary(only2))
        + len(g.boundary(only1))
        + len(g.boundary(co))
    )
    return lhs, rhs


# -- bridges and blocks ------------------------------------------------------


def bridges(g: MultiGraph) -> Tuple[int, ...]:
    """Edge ids whose removal disconnects their component.

    Iterative lowpoint computation; a parallel pair is never a bridge
    because re-entry over the twin edge lowers the lowpoint.
    """
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    out: List[int] = []
    counter = 0
    for root in sorted(g.vertices):
        if root in index:
            continue
        stack = [(root, -1, iter(g.incident(root)))]
        index[root] = low[root] = counter
        counter += 1
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via:
                    continue
                y = g.other_endpoint(e, x)
                if y not in index:
                    index[y] = low[y] = counter
                    counter += 1
                    stack.append((y, e, iter(g.incident(y))))
                    advanced = True
                    break
                low[x] = min(low[x], index[y])
            if not advanced:
                stack.pop()
                if stack:
                    px = stack[-1][0]
                    low[px] = min(low[px], low[x])
                    if low[x] > index[px]:
                        out.append(via)
        # root done
    return tuple(sorted(out))


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks (as edge-id sets), cut vertices, and their incidence tree.

    Tree nodes are ``("B", block_index)`` and ``("C", vertex)``; ``adjacency``
    maps each node to its sorted neighbour tuple.
    """

    blocks: Tuple[FrozenSet[int], ...]
    cut_vertices: FrozenSet[int]
    adjacency: Dict[Tuple[str, int], Tuple[Tuple[str, int], ...]]

    def block_vertices(self, g: MultiGraph, i: int) -> FrozenSet[int]:
        vs = set()
        for e in self.blocks[i]:
            vs.update(g.endpoints(e))
        return frozenset(vs)

    def blocks_of_vertex(self, g: MultiGraph, v: int) -> Tuple[int, ...]:
        return tuple(i for i, blk in enumerate(self.blocks)
                     if any(v in g.endpoints(e) for e in blk))


def block_cut_tree(g: MultiGraph) -> BlockCutTree:
    """Biconnected components of a connected multigraph.

    Parallel edges land in the same block (they form a 2-edge cycle).
    Raises :class:`DisconnectedGraph` when the graph is not connected.
    """
    if not g.is_connected():
        raise DisconnectedGraph("block decomposition needs a connected graph")
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    counter = 0
    estack: List[int] = []
    blocks: List[FrozenSet[int]] = []
    cuts: set = set()
    for root in sorted(g.vertices):
        if root in index:
            continue
        root_children = 0
        stack = [(root, -1, iter(g.incident(root)))]
        index[root] = low[root] = counter
        counter += 1
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via:
                    continue
                y = g.other_endpoint(e, x)
                if y not in index:
                    estack.append(e)
                    index[y] = low[y] = counter
                    counter += 1
                    stack.append((y, e, iter(g.incident(y))))
                    if x == root:
                        root_children += 1
                    advanced = True
                    break
                if index[y] < index[x]:
                    estack.append(e)
                    low[x] = min(low[x], index[y])
            if not advanced:
                stack.pop()
                if stack:
                    px = stack[-1][0]
                    low[px] = min(low[px], low[x])
                    if low[x] >= index[px]:
                        blk = set()
                        while estack:
                            top = estack[-1]
                            tu, tv = g.endpoints(top)
                            if max(index[tu], index[tv]) >= index[x]:
                                blk.add(estack.pop())
                            else:
                                break
                        if blk:
                            blocks.append(frozenset(blk))
                        if px != root or root_children > 1:
                            cuts.add(px)
    # A root with a single child is not a cut vertex; roots with >= 2
    # children were flagged above.  Build the incidence tree.
    blocks_sorted = tuple(sorted(blocks, key=lambda b: min(b)))
    adjacency: Dict[Tuple[str, int], Tuple[Tuple[str, int], ...]] = {}
    links: Dict[Tuple[str, int], List[Tuple[str, int]]] = {}
    for i, blk in enumerate(blocks_sorted):
        links[("B", i)] = []
    for c in cuts:
        links[("C", c)] = []
    for i, blk in enumerate(blocks_sorted):
        vs = set()
        for e in blk:
            vs.update(g.endpoints(e))
        for c in sorted(vs & cuts):
            links[("B", i)].append(("C", c))
            links[("C", c)].append(("B", i))
    for node, ns in links.items():
        adjacency[node] = tuple(sorted(ns))
    return BlockCutTree(blocks_sorted, frozenset(cuts), adjacency)


# -- closed trails -----------------------------------------------------------


def euler_tour(g: MultiGraph) -> List[int]:
    """A closed trail through every edge, as an edge-id sequence.

    Requires a connected graph with all degrees even; the trail starts at
    the smallest vertex.  Hierholzer's splicing, iterative.
    """
    if not g.is_connected():
        raise NotEulerian("graph is not connected")
    for v in sorted(g.vertices):
        if g.degree(v) % 2:
            raise NotEulerian(f"vertex {v} has odd degree")
    if g.num_edges == 0:
        return []
    used = set()
    cursor = {v: 0 for v in g.vertices}
    start = min(v for v in g.vertices if g.degree(v) > 0)
    vstack = [start]
    estack: List[int] = []
    tour: List[int] = []
    while vstack:
        x = vstack[-1]
        inc = g.incident(x)
        i = cursor[x]
        while i < len(inc) and inc[i] in used:
            i += 1
        cursor[x] = i
        if i == len(inc):
            vstack.pop()
            if estack:
                tour.append(estack.pop())
        else:
            e = inc[i]
            used.add(e)
            vstack.append(g.other_endpoint(e, x))
            estack.append(e)
    tour.reverse()
    return tour


def trail_vertices(g: MultiGraph, start: int, trail: Iterable[int]) -> List[int]:
    """Vertex sequence of an edge-id trail beginning at ``start``."""
    out = [start]
    x = start
    for e in trail:
        x = g.other_endpoint(e, x)
        out.append(x)
    return out
