"""Finitely-presented locally finite infinite graphs and their truncations.

A family gives every vertex a stable non-negative integer id and every edge a
stable id derived from its endpoints, so graphs truncated at different depths
agree on shared vertices and edges.  Synthetic edges created later (by lifts)
use negative ids and can never collide with family edges.

Registry: square grid, cylindrical ladder (two-ended), grid with edge
multiplicity, d-ary tree with level cycles, and a user-supplied periodic
presentation.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Optional,
                    Sequence, Set, Tuple)

from .errors import LiftlinkError, UnknownVertex
from .multigraph import MultiGraph


# --------------------------------------------------------------------------
# id arithmetic: fold integers to naturals, pair naturals to one natural


def fold(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def unfold(n: int) -> int:
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(n: int) -> Tuple[int, int]:
    s = (math.isqrt(8 * n + 1) - 1) // 2
    b = n - s * (s + 1) // 2
    return s - b, b


# parallel copies of an edge between consecutive cells start at this copy
# index so they never collide with same-cell parallel copies
_INTER_COPY_BASE = 100


def edge_id(u: int, v: int, copy: int = 0) -> int:
    a, b = (u, v) if u <= v else (v, u)
    return pair(pair(a, b), copy)


def edge_id_parts(eid: int) -> Tuple[int, int, int]:
    ab, copy = unpair(eid)
    a, b = unpair(ab)
    return a, b, copy


# --------------------------------------------------------------------------
# rays


@dataclass(frozen=True)
class Ray:
    """One-way infinite path: explicit prefix plus a periodic tail rule.

    ``prefix[0]`` is the vertex outside the owning region, ``prefix[1]``
    the first vertex inside; ``prefix_edges[0]`` is the boundary edge.  The
    tail rule is interpreted by the family and serves arbitrarily long
    extensions on demand.
    """

    first_edge: int
    prefix: Tuple[int, ...]
    prefix_edges: Tuple[int, ...]
    tail: Tuple

    def vertices(self, fam: "LazyFamily", count: int) -> List[int]:
        """First ``count`` vertices (prefix first, then tail steps)."""
        out = list(self.prefix[:count])
        while len(out) < count:
            nxt, _eid = fam.ray_step(out[-1], self.tail)
            out.append(nxt)
        return out

    def edges(self, fam: "LazyFamily", count: int) -> List[int]:
        """First ``count`` edge ids, starting with the boundary edge."""
        out = list(self.prefix_edges[:count])
        at = self.prefix[-1]
        while len(out) < count:
            at, eid = fam.ray_step(at, self.tail)
            out.append(eid)
        return out

    def inner_vertices(self, fam: "LazyFamily", count: int) -> List[int]:
        """First ``count`` vertices strictly inside the region."""
        return self.vertices(fam, count + 1)[1:]


# --------------------------------------------------------------------------
# family interface


class LazyFamily(ABC):
    """A locally finite infinite graph presented by a neighbor function."""

    name: str = "?"

    @abstractmethod
    def neighbors(self, v: int) -> Tuple[Tuple[int, int], ...]:
        """All (edge_id, other_endpoint) pairs at ``v``, sorted by edge id.

        Parallel edges appear as distinct ids; the same edge is reported
        identically from both endpoints.
        """

    @abstractmethod
    def enumerate_vertices(self) -> Iterator[int]:
        """Canonical enumeration v0, v1, ... covering every vertex."""

    @abstractmethod
    def declared_connectivity(self) -> int:
        """Edge-connectivity the family is constructed to have."""

    @abstractmethod
    def end_count(self) -> int:
        """Number of ends (1 or 2 for the registry)."""

    @abstractmethod
    def standard_buffer(self, vertices: Iterable[int], level: int) -> FrozenSet[int]:
        """A finite separator of canonical shape containing ``vertices``.

        Growing ``level`` inflates the shape; complement components carry
        canonical escape rays.
        """

    @abstractmethod
    def canonical_rays(self, forbidden: FrozenSet[int],
                       boundary: Sequence[Tuple[int, int, int]]
                       ) -> Optional[List[Ray]]:
        """Escape rays for a component of the graph minus ``forbidden``.

        ``boundary`` lists (edge_id, outer_vertex, inner_vertex) with the
        outer endpoint in ``forbidden``.  Returns None when the forbidden
        set is not a recognized buffer shape; the caller then falls back to
        flow-based promotion.
        """

    @abstractmethod
    def ray_step(self, v: int, tail: Tuple) -> Tuple[int, int]:
        """Follow a tail rule one step: (next_vertex, edge_id)."""

    @abstractmethod
    def describe(self) -> Dict[str, object]:
        """Serializable descriptor {family, params}."""

    # -- shared helpers ------------------------------------------------------

    def origin(self) -> int:
        return next(iter(self.enumerate_vertices()))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def first_vertices(self, count: int) -> List[int]:
        it = self.enumerate_vertices()
        return [next(it) for _ in range(count)]


# --------------------------------------------------------------------------
# truncations


@dataclass(frozen=True)
class Truncation:
    """Finite portion of a family: everything within ``depth`` of ``roots``."""

    family: LazyFamily
    roots: Tuple[int, ...]
    depth: int
    graph: MultiGraph
    dist: Dict[int, int]
    frontier: FrozenSet[int]  # explored vertices with unexplored neighbors


def truncate(fam: LazyFamily, roots: Iterable[int], depth: int) -> Truncation:
    rts = tuple(sorted(set(roots)))
    dist: Dict[int, int] = {r: 0 for r in rts}
    queue = deque(rts)
    edges: Dict[int, Tuple[int, int]] = {}
    frontier: Set[int] = set()
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for eid, w in fam.neighbors(v):
            if w in dist:
                if eid not in edges:
                    edges[eid] = (min(v, w), max(v, w))
            elif dv < depth:
                dist[w] = dv + 1
                queue.append(w)
                edges[eid] = (min(v, w), max(v, w))
            else:
                frontier.add(v)
    # edges recorded while the far endpoint was still unexplored but within
    # depth are fine; drop any edge whose endpoint never got explored
    edges = {e: uv for e, uv in edges.items() if uv[0] in dist and uv[1] in dist}
    g = MultiGraph(dist.keys(), edges)
    return Truncation(family=fam, roots=rts, depth=depth, graph=g,
                      dist=dict(dist), frontier=frozenset(frontier))


@dataclass(frozen=True)
class Region:
    """A component of the family minus a finite vertex set.

    The component is the one containing ``seed``; with an empty forbidden
    set this is the whole graph.
    """

    family: LazyFamily
    forbidden: FrozenSet[int]
    seed: int

    def key(self) -> Tuple:
        return (tuple(sorted(self.forbidden)), self.seed)


@dataclass(frozen=True)
class RegionTruncation:
    """Depth-d exploration of a region from its boundary and seed.

    ``graph`` contains only region vertices.  ``boundary`` lists the edges
    into the forbidden set as (edge_id, outer, inner); they are not edges of
    ``graph``.
    """

    region: Region
    depth: int
    graph: MultiGraph
    boundary: Tuple[Tuple[int, int, int], ...]
    frontier: FrozenSet[int]
    dist: Dict[int, int]


def truncate_region(region: Region, depth: int) -> RegionTruncation:
    fam = region.family
    forb = region.forbidden
    if region.seed in forb:
        raise UnknownVertex("seed lies in the forbidden set")
    # roots: the seed plus every non-forbidden neighbor of the forbidden set,
    # so all candidate boundary edges are seen even far from the seed
    roots = {region.seed}
    for b in forb:
        for _eid, w in fam.neighbors(b):
            if w not in forb:
                roots.add(w)
    dist: Dict[int, int] = {r: 0 for r in sorted(roots)}
    queue = deque(sorted(roots))
    edges: Dict[int, Tuple[int, int]] = {}
    frontier: Set[int] = set()
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for eid, w in fam.neighbors(v):
            if w in forb:
                continue
            if w in dist:
                if eid not in edges:
                    edges[eid] = (min(v, w), max(v, w))
            elif dv < depth:
                dist[w] = dv + 1
                queue.append(w)
                edges[eid] = (min(v, w), max(v, w))
            else:
                frontier.add(v)
    edges = {e: uv for e, uv in edges.items() if uv[0] in dist and uv[1] in dist}
    g = MultiGraph(dist.keys(), edges)
    comp = g.component_of(region.seed)
    inside = g.restriction(
        [e for e in g.edge_ids if g.endpoints(e)[0] in comp],
        keep_vertices=comp)
    boundary: List[Tuple[int, int, int]] = []
    for b in sorted(forb):
        for eid, w in fam.neighbors(b):
            if w in comp:
                boundary.append((eid, b, w))
    boundary.sort()
    return RegionTruncation(region=region, depth=depth, graph=inside,
                            boundary=tuple(boundary),
                            frontier=frozenset(frontier & comp),
                            dist={v: dist[v] for v in comp})


# --------------------------------------------------------------------------
# registry families


class SquareGrid(LazyFamily):
    """The planar integer lattice; 4-edge-connected, one end."""

    name = "grid"

    def __init__(self, multiplicity: int = 1):
        if multiplicity < 1:
            raise LiftlinkError("multiplicity must be >= 1")
        self.multiplicity = multiplicity
        if multiplicity > 1:
            self.name = "grid-multi"

    @staticmethod
    def vertex(x: int, y: int) -> int:
        return pair(fold(x), fold(y))

    @staticmethod
    def coords(v: int) -> Tuple[int, int]:
        a, b = unpair(v)
        return unfold(a), unfold(b)

    _DIRS = ((1, 0), (-1, 0), (0, 1), (0, -1))

    def neighbors(self, v: int) -> Tuple[Tuple[int, int], ...]:
        x, y = self.coords(v)
        out = []
        for dx, dy in self._DIRS:
            w = self.vertex(x + dx, y + dy)
            for c in range(self.multiplicity):
                out.append((edge_id(v, w, c), w))
        return tuple(sorted(out))

    def enumerate_vertices(self) -> Iterator[int]:
        yield self.vertex(0, 0)
        r = 1
        while True:
            ring = []
            for x in range(-r, r + 1):
                for y in range(-r, r + 1):
                    if max(abs(x), abs(y)) == r:
                        ring.append((x, y))
            for x, y in sorted(ring):
                yield self.vertex(x, y)
            r += 1

    def declared_connectivity(self) -> int:
        return 4 * self.multiplicity

    def end_count(self) -> int:
        return 1

    def standard_buffer(self, vertices: Iterable[int], level: int) -> FrozenSet[int]:
        vs = list(vertices)
        if not vs and level == 0:
            return frozenset()
        cs = [self.coords(v) for v in vs] or [(0, 0)]
        x0 = min(c[0] for c in cs) - level
        x1 = max(c[0] for c in cs) + level
        y0 = min(c[1] for c in cs) - level
        y1 = max(c[1] for c in cs) + level
        return frozenset(self.vertex(x, y)
                         for x in range(x0, x1 + 1)
                         for y in range(y0, y1 + 1))

    def _box_of(self, forbidden: FrozenSet[int]) -> Optional[Tuple[int, int, int, int]]:
        cs = [self.coords(v) for v in forbidden]
        x0 = min(c[0] for c in cs)
        x1 = max(c[0] for c in cs)
        y0 = min(c[1] for c in cs)
        y1 = max(c[1] for c in cs)
        if (x1 - x0 + 1) * (y1 - y0 + 1) != len(forbidden):
            return None
        return x0, x1, y0, y1

    def canonical_rays(self, forbidden, boundary):
        if not forbidden:
            return [] if not boundary else None
        box = self._box_of(forbidden)
        if box is None:
            return None
        x0, x1, y0, y1 = box
        rays = []
        for eid, outer, inner in boundary:
            bx, by = self.coords(outer)
            ix, iy = self.coords(inner)
            dx, dy = ix - bx, iy - by
            # direction must point straight away from the box
            if (dx, dy) not in self._DIRS:
                return None
            _a, _b, copy = edge_id_parts(eid)
            rays.append(Ray(first_edge=eid, prefix=(outer, inner),
                            prefix_edges=(eid,),
                            tail=("line", dx, dy, copy)))
        return rays

    def ray_step(self, v: int, tail: Tuple) -> Tuple[int, int]:
        kind, dx, dy, copy = tail
        x, y = self.coords(v)
        w = self.vertex(x + dx, y + dy)
        return w, edge_id(v, w, copy)

    def describe(self) -> Dict[str, object]:
        if self.multiplicity > 1:
            return {"family": "grid-multi",
                    "params": {"multiplicity": self.multiplicity}}
        return {"family": "grid", "params": {}}


class CylinderLadder(LazyFamily):
    """The two-ended cylinder: a line of m-cycles, 4-regular for m >= 3.

    Width m >= 3 keeps the rungs simple; edge-connectivity is min(4, m).
    """

    name = "ladder"

    def __init__(self, width: int = 5):
        if width < 3:
            raise LiftlinkError("ladder width must be >= 3")
        self.width = width

    def vertex(self, x: int, r: int) -> int:
        return pair(fold(x), r % self.width)

    def coords(self, v: int) -> Tuple[int, int]:
        a, r = unpair(v)
        return unfold(a), r

    def neighbors(self, v: int) -> Tuple[Tuple[int, int], ...]:
        x, r = self.coords(v)
        m = self.width
        others = [self.vertex(x + 1, r), self.vertex(x - 1, r),
                  self.vertex(x, (r + 1) % m), self.vertex(x, (r - 1) % m)]
        return tuple(sorted((edge_id(v, w, 0), w) for w in others))

    def enumerate_vertices(self) -> Iterator[int]:
        x = 0
        while True:
            for r in range(self.width):
                yield self.vertex(x, r)
            x = -x if x > 0 else -x + 1

    def declared_connectivity(self) -> int:
        return min(4, self.width)

    def end_count(self) -> int:
        return 2

    def standard_buffer(self, vertices: Iterable[int], level: int) -> FrozenSet[int]:
        vs = list(vertices)
        if not vs and level == 0:
            return frozenset()
        xs = [self.coords(v)[0] for v in vs] or [0]
        x0, x1 = min(xs) - level, max(xs) + level
        return frozenset(self.vertex(x, r)
                         for x in range(x0, x1 + 1) for r in range(self.width))

    def _column_range(self, forbidden: FrozenSet[int]) -> Optional[Tuple[int, int]]:
        xs = [self.coords(v)[0] for v in forbidden]
        x0, x1 = min(xs), max(xs)
        if (x1 - x0 + 1) * self.width != len(forbidden):
            return None
        return x0, x1

    def canonical_rays(self, forbidden, boundary):
        if not forbidden:
            return [] if not boundary else None
        cols = self._column_range(forbidden)
        if cols is None:
            return None
        rays = []
        for eid, outer, inner in boundary:
            bx, _br = self.coords(outer)
            ix, _ir = self.coords(inner)
            dx = ix - bx
            if dx not in (-1, 1):
                return None  # a rung: not a clean column boundary
            rays.append(Ray(first_edge=eid, prefix=(outer, inner),
                            prefix_edges=(eid,), tail=("line", dx)))
        return rays

    def ray_step(self, v: int, tail: Tuple) -> Tuple[int, int]:
        _kind, dx = tail
        x, r = self.coords(v)
        w = self.vertex(x + dx, r)
        return w, edge_id(v, w, 0)

    def describe(self) -> Dict[str, object]:
        return {"family": "ladder", "params": {"width": self.width}}


class TreeWithLevelCycles(LazyFamily):
    """d-ary tree plus a cycle through every level; one end, d-edge-connected."""

    name = "tree-cycles"

    def __init__(self, branching: int = 3):
        if branching < 2:
            raise LiftlinkError("branching must be >= 2")
        self.branching = branching

    def vertex(self, level: int, pos: int) -> int:
        return pair(level, pos)

    def coords(self, v: int) -> Tuple[int, int]:
        return unpair(v)

    def _level_size(self, level: int) -> int:
        return self.branching ** level

    def neighbors(self, v: int) -> Tuple[Tuple[int, int], ...]:
        level, p = self.coords(v)
        d = self.branching
        out = []
        if level > 0:
            w = self.vertex(level - 1, p // d)
            out.append((edge_id(v, w, 0), w))
        for j in range(d):
            w = self.vertex(level + 1, p * d + j)
            out.append((edge_id(v, w, 0), w))
        n = self._level_size(level)
        if n == 2:
            w = self.vertex(level, 1 - p)
            out.append((edge_id(v, w, 0), w))
            out.append((edge_id(v, w, 1), w))
        elif n > 2:
            for q in ((p + 1) % n, (p - 1) % n):
                w = self.vertex(level, q)
                out.append((edge_id(v, w, 0), w))
        return tuple(sorted(out))

    def enumerate_vertices(self) -> Iterator[int]:
        level = 0
        while True:
            for p in range(self._level_size(level)):
                yield self.vertex(level, p)
            level += 1

    def declared_connectivity(self) -> int:
        return self.branching

    def end_count(self) -> int:
        return 1

    def standard_buffer(self, vertices: Iterable[int], level: int) -> FrozenSet[int]:
        vs = list(vertices)
        if not vs and level == 0:
            return frozenset()
        top = max((self.coords(v)[0] for v in vs), default=0) + level
        out = []
        for ell in range(top + 1):
            out.extend(self.vertex(ell, p) for p in range(self._level_size(ell)))
        return frozenset(out)

    def canonical_rays(self, forbidden, boundary):
        if not forbidden:
            return [] if not boundary else None
        levels = {self.coords(v)[0] for v in forbidden}
        top = max(levels)
        if levels != set(range(top + 1)):
            return None
        if len(forbidden) != sum(self._level_size(l) for l in range(top + 1)):
            return None
        rays = []
        for eid, outer, inner in boundary:
            rays.append(Ray(first_edge=eid, prefix=(outer, inner),
                            prefix_edges=(eid,), tail=("down",)))
        return rays

    def ray_step(self, v: int, tail: Tuple) -> Tuple[int, int]:
        level, p = self.coords(v)
        w = self.vertex(level + 1, p * self.branching)
        return w, edge_id(v, w, 0)

    def describe(self) -> Dict[str, object]:
        return {"family": "tree-cycles", "params": {"branching": self.branching}}


class UserPeriodic(LazyFamily):
    """User-supplied one-dimensional periodic presentation.

    Vertices are (cell_index 'n' in Z, position i < size).  ``intra`` lists
    edges inside a cell as (i, j, multiplicity); ``inter`` lists edges from
    cell n to cell n+1 as (i, j, multiplicity).  Connectivity and end count
    are declared by the presenter and verified on truncations by callers.
    """

    name = "user-periodic"

    def __init__(self, size: int, intra: Sequence[Tuple[int, int, int]],
                 inter: Sequence[Tuple[int, int, int]],
                 connectivity: int = 1, ends: int = 2):
        if size < 1:
            raise LiftlinkError("cell size must be >= 1")
        self.size = size
        self.intra = tuple((min(i, j), max(i, j), m) for i, j, m in intra)
        self.inter = tuple((i, j, m) for i, j, m in inter)
        self._connectivity = connectivity
        self._ends = ends
        for i, j, m in self.intra:
            if not (0 <= i < size and 0 <= j < size) or i == j or m < 1:
                raise LiftlinkError(f"bad intra edge ({i},{j},{m})")
            if m >= _INTER_COPY_BASE:
                raise LiftlinkError(
                    f"intra multiplicity {m} exceeds {_INTER_COPY_BASE - 1}")
        for i, j, m in self.inter:
            if not (0 <= i < size and 0 <= j < size) or m < 1:
                raise LiftlinkError(f"bad inter edge ({i},{j},{m})")
            if m >= _INTER_COPY_BASE:
                raise LiftlinkError(
                    f"inter multiplicity {m} exceeds {_INTER_COPY_BASE - 1}")
        if len({(i, j) for i, j, _ in self.intra}) != len(self.intra):
            raise LiftlinkError("duplicate intra edge entries")
        if len({(i, j) for i, j, _ in self.inter}) != len(self.inter):
            raise LiftlinkError("duplicate inter edge entries")

    def vertex(self, n: int, i: int) -> int:
        return pair(fold(n), i)

    def coords(self, v: int) -> Tuple[int, int]:
        a, i = unpair(v)
        return unfold(a), i

    def neighbors(self, v: int) -> Tuple[Tuple[int, int], ...]:
        n, i = self.coords(v)
        out = []
        for a, b, mult in self.intra:
            if i in (a, b):
                w = self.vertex(n, b if i == a else a)
                for c in range(mult):
                    out.append((edge_id(v, w, c), w))
        for a, b, mult in self.inter:
            if i == a:  # towards cell n+1
                w = self.vertex(n + 1, b)
                for c in range(mult):
                    out.append((edge_id(v, w, _INTER_COPY_BASE + c), w))
            if b == i:  # towards cell n-1
                w = self.vertex(n - 1, a)
                for c in range(mult):
                    out.append((edge_id(v, w, _INTER_COPY_BASE + c), w))
        return tuple(sorted(out))

    def enumerate_vertices(self) -> Iterator[int]:
        n = 0
        while True:
            for i in range(self.size):
                yield self.vertex(n, i)
            n = -n if n > 0 else -n + 1

    def declared_connectivity(self) -> int:
        return self._connectivity

    def end_count(self) -> int:
        return self._ends

    def standard_buffer(self, vertices: Iterable[int], level: int) -> FrozenSet[int]:
        vs = list(vertices)
        if not vs and level == 0:
            return frozenset()
        ns = [self.coords(v)[0] for v in vs] or [0]
        n0, n1 = min(ns) - level, max(ns) + level
        return frozenset(self.vertex(n, i)
                         for n in range(n0, n1 + 1) for i in range(self.size))

    def _has_straight_lines(self) -> bool:
        straight = {i for i, j, _m in self.inter if i == j}
        return straight == set(range(self.size))

    def canonical_rays(self, forbidden, boundary):
        if not forbidden:
            return [] if not boundary else None
        if not self._has_straight_lines():
            return None
        ns = [self.coords(v)[0] for v in forbidden]
        n0, n1 = min(ns), max(ns)
        if (n1 - n0 + 1) * self.size != len(forbidden):
            return None
        # straight rays only work when each position meets exactly one
        # boundary edge per side, i.e. inter edges form a perfect matching
        if len(self.inter) != self.size:
            return None
        rays = []
        for eid, outer, inner in boundary:
            bn, _bi = self.coords(outer)
            inn, _ii = self.coords(inner)
            dn = inn - bn
            if dn not in (-1, 1):
                return None
            rays.append(Ray(first_edge=eid, prefix=(outer, inner),
                            prefix_edges=(eid,), tail=("line", dn)))
        return rays

    def ray_step(self, v: int, tail: Tuple) -> Tuple[int, int]:
        _kind, dn = tail
        n, i = self.coords(v)
        w = self.vertex(n + dn, i)
        return w, edge_id(v, w, _INTER_COPY_BASE)

    def describe(self) -> Dict[str, object]:
        return {"family": "user-periodic",
                "params": {"size": self.size, "intra": list(self.intra),
                           "inter": list(self.inter),
                           "connectivity": self._connectivity,
                           "ends": self._ends}}


# --------------------------------------------------------------------------
# registry


def make_family(name: str, params: Optional[Dict[str, object]] = None) -> LazyFamily:
    params = dict(params or {})
    key = name.replace("_", "-").lower()
    if key in ("grid", "square-grid"):
        return SquareGrid()
    if key in ("grid-multi", "grid-with-multiplicity"):
        return SquareGrid(multiplicity=int(params.get("multiplicity", 2)))
    if key in ("ladder", "m-strip-ladder", "cylinder"):
        return CylinderLadder(width=int(params.get("width", 5)))
    if key in ("tree-cycles", "tree-with-level-cycles"):
        return TreeWithLevelCycles(branching=int(params.get("branching", 3)))
    if key in ("user-periodic", "user"):
        return UserPeriodic(size=int(params["size"]),
                            intra=[tuple(e) for e in params.get("intra", [])],
                            inter=[tuple(e) for e in params.get("inter", [])],
                            connectivity=int(params.get("connectivity", 1)),
                            ends=int(params.get("ends", 2)))
    raise LiftlinkError(f"unknown family {name!r}")


def family_from_descriptor(doc: Dict[str, object]) -> LazyFamily:
    return make_family(str(doc["family"]), dict(doc.get("params", {})))
