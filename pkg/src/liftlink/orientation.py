"""Arc-connected orientations, from Euler tours to round-based growth.

Finite side: orient an Eulerian graph along a tour, or extend a
consistently oriented Eulerian part to a verified k-arc-connected total
orientation (closed-trail completion first, branch and bound second).
Infinite side: grow a chain of oriented subgraphs of a family, each an
immersion of a finite pattern whose orientation is pulled back over the
image walks, so that all branch vertices stay k-arc-linked and no edge
ever flips direction in later rounds.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import (ConsistencyError, NotEulerian, PreconditionViolated,
                     ResourceBudgetExceeded)
from .families import LazyFamily
from .flows import (arc_connectivity, is_k_edge_connected,
                    local_edge_connectivity, mixed_reachable)
from .immersion import ImmersionCertificate, immerse
from .multigraph import MultiGraph

Arc = Tuple[int, int]

DEFAULT_SEARCH_BUDGET = 200000


@dataclass(frozen=True)
class Orientation:
    """A direction per edge: ``direction[e] = (tail, head)``.

    A partial map stands for a mixed graph; undirected remainder edges may
    be crossed both ways by the flow oracles.
    """

    base: MultiGraph
    direction: Dict[int, Arc]

    def __post_init__(self):
        for e, (t, h) in self.direction.items():
            if not self.base.has_edge(e) or set(self.base.endpoints(e)) != {t, h}:
                raise PreconditionViolated(
                    f"direction for edge {e} does not match its endpoints")

    @property
    def is_total(self) -> bool:
        return len(self.direction) == self.base.num_edges

    def out_degree(self, v: int) -> int:
        return sum(1 for e in self.base.incident(v)
                   if self.direction.get(e, (None,))[0] == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for e in self.base.incident(v)
                   if e in self.direction and self.direction[e][1] == v)


def _reversed_direction(direction: Dict[int, Arc]) -> Dict[int, Arc]:
    return {e: (h, t) for e, (t, h) in direction.items()}


def verify_k_arc_connected(o: Orientation, k: int) -> bool:
    """Every ordered vertex pair is joined by k arc-disjoint directed paths.

    Checked through a fixed root: a violating cut separates the root from
    some vertex in one of the two directions, so root-to-all and
    all-to-root flows decide the global property.
    """
    g = o.base
    if k <= 0 or g.num_vertices <= 1:
        return True
    root = min(g.vertices)
    if k == 1:
        if len(mixed_reachable(g, root, o.direction)) != g.num_vertices:
            return False
        back = _reversed_direction(o.direction)
        return len(mixed_reachable(g, root, back)) == g.num_vertices
    for v in g.vertices:
        if v == root:
            continue
        if arc_connectivity(g, o.direction, root, v, limit=k) < k:
            return False
        if arc_connectivity(g, o.direction, v, root, limit=k) < k:
            return False
    return True


def verify_well_balanced(o: Orientation) -> bool:
    """Directed connectivity >= half the undirected one, every ordered pair."""
    g = o.base
    vs = sorted(g.vertices)
    for x in vs:
        for y in vs:
            if x == y:
                continue
            want = local_edge_connectivity(g, x, y) // 2
            if want and arc_connectivity(g, o.direction, x, y,
                                         limit=want) < want:
                return False
    return True


def orient_eulerian_consistent(g: MultiGraph) -> Orientation:
    """Direct every edge along one Euler tour of a connected even graph."""
    if g.num_edges == 0:
        if g.num_vertices > 1:
            raise NotEulerian("edgeless graph on several vertices")
        return Orientation(g, {})
    if any(g.degree(v) % 2 for v in g.vertices):
        raise NotEulerian("odd-degree vertex present")
    if not g.is_connected():
        raise NotEulerian("graph is not connected")
    direction: Dict[int, Arc] = {}
    used: Set[int] = set()
    ptr: Dict[int, int] = {v: 0 for v in g.vertices}
    stack = [min(g.vertices)]
    while stack:
        v = stack[-1]
        inc = g.incident(v)
        i = ptr[v]
        while i < len(inc) and inc[i] in used:
            i += 1
        ptr[v] = i
        if i == len(inc):
            stack.pop()
            continue
        e = inc[i]
        used.add(e)
        w = g.other_endpoint(e, v)
        direction[e] = (v, w)
        stack.append(w)
    if len(direction) != g.num_edges:
        raise ConsistencyError("tour missed some edges of a connected graph")
    return Orientation(g, direction)


def _check_pre(g: MultiGraph, pre: Orientation) -> None:
    balance = Counter()
    for e, (t, h) in pre.direction.items():
        if not g.has_edge(e) or set(g.endpoints(e)) != {t, h}:
            raise PreconditionViolated(
                f"pre-oriented edge {e} does not match the graph")
        balance[t] += 1
        balance[h] -= 1
    bad = sorted(v for v, b in balance.items() if b)
    if bad:
        raise PreconditionViolated(
            f"pre-orientation unbalanced at vertices {bad[:6]}")


def _closed_trail_completion(g: MultiGraph, pre: Dict[int, Arc],
                             remainder: Sequence[int]) -> Optional[Dict[int, Arc]]:
    """Orient the remainder along closed trails when all its degrees are even."""
    deg = Counter()
    for e in remainder:
        u, v = g.endpoints(e)
        deg[u] += 1
        deg[v] += 1
    if any(d % 2 for d in deg.values()):
        return None
    sub = g.restriction(remainder)
    out = dict(pre)
    for comp in sub.components():
        piece = sub.restriction(
            [e for e in sub.edge_ids if sub.endpoints(e)[0] in comp],
            keep_vertices=comp)
        out.update(orient_eulerian_consistent(piece).direction)
    return out


def _seed_order(g: MultiGraph, remainder: Sequence[int]) -> List[Tuple[int, Arc]]:
    """Remainder edges in trail order with a trail-following first guess.

    Odd-degree vertices are paired by virtual edges so every component of
    the scaffold closes up; real edges then inherit the walking direction.
    Inside cuts the guess is nearly balanced, which makes the very first
    branch-and-bound leaf the natural candidate.
    """
    rem = set(remainder)
    adj: Dict[int, List[Tuple[Optional[int], int]]] = {}
    deg = Counter()
    for e in remainder:
        u, v = g.endpoints(e)
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
        deg[u] += 1
        deg[v] += 1
    odd = sorted(v for v in deg if deg[v] % 2)
    for n in range(0, len(odd), 2):
        a, b = odd[n], odd[n + 1]
        adj[a].append((None, b))
        adj[b].append((None, a))
    order: List[Tuple[int, Arc]] = []
    used_real: Set[int] = set()
    used_virtual: Set[Tuple[int, int]] = set()
    for start in sorted(adj):
        stack = [start]
        while stack:
            v = stack[-1]
            advanced = False
            while adj[v]:
                e, w = adj[v].pop()
                if e is None:
                    key = (min(v, w), max(v, w))
                    if key in used_virtual:
                        continue
                    used_virtual.add(key)
                else:
                    if e in used_real:
                        continue
                    used_real.add(e)
                    order.append((e, (v, w)))
                stack.append(w)
                advanced = True
                break
            if not advanced:
                stack.pop()
    if used_real != rem:
        raise ConsistencyError("seed walk missed remainder edges")
    return order


def extend_orientation(g: MultiGraph, k: int, pre: Orientation,
                       budget: int = DEFAULT_SEARCH_BUDGET) -> Orientation:
    """Extend a balanced partial orientation to a verified k-arc-connected one.

    The pre-oriented part must have equal in- and out-degree at every
    vertex.  When the unoriented remainder has all degrees even it is
    completed along closed trails; otherwise a branch and bound over the
    remainder directions runs, pruning single-vertex cuts and verifying
    full candidates, until the first verified orientation appears.
    """
    _check_pre(g, pre)
    remainder = [e for e in g.edge_ids if e not in pre.direction]
    if not remainder:
        o = Orientation(g, dict(pre.direction))
        if not verify_k_arc_connected(o, k):
            raise ConsistencyError("total balanced pre-orientation failed "
                                   "the arc-connectivity check")
        return o

    trails = _closed_trail_completion(g, pre.direction, remainder)
    if trails is not None:
        o = Orientation(g, trails)
        if verify_k_arc_connected(o, k):
            return o

    # mixed relaxation: with free edges usable both ways, k flows must
    # already exist; otherwise no completion can succeed
    probe = Orientation(g, dict(pre.direction))
    if not verify_k_arc_connected(probe, k):
        raise ConsistencyError("graph cannot reach the requested "
                               "arc-connectivity under the pre-orientation")

    order = _seed_order(g, remainder)
    assign: Dict[int, Arc] = dict(pre.direction)
    out_cnt = Counter()
    in_cnt = Counter()
    for t, h in assign.values():
        out_cnt[t] += 1
        in_cnt[h] += 1
    free = Counter()
    for e, _arc in order:
        u, v = g.endpoints(e)
        free[u] += 1
        free[v] += 1

    def admissible(t: int, h: int) -> bool:
        for v in (t, h):
            if out_cnt[v] + free[v] < k or in_cnt[v] + free[v] < k:
                return False
        return True

    def place(e: int, t: int, h: int) -> None:
        assign[e] = (t, h)
        out_cnt[t] += 1
        in_cnt[h] += 1
        free[t] -= 1
        free[h] -= 1

    def remove(e: int) -> None:
        t, h = assign.pop(e)
        out_cnt[t] -= 1
        in_cnt[h] -= 1
        free[t] += 1
        free[h] += 1

    nodes = 0
    idx = 0
    tried = [0] * len(order)
    while True:
        if idx == len(order):
            o = Orientation(g, dict(assign))
            if verify_k_arc_connected(o, k):
                return o
            idx -= 1
            while idx >= 0 and tried[idx] == 2:
                remove(order[idx][0])
                tried[idx] = 0
                idx -= 1
            if idx < 0:
                raise ConsistencyError("search space exhausted without a "
                                       "verified orientation")
            remove(order[idx][0])
            continue
        e, (t, h) = order[idx]
        nodes += 1
        if nodes > budget:
            raise ResourceBudgetExceeded(
                f"orientation search exceeded {budget} nodes")
        placed = False
        while tried[idx] < 2:
            tried[idx] += 1
            tt, hh = (t, h) if tried[idx] == 1 else (h, t)
            if admissible(tt, hh):
                place(e, tt, hh)
                idx += 1
                placed = True
                break
        if placed:
            continue
        tried[idx] = 0
        idx -= 1
        while idx >= 0 and tried[idx] == 2:
            remove(order[idx][0])
            tried[idx] = 0
            idx -= 1
        if idx < 0:
            raise ConsistencyError("search space exhausted without a "
                                   "verified orientation")
        remove(order[idx][0])


# ---------------------------------------------------------------------------
# round-based growth inside a family


@dataclass(frozen=True)
class RoundResult:
    """One growth round: the enlarged oriented subgraph plus its audit."""

    orientation: Orientation
    branch: Tuple[int, ...]
    new_vertex: int
    certificate: ImmersionCertificate = field(repr=False, compare=False)
    pattern_direction: Dict[int, Arc] = field(repr=False, default_factory=dict)
    pairs_checked: int = 0
    min_flow: int = 0


def _check_identified_balance(dirmap: Dict[int, Arc],
                              branch: FrozenSet[int]) -> None:
    """After merging the branch vertices, in-degree must equal out-degree."""
    balance = Counter()
    merged_in = 0
    merged_out = 0
    for t, h in dirmap.values():
        if t in branch:
            merged_out += 1
        else:
            balance[t] += 1
        if h in branch:
            merged_in += 1
        else:
            balance[h] -= 1
    bad = sorted(v for v, b in balance.items() if b)
    if bad:
        raise ConsistencyError(
            f"identified orientation unbalanced at {bad[:6]}")
    if merged_in != merged_out:
        raise ConsistencyError("identified orientation unbalanced at the "
                               "merged vertex")


def orient_infinite(fam: LazyFamily, k: int, rounds: int,
                    depth: int = 16, depth_cap: int = 256,
                    budget: int = DEFAULT_SEARCH_BUDGET
                    ) -> Tuple[RoundResult, ...]:
    """Grow verified oriented subgraphs of the family, round by round.

    Each round immerses a finite pattern over everything built so far plus
    the first unreached vertex, extends the inherited orientation of the
    merged previous stage across the pattern, pushes directions onto the
    image walks, and certifies that all branch vertices are joined by k
    arc-disjoint directed paths both ways.  Directions never change once
    assigned.
    """
    if rounds < 1:
        raise PreconditionViolated("at least one round required")
    if fam.declared_connectivity() < 2 * k + 1:
        raise PreconditionViolated(
            f"family declares connectivity {fam.declared_connectivity()}, "
            f"need {2 * k + 1}")
    enum = fam.enumerate_vertices()
    v0 = next(enum)
    w_graph = MultiGraph([v0], {})
    w_dir: Dict[int, Arc] = {}
    w_branch: FrozenSet[int] = frozenset([v0])
    out: List[RoundResult] = []
    for _round in range(rounds):
        v_new = next(v for v in fam.enumerate_vertices()
                     if not w_graph.has_vertex(v))
        cert = immerse(fam, set(w_graph.vertices) | {v_new}, k,
                       depth=depth, depth_cap=depth_cap)
        h = cert.pattern
        for v in w_graph.vertices:
            if v not in cert.core:
                raise ConsistencyError("previous stage vertex fell out of "
                                       "the grown core")
        for e in w_graph.edge_ids:
            if not h.has_edge(e) or set(h.endpoints(e)) != set(
                    w_graph.endpoints(e)):
                raise ConsistencyError("previous stage edge missing from "
                                       "the pattern")
        _check_identified_balance(w_dir, w_branch)

        rep = min(w_branch)
        loops: Set[int] = set()
        star_edges: Dict[int, Arc] = {}
        for eid in h.edge_ids:
            u, v = h.endpoints(eid)
            u2 = rep if u in w_branch else u
            v2 = rep if v in w_branch else v
            if u2 == v2:
                loops.add(eid)
            else:
                star_edges[eid] = (u2, v2)
        star_vertices = {rep if v in w_branch else v for v in h.vertices}
        hstar = MultiGraph(star_vertices, star_edges)
        if hstar.num_vertices > 1 and not is_k_edge_connected(hstar, 2 * k):
            raise ConsistencyError("identified pattern lost its "
                                   "edge-connectivity")
        pre_dir = {}
        for e in w_graph.edge_ids:
            if e in loops:
                continue
            t, hd = w_dir[e]
            pre_dir[e] = (rep if t in w_branch else t,
                          rep if hd in w_branch else hd)
        ostar = extend_orientation(hstar, k, Orientation(hstar, pre_dir),
                                   budget)

        h_dir: Dict[int, Arc] = {}
        for eid in h.edge_ids:
            u, v = h.endpoints(eid)
            if eid in w_dir:
                h_dir[eid] = w_dir[eid]
            elif eid in loops:
                h_dir[eid] = (u, v)
            else:
                t, hd = ostar.direction[eid]
                tail = u if (t == rep and u in w_branch) or t == u else v
                head = v if tail == u else u
                h_dir[eid] = (tail, head)
        if not verify_k_arc_connected(Orientation(h, h_dir), k):
            raise ConsistencyError("pattern orientation failed the "
                                   "arc-connectivity check")

        w2_vertices: Set[int] = set(cert.branch.values())
        w2_edges: Dict[int, Arc] = {}
        w2_dir: Dict[int, Arc] = {}

        def lay(vs: Tuple[int, ...], es: Tuple[int, ...]) -> None:
            for a in range(len(es)):
                e, x, y = es[a], vs[a], vs[a + 1]
                if e in w2_dir and w2_dir[e] != (x, y):
                    raise ConsistencyError(f"edge {e} directed twice")
                w2_edges[e] = (min(x, y), max(x, y))
                w2_dir[e] = (x, y)
                w2_vertices.add(x)
                w2_vertices.add(y)

        for eid, (pv, pe) in sorted(cert.images.items()):
            u, v = h.endpoints(eid)
            if h_dir[eid] == (u, v):
                lay(pv, pe)
            else:
                lay(pv[::-1], pe[::-1])
        for pv, pe in cert.closed_images:
            lay(pv, pe)

        for e, arc in w_dir.items():
            if w2_dir.get(e) != arc:
                raise ConsistencyError(f"edge {e} changed direction "
                                       "between rounds")

        w2 = MultiGraph(w2_vertices, w2_edges)
        branch2 = frozenset(cert.branch.values())
        y0 = min(branch2)
        pairs_checked = 0
        min_flow: Optional[int] = None
        for z in sorted(branch2):
            if z == y0:
                continue
            for (a, b) in ((y0, z), (z, y0)):
                flow = arc_connectivity(w2, w2_dir, a, b, limit=k)
                pairs_checked += 1
                min_flow = flow if min_flow is None else min(min_flow, flow)
                if flow < k:
                    raise ConsistencyError(
                        f"only {flow} arc-disjoint paths from {a} to {b}")
        out.append(RoundResult(orientation=Orientation(w2, w2_dir),
                               branch=tuple(sorted(branch2)),
                               new_vertex=v_new, certificate=cert,
                               pattern_direction=h_dir,
                               pairs_checked=pairs_checked,
                               min_flow=k if min_flow is None else min_flow))
        w_graph, w_dir, w_branch = w2, w2_dir, branch2
    return tuple(out)
