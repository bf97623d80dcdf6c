"""Liftability of edge pairs at a vertex and splitting-off sequences.

Lifting a pair of edges ``sx``, ``sy`` replaces them by a direct edge ``xy``.
The central object is the lifting graph of ``(g, s, k)``: its nodes are the
edges at ``s`` and its adjacency records which pairs can be lifted without
breaking k-edge-connectivity between vertices other than ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (
    NotIncident,
    OddK,
    PreconditionViolated,
    SameEdge,
    Stuck,
)
from .flows import is_sk_edge_connected, unit_maxflow
from .multigraph import MultiGraph, bridges


# --------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class LiftingGraph:
    """Liftability relation on the edges incident with ``s``."""

    s: int
    k: int
    nodes: Tuple[int, ...]
    adjacency: Dict[int, FrozenSet[int]]

    def is_adjacent(self, e: int, f: int) -> bool:
        return f in self.adjacency[e]

    def node_degree(self, e: int) -> int:
        return len(self.adjacency[e])

    def edge_pairs(self) -> List[Tuple[int, int]]:
        return [(e, f) for e, f in combinations(self.nodes, 2)
                if self.is_adjacent(e, f)]

    def complement_components(self) -> List[FrozenSet[int]]:
        """Connected components of the complement of the liftability relation."""
        seen = set()
        comps = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = {start}
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for y in self.nodes:
                    if y != x and y not in comp and y not in self.adjacency[x]:
                        comp.add(y)
                        frontier.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return sorted(comps, key=min)


@dataclass(frozen=True)
class StructureClass:
    """Shape of a lifting graph: one of the two good forms, or Other.

    ``ComplementDisconnected``: the complement of the liftability relation
    splits into >= 2 components (witness: the component partition).
    ``IsolatedPlusBalancedBipartite``: one node with no liftable partner plus
    a complete bipartite graph with equal sides on the rest.
    """

    tag: str
    complement_components: Tuple[FrozenSet[int], ...] = ()
    isolated: Optional[int] = None
    side_a: FrozenSet[int] = frozenset()
    side_b: FrozenSet[int] = frozenset()

    def validate(self, lg: LiftingGraph) -> bool:
        if self.tag == "ComplementDisconnected":
            if len(self.complement_components) < 2:
                return False
            parts = [set(c) for c in self.complement_components]
            flat = [x for p in parts for x in p]
            if sorted(flat) != sorted(lg.nodes):
                return False
            # no complement edge between different parts: in the lifting
            # graph every cross pair must be adjacent
            for p, q in combinations(parts, 2):
                for e in p:
                    for f in q:
                        if not lg.is_adjacent(e, f):
                            return False
            return True
        if self.tag == "IsolatedPlusBalancedBipartite":
            if self.isolated is None:
                return False
            a, b = set(self.side_a), set(self.side_b)
            if len(a) != len(b) or not a:
                return False
            if sorted([self.isolated] + list(a | b)) != sorted(lg.nodes):
                return False
            if lg.node_degree(self.isolated) != 0:
                return False
            for e in a:
                for f in a:
                    if e != f and lg.is_adjacent(e, f):
                        return False
            for e in b:
                for f in b:
                    if e != f and lg.is_adjacent(e, f):
                        return False
            return all(lg.is_adjacent(e, f) for e in a for f in b)
        return self.tag == "Other"


@dataclass(frozen=True)
class DangerousSet:
    """Vertex set certifying that pairs of edges at ``s`` cannot be lifted.

    ``side`` excludes ``s``, has boundary at most k+1, and leaves at least
    one vertex outside ``side + {s}``.  Lifting two s-edges whose other ends
    lie in ``side`` would cut those ends off by fewer than k edges.
    """

    side: FrozenSet[int]
    boundary_size: int

    def validate(self, g: MultiGraph, s: int, k: int) -> bool:
        if s in self.side or not self.side:
            return False
        if set(g.vertices) - set(self.side) - {s} == set():
            return False
        return (len(g.boundary(self.side)) == self.boundary_size
                and self.boundary_size <= k + 1)

    def covers_pair(self, g: MultiGraph, s: int, e: int, f: int) -> bool:
        """True when both non-s endpoints lie inside the set."""
        return (g.other_endpoint(e, s) in self.side
                and g.other_endpoint(f, s) in self.side)


@dataclass(frozen=True)
class LiftStep:
    """One performed lift: edges ``e`` (to x) and ``f`` (to y) at ``s``."""

    s: int
    e: int
    f: int
    x: int
    y: int
    created: Optional[int]  # new edge id, None when x == y


# --------------------------------------------------------------------------
# operations


def _require_incident_pair(g: MultiGraph, s: int, e: int, f: int) -> None:
    if e == f:
        raise SameEdge(f"need two distinct edges at {s}, got {e} twice")
    for eid in (e, f):
        if s not in g.endpoints(eid):
            raise NotIncident(f"edge {eid} is not incident with {s}")


def is_liftable(g: MultiGraph, s: int, k: int, e: int, f: int,
                precheck: bool = True) -> bool:
    """Can ``e`` and ``f`` be lifted at ``s`` without losing (s,k)-connectivity?"""
    _require_incident_pair(g, s, e, f)
    if precheck and not is_sk_edge_connected(g, s, k):
        raise PreconditionViolated(
            f"graph is not ({s},{k})-edge-connected to begin with")
    lifted, _new = g.lift(s, e, f)
    return is_sk_edge_connected(lifted, s, k)


def lifting_graph(g: MultiGraph, s: int, k: int) -> LiftingGraph:
    """Compute the full liftability relation on the edges at ``s``."""
    if not is_sk_edge_connected(g, s, k):
        raise PreconditionViolated(
            f"graph is not ({s},{k})-edge-connected")
    nodes = tuple(sorted(g.incident(s)))
    adj: Dict[int, set] = {e: set() for e in nodes}
    for e, f in combinations(nodes, 2):
        if is_liftable(g, s, k, e, f, precheck=False):
            adj[e].add(f)
            adj[f].add(e)
    return LiftingGraph(s=s, k=k, nodes=nodes,
                        adjacency={e: frozenset(v) for e, v in adj.items()})


def classify_structure(lg: LiftingGraph) -> StructureClass:
    """Decide which of the two expected shapes the lifting graph has."""
    comps = lg.complement_components()
    if len(comps) >= 2:
        return StructureClass(tag="ComplementDisconnected",
                              complement_components=tuple(comps))
    isolated = [e for e in lg.nodes if lg.node_degree(e) == 0]
    if len(isolated) == 1 and len(lg.nodes) % 2 == 1 and len(lg.nodes) >= 3:
        rest = [e for e in lg.nodes if e != isolated[0]]
        anchor = rest[0]
        side_b = set(lg.adjacency[anchor])
        side_a = set(rest) - side_b
        cand = StructureClass(tag="IsolatedPlusBalancedBipartite",
                              isolated=isolated[0],
                              side_a=frozenset(side_a),
                              side_b=frozenset(side_b))
        if cand.validate(lg):
            return cand
    return StructureClass(tag="Other")


def find_dangerous_set(g: MultiGraph, s: int, k: int,
                       edges: Sequence[int]) -> Optional[DangerousSet]:
    """A vertex set witnessing that ``edges`` are pairwise non-liftable.

    Searches for A with s outside, boundary at most k+1, some vertex beyond
    A + {s}, and all non-s endpoints of ``edges`` inside.  The search walks
    candidate outside vertices z and takes a minimum cut separating the
    endpoint set from {s, z}; None means no qualifying set was found.
    """
    if g.degree(s) == 3:
        raise PreconditionViolated("degree 3 at the split vertex is excluded")
    for b in bridges(g):
        if s in g.endpoints(b):
            raise PreconditionViolated("split vertex lies on a cut-edge")
    if not edges:
        raise PreconditionViolated("need at least one edge at the vertex")
    for e, f in combinations(sorted(set(edges)), 2):
        if is_liftable(g, s, k, e, f, precheck=False):
            raise PreconditionViolated(
                f"edges {e} and {f} are liftable; not an independent set")
    for e in edges:
        if s not in g.endpoints(e):
            raise NotIncident(f"edge {e} is not incident with {s}")
    ends = sorted({g.other_endpoint(e, s) for e in edges})
    best: Optional[DangerousSet] = None
    # terminal capacities exceed the degree so a minimum cut always consists
    # of real edges and the reachable side is the wanted vertex set
    sources = [x for x in ends for _ in range(g.degree(x) + 1)]
    for z in sorted(set(g.vertices) - set(ends) - {s}):
        sinks = [s] * (g.degree(s) + 1) + [z] * (g.degree(z) + 1)
        res = unit_maxflow(g, sources, sinks)
        if res.value <= k + 1 and res.cut_side is not None:
            side = frozenset(res.cut_side)
            cand = DangerousSet(side=side, boundary_size=len(g.boundary(side)))
            if cand.validate(g, s, k) and all(x in side for x in ends):
                if best is None or cand.boundary_size < best.boundary_size:
                    best = cand
    return best


def admissible_splitting(g: MultiGraph, s: int, k: int
                         ) -> Tuple[List[LiftStep], MultiGraph]:
    """Lift pairs at ``s`` greedily until the degree reaches 0 or k+1.

    Even starting degree ends at 0 (and ``s`` is removed); odd starting
    degree ends at k+1.  Raises Stuck if no liftable pair exists before the
    target degree is reached, which the structure results rule out for even
    k; reaching it therefore indicates an internal inconsistency.
    """
    if k % 2 != 0 or k <= 0:
        raise OddK(f"splitting-off requires even positive k, got {k}")
    if not is_sk_edge_connected(g, s, k):
        raise PreconditionViolated(
            f"graph is not ({s},{k})-edge-connected")
    start_deg = g.degree(s)
    target = 0 if start_deg % 2 == 0 else k + 1
    if start_deg < target:
        raise PreconditionViolated(
            f"degree {start_deg} at {s} is below the odd-case target {k + 1}")
    steps: List[LiftStep] = []
    cur = g
    while cur.degree(s) > target:
        found = None
        for e, f in combinations(sorted(cur.incident(s)), 2):
            if is_liftable(cur, s, k, e, f, precheck=False):
                found = (e, f)
                break
        if found is None:
            raise Stuck(
                f"no liftable pair at degree {cur.degree(s)}; "
                "this contradicts the structure of the lifting graph")
        e, f = found
        x = cur.other_endpoint(e, s)
        y = cur.other_endpoint(f, s)
        cur, created = cur.lift(s, e, f)
        steps.append(LiftStep(s=s, e=e, f=f, x=x, y=y, created=created))
    if target == 0:
        cur = cur.delete_vertex(s)
    return steps, cur
