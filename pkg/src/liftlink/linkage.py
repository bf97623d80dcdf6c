"""Weak k-linkages: finite solving and verification, block-tree routing,
and the full infinite pipeline on truncations.

A weak k-linkage joins k terminal pairs by pairwise edge-disjoint paths.
The finite solver here is complete (its Infeasible answer is a proof, not
a give-up); the infinite pipeline contracts boundary-linked components,
lifts their boundary edges down to nothing or to an odd remainder, solves
the finite contraction, and then re-expands lifted edges and odd hubs
into honest paths of the original graph.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .errors import (ConsistencyError, DepthExhausted, DisconnectedGraph, OddK,
                     PreconditionViolated, ResourceBudgetExceeded)
from .families import LazyFamily, truncate
from .fan import FanRequest, FanResult, _shortcut, linking_fan
from .flows import is_k_edge_connected, unit_maxflow
from .multigraph import MultiGraph
from .rays import RaySystem, boundary_linked_decomposition
from .splitting import SplitResult, compatible_splitting, expand_lift

DEFAULT_BUDGET = 400000


@dataclass(frozen=True)
class LinkageInstance:
    """k terminal pairs to be joined by edge-disjoint paths.

    ``graph`` is either a finite MultiGraph or a LazyFamily (for the
    infinite pipeline and for family-level verification).
    """

    graph: Union[MultiGraph, LazyFamily]
    k: int
    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if len(self.pairs) != self.k:
            raise PreconditionViolated(
                f"expected {self.k} pairs, got {len(self.pairs)}")
        for s, t in self.pairs:
            if s == t:
                raise PreconditionViolated(f"terminal pair ({s}, {t}) collapses")


@dataclass(frozen=True)
class Linkage:
    """One simple path per terminal pair, pairwise edge-disjoint."""

    paths: Tuple[Tuple[int, ...], ...]
    path_edges: Tuple[Tuple[int, ...], ...]


def _adjacent(graph: Union[MultiGraph, LazyFamily], v: int, e: int,
              w: int) -> bool:
    if isinstance(graph, MultiGraph):
        return (graph.has_edge(e) and graph.has_vertex(v)
                and set(graph.endpoints(e)) == {v, w})
    return (e, w) in graph.neighbors(v)


def verify_linkage(inst: LinkageInstance,
                   cand: Linkage) -> Tuple[bool, List[str]]:
    """Independent audit of a candidate linkage; never consults a solver."""
    diags: List[str] = []
    if len(cand.paths) != inst.k or len(cand.path_edges) != inst.k:
        diags.append(f"expected {inst.k} paths, got {len(cand.paths)}")
        return False, diags
    seen: Counter = Counter()
    for i, (vs, es) in enumerate(zip(cand.paths, cand.path_edges)):
        s, t = inst.pairs[i]
        if len(vs) != len(es) + 1:
            diags.append(f"path {i}: {len(vs)} vertices vs {len(es)} edges")
            continue
        if {vs[0], vs[-1]} != {s, t}:
            diags.append(f"path {i}: joins {vs[0]}..{vs[-1]}, wanted {s}..{t}")
        if len(set(vs)) != len(vs):
            diags.append(f"path {i}: repeats a vertex")
        for j, e in enumerate(es):
            if not _adjacent(inst.graph, vs[j], e, vs[j + 1]):
                diags.append(f"path {i}: edge {e} does not join "
                             f"{vs[j]} and {vs[j + 1]}")
        seen.update(es)
    shared = sorted(e for e, c in seen.items() if c > 1)
    if shared:
        diags.append(f"edges used twice: {shared}")
    return not diags, diags


# ---------------------------------------------------------------------------
# finite solving


def _local_connectivity(g: MultiGraph, s: int, t: int) -> int:
    cap = min(g.degree(s), g.degree(t))
    return unit_maxflow(g, [s] * cap, [t] * cap).value


def _cuts_admit(g: MultiGraph, remaining: Sequence[Tuple[int, int]],
                banned: Set[int]) -> bool:
    """Necessary condition: pooled residual flow covers every repeated pair."""
    pools = Counter(frozenset(p) for p in remaining)
    for pair, want in pools.items():
        s, t = sorted(pair)
        got = unit_maxflow(g, [s] * want, [t] * want, limit=want,
                           forbidden=banned).value
        if got < want:
            return False
    return True


def _iter_paths(g: MultiGraph, s: int, t: int, banned: Set[int],
                spent: List[int], budget: int):
    """Simple s-t paths avoiding banned edges, shortest first, deterministic."""
    dist: Dict[int, int] = {t: 0}
    queue = deque([t])
    while queue:
        v = queue.popleft()
        for e in g.incident(v):
            if e in banned:
                continue
            w = g.other_endpoint(e, v)
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if s not in dist:
        return
    for bound in range(dist[s], g.num_vertices):
        # depth-first with a length budget; emits exactly the paths of
        # length == bound, so every simple path appears once overall
        stack = [(s, iter(g.incident(s)))]
        verts = [s]
        edges: List[int] = []
        onpath = {s}
        while stack:
            v, it = stack[-1]
            advanced = False
            for e in it:
                if e in banned or (edges and e == edges[-1]):
                    continue
                w = g.other_endpoint(e, v)
                if w in onpath:
                    continue
                need = dist.get(w)
                if need is None or len(edges) + 1 + need > bound:
                    continue
                spent[0] += 1
                if spent[0] > budget:
                    raise ResourceBudgetExceeded(
                        f"path search exceeded {budget} steps")
                if w == t:
                    if len(edges) + 1 == bound:
                        yield verts + [w], edges + [e]
                    continue
                stack.append((w, iter(g.incident(w))))
                verts.append(w)
                edges.append(e)
                onpath.add(w)
                advanced = True
                break
            if not advanced:
                stack.pop()
                onpath.discard(verts.pop())
                if edges:
                    edges.pop()


def solve_finite(inst: LinkageInstance,
                 budget: int = DEFAULT_BUDGET) -> Optional[Linkage]:
    """Complete search for a weak linkage; None is a proof of infeasibility.

    Demands are served in ascending order of terminal-pair connectivity;
    candidate paths come shortest first; branches die early when some
    residual cut is too small for the demand still crossing it.  A None
    return therefore certifies that no edge-disjoint path system exists.
    """
    g = inst.graph
    if not isinstance(g, MultiGraph):
        raise PreconditionViolated("finite solving needs an explicit graph")
    if inst.k < 1:
        raise PreconditionViolated("at least one terminal pair is required")
    for s, t in inst.pairs:
        if not (g.has_vertex(s) and g.has_vertex(t)):
            raise PreconditionViolated(f"terminal {s if not g.has_vertex(s) else t} "
                                       "is not a vertex of the graph")
    order = sorted(range(inst.k),
                   key=lambda i: (_local_connectivity(g, *inst.pairs[i]), i))
    demands = [inst.pairs[i] for i in order]
    spent = [0]
    assignment: List[Optional[Tuple[List[int], List[int]]]] = [None] * inst.k

    def descend(idx: int, banned: Set[int]) -> bool:
        if idx == inst.k:
            return True
        s, t = demands[idx]
        for vs, es in _iter_paths(g, s, t, banned, spent, budget):
            wider = banned | set(es)
            if not _cuts_admit(g, demands[idx + 1:], wider):
                continue
            if descend(idx + 1, wider):
                assignment[idx] = (vs, es)
                return True
        return False

    if _cuts_admit(g, demands, set()) and descend(0, set()):
        paths: List[Tuple[int, ...]] = [()] * inst.k
        path_edges: List[Tuple[int, ...]] = [()] * inst.k
        for slot, original in enumerate(order):
            vs, es = assignment[slot]  # type: ignore[misc]
            paths[original] = tuple(vs)
            path_edges[original] = tuple(es)
        found = Linkage(tuple(paths), tuple(path_edges))
        ok, diags = verify_linkage(inst, found)
        if not ok:
            raise ConsistencyError(f"solver emitted a bad linkage: {diags}")
        return found
    if inst.k % 2 == 1 and is_k_edge_connected(g, inst.k + 1):
        raise ConsistencyError(
            "exhaustive search found no linkage although odd demand in a "
            "(k+1)-edge-connected graph always has one")
    return None


# ---------------------------------------------------------------------------
# block-tree routing


def _blocks(g: MultiGraph) -> List[Tuple[int, ...]]:
    """Edge ids of each maximal 2-vertex-connected piece (bridges included)."""
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    timer = 0
    out: List[Tuple[int, ...]] = []
    estack: List[int] = []
    for root in sorted(g.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: List[Tuple[int, Optional[int], Iterable[int]]] = [
            (root, None, iter(g.incident(root)))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via:
                    continue
                w = g.other_endpoint(e, v)
                if w not in disc:
                    estack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(g.incident(w))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(e)
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv, _pe, _it = stack[-1]
                    low[pv] = min(low[pv], low[v])
                    if low[v] >= disc[pv]:
                        cut = estack.index(via)
                        piece = estack[cut:]
                        del estack[cut:]
                        out.append(tuple(sorted(piece)))
    return sorted(out)


@dataclass(frozen=True)
class BlockRouting:
    """Per-block sub-instances plus the plan to reassemble their answers.

    ``plan[i]`` lists, for original pair i, hops (block, slot, a, b): the
    slot-th demand of block's instance must be walked from a to b.
    """

    blocks: Tuple[Tuple[int, ...], ...]
    instances: Tuple[Tuple[int, LinkageInstance], ...]
    plan: Tuple[Tuple[Tuple[int, int, int, int], ...], ...]

    def instance_for(self, block: int) -> LinkageInstance:
        for b, inst in self.instances:
            if b == block:
                return inst
        raise KeyError(f"block {block} received no demands")


def route_via_blocks(g: MultiGraph,
                     pairs: Sequence[Tuple[int, int]]) -> BlockRouting:
    """Split a linkage problem along the block tree of a connected graph.

    Every pair is routed along the unique tree path between a block
    holding each terminal; each visited block receives the sub-pair cut
    out by the adjacent cut-vertices (or the terminal itself at the
    ends).  Solving every sub-instance and concatenating the segments in
    plan order yields walks joining the original pairs.
    """
    if not is_k_edge_connected(g, 1):
        raise DisconnectedGraph("block routing needs a connected graph")
    blocks = _blocks(g)
    members: List[FrozenSet[int]] = []
    for eids in blocks:
        verts: Set[int] = set()
        for e in eids:
            verts.update(g.endpoints(e))
        members.append(frozenset(verts))
    home: Dict[int, List[int]] = {}
    for b, verts in enumerate(members):
        for v in verts:
            home.setdefault(v, []).append(b)

    # breadth-first through the block tree: nodes are block indices,
    # moves go through shared cut-vertices
    def tree_path(starts: List[int], goals: Set[int]) -> List[int]:
        prev: Dict[int, Optional[int]] = {b: None for b in starts}
        queue = deque(sorted(starts))
        while queue:
            b = queue.popleft()
            if b in goals:
                route = [b]
                while prev[route[-1]] is not None:
                    route.append(prev[route[-1]])  # type: ignore[arg-type]
                return route[::-1]
            for v in sorted(members[b]):
                for nb in home[v]:
                    if nb not in prev:
                        prev[nb] = b
                        queue.append(nb)
        raise DisconnectedGraph("terminals in different components")

    sub_pairs: Dict[int, List[Tuple[int, int]]] = {}
    plan: List[Tuple[Tuple[int, int, int, int], ...]] = []
    for s, t in pairs:
        if s not in home or t not in home:
            raise PreconditionViolated(f"terminal {s if s not in home else t} "
                                       "is not a vertex of the graph")
        route = tree_path(home[s], set(home[t]))
        hops: List[Tuple[int, int, int, int]] = []
        at = s
        for n, b in enumerate(route):
            if n + 1 < len(route):
                shared = sorted(members[b] & members[route[n + 1]])
                if len(shared) != 1:
                    raise ConsistencyError("adjacent blocks overlap in "
                                           f"{len(shared)} vertices")
                nxt = shared[0]
            else:
                nxt = t
            if at != nxt:
                slot = len(sub_pairs.setdefault(b, []))
                sub_pairs[b].append((at, nxt))
                hops.append((b, slot, at, nxt))
            at = nxt
        plan.append(tuple(hops))

    instances = tuple(
        (b, LinkageInstance(g.restriction(blocks[b]), len(ps), tuple(ps)))
        for b, ps in sorted(sub_pairs.items()))
    return BlockRouting(blocks=tuple(blocks), instances=instances,
                        plan=tuple(plan))


def assemble_blocks(routing: BlockRouting,
                    solved: Dict[int, Linkage]) -> Linkage:
    """Concatenate per-block answers into whole simple paths, plan order."""
    paths = []
    path_edges = []
    for hops in routing.plan:
        vs: List[int] = []
        es: List[int] = []
        for b, slot, a, _t in hops:
            seg_v = list(solved[b].paths[slot])
            seg_e = list(solved[b].path_edges[slot])
            if seg_v[0] != a:
                seg_v.reverse()
                seg_e.reverse()
            if seg_v[0] != a:
                raise ConsistencyError(f"block {b} answer misses endpoint {a}")
            if vs:
                seg_v = seg_v[1:]
            vs.extend(seg_v)
            es.extend(seg_e)
        svs, ses = _shortcut(vs, es)
        paths.append(tuple(svs))
        path_edges.append(tuple(ses))
    return Linkage(tuple(paths), tuple(path_edges))


def solve_via_blocks(g: MultiGraph, pairs: Sequence[Tuple[int, int]],
                     budget: int = DEFAULT_BUDGET) -> Optional[Linkage]:
    """Route along the block tree, solve every block, reassemble."""
    routing = route_via_blocks(g, pairs)
    solved: Dict[int, Linkage] = {}
    for b, inst in routing.instances:
        got = solve_finite(inst, budget=budget)
        if got is None:
            return None
        solved[b] = got
    return assemble_blocks(routing, solved)


# ---------------------------------------------------------------------------
# the tight family


def counterexample_family(k: int) -> LinkageInstance:
    """Even-k instance that is k-edge-connected yet has no weak k-linkage.

    A cycle of length 2k with every edge at multiplicity k/2 and the k
    terminal pairs placed antipodally.
    """
    if k % 2 or k < 2:
        raise OddK(f"the tight family needs even k >= 2, got {k}")
    mult = k // 2
    n = 2 * k
    edges = {}
    for pos in range(n):
        for c in range(mult):
            edges[pos * mult + c] = (pos, (pos + 1) % n)
    g = MultiGraph(range(n), edges)
    pairs = tuple((i, k + i) for i in range(k))
    return LinkageInstance(g, k, pairs)


# ---------------------------------------------------------------------------
# the infinite pipeline


@dataclass(frozen=True)
class InfiniteLinkage:
    """A verified linkage in a truncation plus the full derivation trail."""

    linkage: Linkage
    depth: int
    core: Tuple[int, ...]
    split: SplitResult
    contracted: Linkage
    fans: Tuple[Tuple[int, FanResult], ...]


def solve_infinite(fam: LazyFamily, pairs: Sequence[Tuple[int, int]], k: int,
                   depth: int = 16, depth_cap: int = 256,
                   budget: int = DEFAULT_BUDGET) -> InfiniteLinkage:
    """Find and verify a weak k-linkage of terminal pairs in a family.

    Runs the whole machine: decompose the family into a finite core plus
    boundary-linked components, lift each component's boundary down to
    nothing or an odd remainder, solve the finite contraction, re-expand
    lifted edges into their recorded linking paths, and stitch crossings
    of surviving odd vertices through hub fans.  The result is checked
    against raw family adjacency before being returned.
    """
    if k % 2 == 0:
        raise OddK(f"odd k required (the tight family refutes even k), got {k}")
    if fam.declared_connectivity() < k + 1:
        raise PreconditionViolated(
            f"family declares connectivity {fam.declared_connectivity()}, "
            f"need {k + 1}")
    inst = LinkageInstance(fam, k, tuple(pairs))
    terminals = sorted({v for p in pairs for v in p})
    half = truncate(fam, [fam.origin()], depth // 2)
    for v in terminals:
        if not half.graph.has_vertex(v):
            raise PreconditionViolated(
                f"terminal {v} deeper than {depth // 2}; raise the depth")

    big = k + 1
    last: Optional[Exception] = None
    d = depth
    while d <= depth_cap:
        try:
            return _attempt_infinite(fam, inst, terminals, big, d, budget)
        except DepthExhausted as exc:
            last = exc
            d *= 2
    raise DepthExhausted(f"no luck through depth {depth_cap}: {last}")


def _attempt_infinite(fam: LazyFamily, inst: LinkageInstance,
                      terminals: List[int], big: int, depth: int,
                      budget: int) -> InfiniteLinkage:
    core, sets = boundary_linked_decomposition(fam, terminals, depth=depth)
    split = compatible_splitting(fam, core, sets, k=big,
                                 depth=depth, depth_cap=depth)
    h = split.graph
    finite = LinkageInstance(h, inst.k, inst.pairs)
    contracted = solve_finite(finite, budget=budget)
    if contracted is None:
        raise ConsistencyError("contracted instance infeasible; the lifted "
                               "graph should always carry the linkage")

    by_created = {s.created: s for s in split.steps if s.created is not None}
    ends = {e: (o, i) for blk in sets for e, o, i in blk.boundary}
    hub_vertex = {c: i for i, c in split.remaining.items()}

    used_at: Dict[int, List[int]] = {}
    for vs, es in zip(contracted.paths, contracted.path_edges):
        for j, v in enumerate(vs):
            if v in hub_vertex:
                if j == 0 or j == len(vs) - 1:
                    raise ConsistencyError("a path terminates at a "
                                           "contracted piece")
                used_at.setdefault(hub_vertex[v], []).extend(
                    (es[j - 1], es[j]))

    fans: List[Tuple[int, FanResult]] = []
    spoke: Dict[int, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}
    for i, eids in sorted(used_at.items()):
        if len(eids) != len(set(eids)):
            raise ConsistencyError(f"boundary edge crossed twice at piece {i}")
        if len(eids) % 2 or len(eids) > big:
            raise ConsistencyError(
                f"{len(eids)} crossing edges at piece {i}; want even, <= {big}")
        for e in eids:
            if e in by_created:
                raise ConsistencyError("crossing edge is a lift product; "
                                       "components sharing edges are not supported")
        system = sets[i].rays
        chosen = tuple(system.ray_for_edge(e) for e in sorted(eids))
        sub = RaySystem(region=system.region, rays=chosen,
                        verified_depth=system.verified_depth)
        avoid = frozenset(e for s in split.steps if s.set_index == i
                          for e in s.path_edges)
        fan = linking_fan(
            FanRequest(k=big, system=sub, avoid=avoid, length=2), depth)
        fans.append((i, fan))
        for slot, e in enumerate(sorted(eids)):
            pe = fan.path_edges[slot]
            if pe[-1] != e:
                raise ConsistencyError("fan path does not finish on its own "
                                       "boundary edge")
            spoke[e] = (fan.paths[slot], pe)

    paths: List[Tuple[int, ...]] = []
    path_edges: List[Tuple[int, ...]] = []
    for vs, es in zip(contracted.paths, contracted.path_edges):
        wv: List[int] = [vs[0]]
        we: List[int] = []
        j = 0
        while j < len(es):
            if vs[j + 1] in hub_vertex:
                e, f = es[j], es[j + 1]
                if ends[e][0] != vs[j] or ends[f][0] != vs[j + 2]:
                    raise ConsistencyError("crossing edges do not hang off "
                                           "the walk's real vertices")
                qe_v, qe_e = spoke[e]
                qf_v, qf_e = spoke[f]
                # both hub paths finish on their own boundary edge, so the
                # splice is: ride one down to the hub, the other back out
                wv.extend(qe_v[::-1][1:])
                we.extend(qe_e[::-1])
                wv.extend(qf_v[1:])
                we.extend(qf_e)
                j += 2
            else:
                seg_v, seg_e = expand_lift(es[j], vs[j], vs[j + 1],
                                            by_created, ends)
                wv.extend(seg_v[1:])
                we.extend(seg_e)
                j += 1
        sv, se = _shortcut(wv, we)
        paths.append(tuple(sv))
        path_edges.append(tuple(se))

    final = Linkage(tuple(paths), tuple(path_edges))
    ok, diags = verify_linkage(inst, final)
    if not ok:
        raise ConsistencyError(f"assembled linkage failed verification: {diags}")
    return InfiniteLinkage(linkage=final, depth=depth, core=tuple(core),
                           split=split, contracted=contracted,
                           fans=tuple(fans))
