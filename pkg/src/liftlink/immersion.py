"""Immersing a finite highly edge-connected pattern inside a family.

Starting from a finite seed set, the construction grows a core, contracts
the infinite pieces outside it, lifts their boundaries down at an even
connectivity, and re-expands everything as concrete edge-disjoint paths:
synthetic lift edges unroll into recorded linking paths, and each piece
surviving with an odd boundary contributes a hub vertex tied to its
remaining boundary edges by a fan of spoke paths.  The result is a
certificate one can audit edge by edge against raw adjacency.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import ConsistencyError, DepthExhausted, PreconditionViolated
from .families import LazyFamily, truncate
from .fan import FanRequest, FanResult, linking_fan
from .flows import is_k_edge_connected
from .multigraph import MultiGraph
from .rays import RaySystem, boundary_linked_decomposition
from .splitting import SplitResult, compatible_splitting, expand_lift

Walk = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (vertices, edge ids)


@dataclass(frozen=True)
class ImmersionCertificate:
    """A finite pattern graph realized as edge-disjoint paths of a family.

    ``images`` maps each pattern edge to a host walk running between the
    branch images of its endpoints, in endpoint order.  Lift pairs that
    closed on a single core vertex have no pattern edge; their boundary
    edges are realized by the closed walks in ``closed_images``, anchored
    at that vertex.  ``boundaries`` lists every boundary edge of every
    contracted piece, in piece order, for the coverage check.
    """

    host: MultiGraph
    pattern: MultiGraph
    k: int
    core: FrozenSet[int]
    branch: Dict[int, int]
    images: Dict[int, Walk]
    closed_images: Tuple[Walk, ...]
    boundaries: Tuple[Tuple[int, ...], ...]
    depth: int
    split: SplitResult = field(repr=False, compare=False)
    fans: Tuple[Tuple[int, FanResult], ...] = field(repr=False, compare=False)

    @property
    def branch_vertices(self) -> FrozenSet[int]:
        return frozenset(self.branch.values())


def check_certificate(cert: ImmersionCertificate,
                      fam: Optional[LazyFamily] = None) -> List[str]:
    """Audit an immersion certificate; returns diagnostics, empty when good.

    Checks the walks against the host graph (and, when a family is given,
    against raw adjacency), pairwise edge-disjointness, the identity
    embedding of the core's own edges, branch degrees, and boundary
    coverage.  The pattern's edge-connectivity is the caller's concern.
    """
    out: List[str] = []
    h = cert.pattern
    host = cert.host
    branch = cert.branch

    if sorted(branch) != sorted(h.vertices):
        out.append("branch map keys differ from pattern vertices")
        return out
    if len(set(branch.values())) != len(branch):
        out.append("branch map is not injective")
    for v, img in branch.items():
        if not host.has_vertex(img):
            out.append(f"branch image {img} missing from host")

    if sorted(cert.images) != sorted(h.edge_ids):
        out.append("image map keys differ from pattern edges")
        return out

    def walk_ok(vs: Tuple[int, ...], es: Tuple[int, ...], what: str) -> None:
        if len(vs) != len(es) + 1:
            out.append(f"{what}: length mismatch")
            return
        for a in range(len(es)):
            e, x, y = es[a], vs[a], vs[a + 1]
            if not host.has_edge(e) or set(host.endpoints(e)) != {x, y}:
                out.append(f"{what}: edge {e} does not join {x} and {y} in host")
                return
            if fam is not None and (e, y) not in fam.neighbors(x):
                out.append(f"{what}: edge {e} not a family edge at {x}")
                return

    for eid, (vs, es) in sorted(cert.images.items()):
        u, v = h.endpoints(eid)
        if not vs or vs[0] != branch[u] or vs[-1] != branch[v]:
            out.append(f"image of {eid} does not run between its branch ends")
            continue
        walk_ok(vs, es, f"image of {eid}")
    for n, (vs, es) in enumerate(cert.closed_images):
        if not vs or vs[0] != vs[-1]:
            out.append(f"closed image {n} is not closed")
            continue
        if vs[0] not in cert.core:
            out.append(f"closed image {n} anchored outside the core")
        walk_ok(vs, es, f"closed image {n}")

    used = Counter()
    for _vs, es in cert.images.values():
        used.update(es)
    for _vs, es in cert.closed_images:
        used.update(es)
    dups = sorted(e for e, c in used.items() if c > 1)
    if dups:
        out.append(f"edges used by two image walks: {dups[:8]}")

    # the core's own edges must be their own images
    for eid in h.edge_ids:
        u, v = h.endpoints(eid)
        if eid >= 0 and u in cert.core and v in cert.core:
            if cert.images[eid] != ((u, v), (eid,)):
                out.append(f"core edge {eid} is not its own image")

    # hubs: every non-core pattern vertex has degree 2k+1
    for v in h.vertices:
        if v not in cert.core and h.degree(v) != 2 * cert.k + 1:
            out.append(f"hub pattern vertex {v} has degree {h.degree(v)}")

    for i, edges in enumerate(cert.boundaries):
        missing = [e for e in edges if e not in used]
        if missing:
            out.append(f"piece {i} boundary edges not covered: {missing[:8]}")
    return out


def immerse(fam: LazyFamily, a0: Iterable[int], k: int,
            depth: int = 16, depth_cap: int = 256) -> ImmersionCertificate:
    """Build and audit an immersion of a 2k-edge-connected finite pattern.

    The grown core's induced subgraph embeds identically; every contracted
    piece has its whole boundary covered by the image walks.  Depth doubles
    until the decomposition, splitting, and fans all go through.
    """
    if k < 1:
        raise PreconditionViolated(f"positive k required, got {k}")
    seed = frozenset(a0)
    if fam.declared_connectivity() < 2 * k + 1:
        raise PreconditionViolated(
            f"family declares connectivity {fam.declared_connectivity()}, "
            f"need {2 * k + 1}")
    last: Optional[Exception] = None
    d = depth
    while d <= depth_cap:
        try:
            return _attempt(fam, seed, k, d)
        except DepthExhausted as exc:
            last = exc
            d *= 2
    raise DepthExhausted(f"no certificate through depth {depth_cap}: {last}")


def _attempt(fam: LazyFamily, seed: FrozenSet[int], k: int,
             depth: int) -> ImmersionCertificate:
    core, sets = boundary_linked_decomposition(fam, seed, depth=depth)
    split = compatible_splitting(fam, core, sets, k=2 * k,
                                 depth=depth, depth_cap=depth)
    h = split.graph
    by_created = {s.created: s for s in split.steps if s.created is not None}
    ends: Dict[int, Tuple[int, int]] = {}
    for blk in sets:
        for eid, outer, inner in blk.boundary:
            ends[eid] = (outer, inner)

    branch: Dict[int, int] = {v: v for v in h.vertices if v >= 0}
    fans: List[Tuple[int, FanResult]] = []
    spoke: Dict[int, Walk] = {}
    for i, c in sorted(split.remaining.items()):
        eids = h.incident(c)
        if len(eids) != 2 * k + 1:
            raise ConsistencyError(
                f"piece {i} survived at degree {len(eids)}, want {2 * k + 1}")
        for e in eids:
            if e < 0 or e not in ends:
                raise ConsistencyError("synthetic edge left hanging on a "
                                       "contracted vertex")
        system = sets[i].rays
        chosen = tuple(system.ray_for_edge(e) for e in sorted(eids))
        sub = RaySystem(region=system.region, rays=chosen,
                        verified_depth=system.verified_depth)
        avoid = frozenset(e for s in split.steps if s.set_index == i
                          for e in s.path_edges)
        fan = linking_fan(
            FanRequest(k=2 * k + 1, system=sub, avoid=avoid, length=2), depth)
        fans.append((i, fan))
        branch[c] = fan.hub
        for slot, e in enumerate(sorted(eids)):
            pe = fan.path_edges[slot]
            if pe[-1] != e:
                raise ConsistencyError("fan path does not finish on its own "
                                       "boundary edge")
            spoke[e] = (fan.paths[slot], pe)

    images: Dict[int, Walk] = {}
    for eid in h.edge_ids:
        u, v = h.endpoints(eid)
        if u < 0 and v < 0:
            raise ConsistencyError("edge between two contracted vertices; "
                                   "components sharing edges are not supported")
        if u < 0 or v < 0:
            c, outer = (u, v) if u < 0 else (v, u)
            if eid < 0:
                raise ConsistencyError("synthetic edge incident with a "
                                       "contracted vertex")
            pv, pe = spoke[eid]  # hub -> ... -> outer, last edge = eid
            if pv[-1] != outer:
                raise ConsistencyError("fan path does not end at the crossing "
                                       "edge's outer endpoint")
            if u < 0:
                images[eid] = (pv, pe)
            else:
                images[eid] = (pv[::-1], pe[::-1])
        else:
            vs, es = expand_lift(eid, u, v, by_created, ends)
            images[eid] = (tuple(vs), tuple(es))

    closed: List[Walk] = []
    for s in split.steps:
        if s.created is not None:
            continue
        e1, e2 = s.lifted
        o1, i1 = ends[e1]
        o2, i2 = ends[e2]
        if o1 != o2:
            raise ConsistencyError("dropped lift pair with distinct outer "
                                   "endpoints")
        pv = s.path_vertices
        if pv[0] != i1 or pv[-1] != i2:
            raise ConsistencyError("recorded linking path does not join the "
                                   "dropped pair's entry vertices")
        closed.append(((o1,) + pv + (o2,), (e1,) + s.path_edges + (e2,)))

    host = truncate(fam, core, split.depth + 2).graph
    cert = ImmersionCertificate(
        host=host, pattern=h, k=k, core=core, branch=branch, images=images,
        closed_images=tuple(closed),
        boundaries=tuple(tuple(e for e, _o, _i in blk.boundary)
                         for blk in sets),
        depth=split.depth, split=split, fans=tuple(fans))

    diags = check_certificate(cert, fam)
    if diags:
        raise ConsistencyError("immersion audit failed: " + "; ".join(diags))
    if not is_k_edge_connected(h, 2 * k):
        raise ConsistencyError("pattern graph is not 2k-edge-connected")
    return cert
