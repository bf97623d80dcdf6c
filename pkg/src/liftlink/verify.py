"""Independent certificate checking.

Every checker here re-derives the claimed properties from the document
alone, using only the graph core, the flow oracles, and the family
registry.  None of the solver modules are imported, so a bug in a solver
cannot silently vouch for its own output.

Three outcomes are kept apart: ``ok`` (the certificate holds), ``fail``
(the document is malformed or makes a false claim), and ``unverified``
(the document claims something this checker cannot replay, such as a bare
infeasibility verdict).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import io
from .errors import LiftlinkError, MalformedDocument
from .families import LazyFamily
from .flows import (arc_connectivity, is_k_edge_connected,
                    is_sk_edge_connected, local_edge_connectivity)
from .multigraph import MultiGraph

OK = "ok"
FAIL = "fail"
UNVERIFIED = "unverified"


@dataclass
class Report:
    """Outcome of replaying one document."""

    kind: str
    status: str = OK
    diagnostics: List[str] = field(default_factory=list)
    checked: Dict[str, int] = field(default_factory=dict)

    def flag(self, message: str) -> None:
        self.diagnostics.append(message)
        self.status = FAIL

    def note(self, message: str) -> None:
        """Record a claim that cannot be replayed without failing the doc."""
        self.diagnostics.append(message)
        if self.status == OK:
            self.status = UNVERIFIED

    def count(self, key: str, by: int = 1) -> None:
        self.checked[key] = self.checked.get(key, 0) + by

    @property
    def ok(self) -> bool:
        return self.status == OK


def verify_document(doc: Dict[str, object]) -> Report:
    """Dispatch a document to the checker for its schema kind."""
    try:
        kind = io.doc_kind(doc)
    except MalformedDocument as exc:
        rep = Report(kind="?")
        rep.flag(str(exc))
        return rep
    rep = Report(kind=kind)
    try:
        _CHECKERS[kind](doc, rep)
    except (MalformedDocument, KeyError, TypeError, ValueError, IndexError) as exc:
        rep.flag(f"malformed {kind} document: {exc!r}")
    except LiftlinkError as exc:
        rep.flag(f"{kind} document rejected: {exc}")
    return rep


def verify_path(path: str) -> Report:
    try:
        doc = io.read_doc(path)
    except (OSError, MalformedDocument) as exc:
        rep = Report(kind="?")
        rep.flag(f"cannot read {path}: {exc}")
        return rep
    return verify_document(doc)


# --------------------------------------------------------------------------
# walk primitives shared by several checkers


def _family_step_ok(fam: LazyFamily, v: int, eid: int, w: int) -> bool:
    try:
        return any(e == eid and o == w for e, o in fam.neighbors(v))
    except LiftlinkError:
        return False


def _check_walk_graph(g: MultiGraph, vs: Sequence[int], es: Sequence[int],
                      label: str, rep: Report) -> bool:
    if len(vs) != len(es) + 1 or not vs:
        rep.flag(f"{label}: vertex/edge counts do not form a walk")
        return False
    good = True
    for i, eid in enumerate(es):
        if eid not in g.edges:
            rep.flag(f"{label}: edge {eid} is not in the graph")
            good = False
            continue
        if set(g.endpoints(eid)) != {vs[i], vs[i + 1]}:
            rep.flag(f"{label}: edge {eid} does not join "
                     f"{vs[i]} and {vs[i + 1]}")
            good = False
    return good


def _check_walk_family(fam: LazyFamily, vs: Sequence[int], es: Sequence[int],
                       label: str, rep: Report) -> bool:
    if len(vs) != len(es) + 1 or not vs:
        rep.flag(f"{label}: vertex/edge counts do not form a walk")
        return False
    good = True
    for i, eid in enumerate(es):
        if not _family_step_ok(fam, vs[i], eid, vs[i + 1]):
            rep.flag(f"{label}: edge {eid} does not join "
                     f"{vs[i]} and {vs[i + 1]} in the family")
            good = False
    return good


def _check_disjoint(walks: Sequence[Sequence[int]], label: str,
                    rep: Report) -> None:
    usage = Counter(e for w in walks for e in w)
    for eid, times in sorted(usage.items()):
        if times > 1:
            rep.flag(f"{label}: edge {eid} is used {times} times")


# --------------------------------------------------------------------------
# graphs, families, connectivity


def _check_graph(doc, rep: Report) -> None:
    g = io.graph_from_doc(doc)
    rep.count("vertices", g.num_vertices)
    rep.count("edges", g.num_edges)


def _check_family(doc, rep: Report) -> None:
    fam, roots = io.family_from_doc(doc)
    for r in roots:
        try:
            fam.neighbors(r)
        except LiftlinkError:
            rep.flag(f"root {r} is not a vertex of the family")
    rep.count("roots", len(roots))


def _check_connectivity(doc, rep: Report) -> None:
    g = io.graph_from_doc(doc["graph"])
    for row in doc.get("pairs", []):
        u, v, claimed = int(row[0]), int(row[1]), int(row[2])
        actual = local_edge_connectivity(g, u, v)
        if actual != claimed:
            rep.flag(f"connectivity of {u},{v} is {actual}, not {claimed}")
        rep.count("pairs")
    if "k" in doc and doc["k"] is not None:
        k = int(doc["k"])
        claimed = bool(doc["k_edge_connected"])
        if is_k_edge_connected(g, k) != claimed:
            rep.flag(f"{k}-edge-connectivity verdict is wrong")
        rep.count("k_checks")


# --------------------------------------------------------------------------
# lifting reports


def _liftable_pairs(g: MultiGraph, s: int, k: int) -> FrozenSet[FrozenSet[int]]:
    """Recompute the liftability relation straight from the definition."""
    out = set()
    for e, f in combinations(sorted(g.incident(s)), 2):
        lifted, _created = g.lift(s, e, f)
        if is_sk_edge_connected(lifted, s, k):
            out.add(frozenset((e, f)))
    return frozenset(out)


def _complement_component_count(nodes: Sequence[int],
                                adjacent: FrozenSet[FrozenSet[int]]) -> int:
    remaining = set(nodes)
    count = 0
    while remaining:
        count += 1
        stack = [remaining.pop()]
        while stack:
            x = stack.pop()
            for y in sorted(remaining):
                if frozenset((x, y)) not in adjacent:
                    remaining.discard(y)
                    stack.append(y)
    return count


def _check_liftgraph_report(doc, rep: Report) -> None:
    g = io.graph_from_doc(doc["graph"])
    s = int(doc["s"])
    record = doc["record"]
    k = int(record["k"])
    if not is_sk_edge_connected(g, s, k):
        rep.flag(f"graph is not ({s},{k})-edge-connected")
        return
    if g.degree(s) != int(record["deg_s"]):
        rep.flag(f"recorded deg_s {record['deg_s']} but degree is {g.degree(s)}")
    relation = _liftable_pairs(g, s, k)
    listed = frozenset(frozenset(map(int, p)) for p in doc["liftable_pairs"])
    if listed != relation:
        rep.flag("listed liftable pairs do not match the definition")
    nodes = sorted(g.incident(s))
    comp_count = _complement_component_count(nodes, relation)
    if comp_count != int(record["complement_component_count"]):
        rep.flag(f"complement of the relation has {comp_count} components, "
                 f"not {record['complement_component_count']}")
    tag = record["class_tag"]
    if tag == "ComplementDisconnected":
        if comp_count < 2:
            rep.flag("tagged ComplementDisconnected but the complement "
                     "is connected")
    elif tag == "IsolatedPlusBalancedBipartite":
        if not _is_isolated_plus_bipartite(nodes, relation):
            rep.flag("tagged IsolatedPlusBalancedBipartite but the relation "
                     "has a different shape")
        if int(record["deg_s"]) % 2 == 0 or int(record["deg_s"]) > k + 2:
            rep.flag("bipartite shape with impossible degree at s")
    elif tag != "Other":
        rep.flag(f"unknown class tag {tag!r}")
    ds = record.get("dangerous_set")
    if ds is not None:
        side = frozenset(int(v) for v in ds)
        if s in side or not side:
            rep.flag("dangerous set must be nonempty and avoid s")
        elif not set(g.vertices) - side - {s}:
            rep.flag("dangerous set leaves no vertex outside")
        elif len(g.boundary(side)) > k + 1:
            rep.flag(f"dangerous set has boundary {len(g.boundary(side))} "
                     f"> k+1 = {k + 1}")
        else:
            inside = [e for e in nodes if g.other_endpoint(e, s) in side]
            for e, f in combinations(inside, 2):
                if frozenset((e, f)) in relation:
                    rep.flag(f"dangerous set covers liftable pair {e},{f}")
    rep.count("pairs", len(nodes) * (len(nodes) - 1) // 2)


def _is_isolated_plus_bipartite(nodes: Sequence[int],
                                relation: FrozenSet[FrozenSet[int]]) -> bool:
    degree = {e: sum(1 for f in nodes if frozenset((e, f)) in relation)
              for e in nodes}
    isolated = [e for e in nodes if degree[e] == 0]
    if len(isolated) != 1 or len(nodes) % 2 == 0 or len(nodes) < 3:
        return False
    rest = [e for e in nodes if e != isolated[0]]
    side_a = {rest[0]} | {f for f in rest
                          if frozenset((rest[0], f)) not in relation}
    side_b = set(rest) - side_a
    if len(side_a) != len(side_b):
        return False
    for part in (side_a, side_b):
        for e, f in combinations(sorted(part), 2):
            if frozenset((e, f)) in relation:
                return False
    return all(frozenset((e, f)) in relation for e in side_a for f in side_b)


# --------------------------------------------------------------------------
# splitting-off replay


def _check_split(doc, rep: Report) -> None:
    g = io.graph_from_doc(doc["graph"])
    s = int(doc["s"])
    k = int(doc["k"])
    if s not in g.vertices:
        rep.flag(f"vertex {s} is not in the graph")
        return
    if not is_sk_edge_connected(g, s, k):
        rep.flag(f"input graph is not ({s},{k})-edge-connected")
        return
    start_deg = g.degree(s)
    cur = g
    for n, st in enumerate(doc["steps"]):
        e, f = int(st["e"]), int(st["f"])
        for eid, end in ((e, st["x"]), (f, st["y"])):
            if eid not in cur.edges or s not in cur.endpoints(eid):
                rep.flag(f"step {n}: edge {eid} is not at {s} any more")
                return
            if cur.other_endpoint(eid, s) != int(end):
                rep.flag(f"step {n}: edge {eid} does not end at {end}")
                return
        cur, created = cur.lift(s, e, f)
        if created != (None if st["created"] is None else int(st["created"])):
            rep.flag(f"step {n}: created edge id mismatch")
            return
        if not is_sk_edge_connected(cur, s, k):
            rep.flag(f"step {n}: lift breaks ({s},{k})-edge-connectivity")
            return
        rep.count("steps")
    target = 0 if start_deg % 2 == 0 else k + 1
    if cur.degree(s) != target:
        rep.flag(f"final degree at {s} is {cur.degree(s)}, expected {target}")
        return
    if target == 0:
        cur = cur.delete_vertex(s)
    final = io.graph_from_doc(doc["final_graph"])
    if final.vertices != cur.vertices or final.edges != cur.edges:
        rep.flag("final graph does not match the replayed lifts")
        return
    if not is_k_edge_connected(cur, k):
        rep.flag(f"final graph is not {k}-edge-connected")


# --------------------------------------------------------------------------
# fans


def _segment_run(path_edges: Sequence[int], ray_edges: Sequence[int]) -> int:
    """How many initial ray edges the path finishes with, walked backwards."""
    run = 0
    for i, eid in enumerate(reversed(list(path_edges))):
        if i < len(ray_edges) and eid == ray_edges[i]:
            run += 1
        else:
            break
    return run


def _check_fan(doc, rep: Report) -> None:
    fam, _roots = io.family_from_doc(dict(doc["family"]))
    rays = [io.walk_from_doc(r) for r in doc["rays"]]
    for i, (rdoc, (vs, es)) in enumerate(zip(doc["rays"], rays)):
        if not _check_walk_family(fam, vs, es, f"ray {i}", rep):
            return
        if es and int(rdoc["first_edge"]) != es[0]:
            rep.flag(f"ray {i}: first edge mismatch")
    hub = doc["hub"]
    paths = [io.walk_from_doc({"vertices": v, "edges": e})
             for v, e in zip(doc["paths"], doc["path_edges"])]
    if len(paths) != len(rays):
        rep.flag("one path per ray is required")
        return
    avoid = set(int(e) for e in doc["avoid"])
    want = doc.get("length")
    for i, (vs, es) in enumerate(paths):
        if not _check_walk_family(fam, vs, es, f"path {i}", rep):
            continue
        if hub is not None and vs[0] != hub:
            rep.flag(f"path {i} does not start at the hub {hub}")
        if vs[-1] != rays[i][0][0]:
            rep.flag(f"path {i} does not end at the origin of ray {i}")
        hit = sorted(avoid & set(es))
        if hit:
            rep.flag(f"path {i} uses avoided edges {hit}")
        run = _segment_run(es, rays[i][1])
        claim = int(doc["segment_lengths"][i])
        if run < claim:
            rep.flag(f"path {i} finishes with only {run} ray edges, "
                     f"claimed {claim}")
        if want is not None and claim < int(want):
            rep.flag(f"path {i} segment {claim} is shorter than the "
                     f"requested {want}")
        rep.count("paths")
    _check_disjoint([es for _vs, es in paths], "fan", rep)


# --------------------------------------------------------------------------
# weak linkages


def _check_linkage_instance(doc, rep: Report) -> None:
    graph, k, pairs = io.linkage_instance_from_doc(doc)
    if k != len(pairs):
        rep.flag(f"k = {k} but {len(pairs)} pairs are listed")
    for s, t in pairs:
        if s == t:
            rep.flag(f"pair {s},{t} has equal terminals")
        if isinstance(graph, MultiGraph):
            for v in (s, t):
                if v not in graph.vertices:
                    rep.flag(f"terminal {v} is not a vertex")
        else:
            for v in (s, t):
                try:
                    graph.neighbors(v)
                except LiftlinkError:
                    rep.flag(f"terminal {v} is not a vertex of the family")
    rep.count("pairs", len(pairs))


def _check_linkage_result(doc, rep: Report) -> None:
    inst = dict(doc["instance"])
    inst["schema"] = io.schema_id("linkage-instance")
    _check_linkage_instance(inst, rep)
    if rep.status == FAIL:
        return
    graph, k, pairs = io.linkage_instance_from_doc(inst)
    verdict = doc["verdict"]
    if verdict == "Infeasible":
        rep.note("infeasibility verdicts carry no replayable certificate")
        return
    paths = [io.walk_from_doc({"vertices": v, "edges": e})
             for v, e in zip(doc["paths"], doc["path_edges"])]
    if len(paths) != len(pairs):
        rep.flag(f"{len(paths)} paths for {len(pairs)} demand pairs")
        return
    for i, ((s, t), (vs, es)) in enumerate(zip(pairs, paths)):
        if isinstance(graph, MultiGraph):
            good = _check_walk_graph(graph, vs, es, f"path {i}", rep)
        else:
            good = _check_walk_family(graph, vs, es, f"path {i}", rep)
        if good and (vs[0], vs[-1]) not in ((s, t), (t, s)):
            rep.flag(f"path {i} joins {vs[0]} and {vs[-1]}, "
                     f"not the demand {s},{t}")
        rep.count("paths")
    _check_disjoint([es for _vs, es in paths], "linkage", rep)


# --------------------------------------------------------------------------
# immersions


def _check_immersion(doc, rep: Report) -> None:
    fam, _roots = io.family_from_doc(dict(doc["family"]))
    host = io.graph_from_doc(doc["host"])
    pattern = io.graph_from_doc(doc["pattern"])
    k = int(doc["k"])
    core = frozenset(int(v) for v in doc["core"])
    branch = {int(pv): int(hv) for pv, hv in doc["branch"]}
    images = {int(eid): io.walk_from_doc(w) for eid, w in doc["images"]}
    closed = [io.walk_from_doc(w) for w in doc["closed_images"]]

    # host edges with family ids must agree with the family
    for eid in host.edge_ids:
        if eid >= 0:
            u, v = host.endpoints(eid)
            if not _family_step_ok(fam, u, eid, v):
                rep.flag(f"host edge {eid} is not a family edge")
                return

    if sorted(branch) != sorted(pattern.vertices):
        rep.flag("branch map does not cover the pattern vertices")
        return
    if len(set(branch.values())) != len(branch):
        rep.flag("branch map is not injective")
    if sorted(images) != sorted(pattern.edge_ids):
        rep.flag("image map does not cover the pattern edges")
        return

    for eid in sorted(images):
        vs, es = images[eid]
        if not _check_walk_graph(host, vs, es, f"image of {eid}", rep):
            continue
        u, v = pattern.endpoints(eid)
        if (vs[0], vs[-1]) != (branch[u], branch[v]):
            rep.flag(f"image of {eid} joins {vs[0]},{vs[-1]} instead of the "
                     f"branch images of {u},{v}")
        if eid >= 0 and u >= 0 and v >= 0 and u in core and v in core:
            if (vs, es) != ((u, v), (eid,)):
                rep.flag(f"edge {eid} inside the kept set must be its own "
                         "image")
        rep.count("images")
    for i, (vs, es) in enumerate(closed):
        if not _check_walk_graph(host, vs, es, f"closed image {i}", rep):
            continue
        if vs[0] != vs[-1]:
            rep.flag(f"closed image {i} is not closed")
        if vs[0] not in core:
            rep.flag(f"closed image {i} is anchored outside the kept set")
        rep.count("closed_images")

    _check_disjoint([es for _vs, es in images.values()]
                    + [es for _vs, es in closed], "immersion", rep)

    for pv, hv in sorted(branch.items()):
        if pv < 0 and pattern.degree(pv) != 2 * k + 1:
            rep.flag(f"hub {pv} has pattern degree {pattern.degree(pv)}, "
                     f"expected {2 * k + 1}")
    used = set(e for _vs, es in images.values() for e in es)
    used |= set(e for _vs, es in closed for e in es)
    for piece, edges in enumerate(doc["boundaries"]):
        for eid in edges:
            if int(eid) not in used:
                rep.flag(f"boundary edge {eid} of piece {piece} is not "
                         "covered by any image")
    if not is_k_edge_connected(pattern, 2 * k):
        rep.flag(f"pattern is not {2 * k}-edge-connected")


# --------------------------------------------------------------------------
# orientations


def _check_orientation(doc, rep: Report) -> None:
    g = io.graph_from_doc(doc["graph"])
    k = int(doc["k"])
    direction = io.arcs_from_rows(doc["directions"])
    pre = io.arcs_from_rows(doc.get("pre", []))
    for eid, arc in sorted(direction.items()):
        if eid not in g.edges:
            rep.flag(f"direction for unknown edge {eid}")
            return
        if set(arc) != set(g.endpoints(eid)):
            rep.flag(f"direction of edge {eid} does not match its endpoints")
            return
    missing = sorted(set(g.edge_ids) - set(direction))
    if missing:
        rep.flag(f"edges {missing[:6]} left undirected")
        return
    for eid, arc in sorted(pre.items()):
        if direction.get(eid) != arc:
            rep.flag(f"preassigned edge {eid} was flipped")
    vs = sorted(g.vertices)
    for x in vs:
        for y in vs:
            if x == y:
                continue
            got = arc_connectivity(g, direction, x, y, limit=k)
            rep.count("pairs")
            if got < k:
                rep.flag(f"only {got} arc-disjoint {x}->{y} paths, need {k}")
                return


def _round_graph(fam: LazyFamily, vertices: Sequence[int],
                 direction: Dict[int, Tuple[int, int]], label: str,
                 rep: Report) -> Optional[MultiGraph]:
    vset = set(int(v) for v in vertices)
    edges = {}
    for eid, (t, h) in sorted(direction.items()):
        if t not in vset or h not in vset:
            rep.flag(f"{label}: arc {eid} leaves the recorded vertex set")
            return None
        if eid >= 0 and not _family_step_ok(fam, t, eid, h):
            rep.flag(f"{label}: arc {eid} is not a family edge")
            return None
        edges[eid] = (t, h)
    return MultiGraph(vset, edges)


def _arc_walk_ok(direction: Dict[int, Tuple[int, int]],
                 vs: Sequence[int], es: Sequence[int]) -> bool:
    """Does the walk traverse every edge along its assigned direction?"""
    return all(direction.get(eid) == (vs[i], vs[i + 1])
               for i, eid in enumerate(es))


def _check_rounds(doc, rep: Report) -> None:
    fam, _roots = io.family_from_doc(dict(doc["family"]))
    k = int(doc["k"])
    previous: Dict[int, Tuple[int, int]] = {}
    for rdoc in doc["rounds"]:
        label = f"round {rdoc['round']}"
        direction = io.arcs_from_rows(rdoc["directions"])
        g = _round_graph(fam, rdoc["vertices"], direction, label, rep)
        if g is None:
            return

        for eid, arc in sorted(previous.items()):
            if direction.get(eid) != arc:
                rep.flag(f"{label}: arc {eid} contradicts the previous round")
        previous = direction

        branch = [int(v) for v in rdoc["branch"]]
        if int(rdoc["new_vertex"]) not in g.vertices:
            rep.flag(f"{label}: new vertex is missing from the subgraph")
        balance = Counter()
        merged = 0
        bset = set(branch)
        for t, h in direction.values():
            if t in bset:
                merged += 1
            else:
                balance[t] += 1
            if h in bset:
                merged -= 1
            else:
                balance[h] -= 1
        off = sorted(v for v, b in balance.items() if b)
        if off or merged:
            rep.flag(f"{label}: identified orientation is not Eulerian")

        for x in branch:
            for y in branch:
                if x == y:
                    continue
                got = arc_connectivity(g, direction, x, y, limit=k)
                rep.count("pairs")
                if got < k:
                    rep.flag(f"{label}: only {got} arc-disjoint {x}->{y} "
                             f"paths between branch vertices, need {k}")
                    return

        pattern = io.graph_from_doc(rdoc["H"])
        pdir = io.arcs_from_rows(rdoc["H_directions"])
        branch_map = {int(pv): int(hv) for pv, hv in rdoc["branch_map"]}
        if sorted(pdir) != sorted(pattern.edge_ids):
            rep.flag(f"{label}: pattern edges are not all directed")
            return
        images = {int(eid): io.walk_from_doc(w) for eid, w in rdoc["edge_paths"]}
        if sorted(images) != sorted(pattern.edge_ids):
            rep.flag(f"{label}: edge paths do not cover the pattern")
            return
        for eid in sorted(images):
            vs, es = images[eid]
            t, h = pdir[eid]
            if set((t, h)) != set(pattern.endpoints(eid)):
                rep.flag(f"{label}: pattern arc {eid} does not match its "
                         "endpoints")
                continue
            if (vs[0], vs[-1]) == (branch_map[t], branch_map[h]):
                pass
            elif (vs[0], vs[-1]) == (branch_map[h], branch_map[t]):
                vs = tuple(reversed(vs))
                es = tuple(reversed(es))
            else:
                rep.flag(f"{label}: image of {eid} does not join its branch "
                         "images")
                continue
            if not _arc_walk_ok(direction, vs, es):
                rep.flag(f"{label}: image of {eid} runs against the "
                         "orientation")
            rep.count("images")
        for i, w in enumerate(rdoc.get("closed_paths", [])):
            vs, es = io.walk_from_doc(w)
            if vs[0] != vs[-1]:
                rep.flag(f"{label}: closed path {i} is not closed")
                continue
            back = tuple(reversed(vs)), tuple(reversed(es))
            if not (_arc_walk_ok(direction, vs, es)
                    or _arc_walk_ok(direction, *back)):
                rep.flag(f"{label}: closed path {i} runs against the "
                         "orientation")
        ver = rdoc.get("verification", {})
        if int(ver.get("min_flow", k)) < k:
            rep.flag(f"{label}: recorded minimum flow below {k}")


# --------------------------------------------------------------------------
# experiments


def _check_experiment(doc, rep: Report) -> None:
    records = doc["records"]
    summary = dict(doc["summary"])
    if int(summary.get("count", len(records))) != len(records):
        rep.flag("summary count does not match the records")
    tags = Counter(r["class_tag"] for r in records if "class_tag" in r)
    if "other" in summary and summary["other"] != tags.get("Other", 0):
        rep.flag("summary miscounts Other classifications")
    if "stuck" in summary:
        stuck = sum(1 for r in records if r.get("stuck"))
        if summary["stuck"] != stuck:
            rep.flag("summary miscounts stuck runs")
    rep.count("records", len(records))


_CHECKERS = {
    "graph": _check_graph,
    "family": _check_family,
    "connectivity": _check_connectivity,
    "liftgraph-report": _check_liftgraph_report,
    "split": _check_split,
    "fan": _check_fan,
    "linkage-instance": _check_linkage_instance,
    "linkage-result": _check_linkage_result,
    "immersion": _check_immersion,
    "orientation": _check_orientation,
    "orientation-rounds": _check_rounds,
    "experiment": _check_experiment,
}
