"""Document formats: reading graphs and families, writing certificates.

Every certificate is a JSON object whose ``"schema"`` field names its kind
and format version, ``liftlink/<kind>/<version>``.  Serialization is
deterministic (sorted keys, fixed indentation, no timestamps), so equal
inputs produce byte-identical files.

Graph ingestion accepts two shapes: a plain edge list with one ``u v`` line
per edge occurrence (repetition encodes multiplicity), and a structured
document ``{"vertices": [...], "edges": [[u, v, multiplicity], ...]}``.
Certificate documents instead pin explicit edge ids, because paths and lift
logs refer to edges by id.

This module depends only on the graph core and the family registry; the
builders for solver results read plain attributes off the result objects,
so the independent verifier can import it without pulling in any solver.
"""

from __future__ import annotations

import json
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import LiftlinkError, MalformedDocument
from .families import LazyFamily, Ray, family_from_descriptor
from .multigraph import MultiGraph

FORMAT_VERSION = 1

_KINDS = (
    "graph",
    "family",
    "connectivity",
    "liftgraph-report",
    "split",
    "fan",
    "linkage-instance",
    "linkage-result",
    "immersion",
    "orientation",
    "orientation-rounds",
    "experiment",
)


def schema_id(kind: str) -> str:
    if kind not in _KINDS:
        raise MalformedDocument(f"unknown document kind {kind!r}")
    return f"liftlink/{kind}/{FORMAT_VERSION}"


def doc_kind(doc: Dict[str, object]) -> str:
    """Parse and validate the schema tag of a document."""
    if not isinstance(doc, dict) or "schema" not in doc:
        raise MalformedDocument("document has no schema tag")
    tag = str(doc["schema"])
    parts = tag.split("/")
    if len(parts) != 3 or parts[0] != "liftlink":
        raise MalformedDocument(f"unrecognized schema tag {tag!r}")
    if parts[1] not in _KINDS:
        raise MalformedDocument(f"unknown document kind {parts[1]!r}")
    if parts[2] != str(FORMAT_VERSION):
        raise MalformedDocument(f"unsupported format version {parts[2]!r}")
    return parts[1]


def dumps(doc: Dict[str, object]) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def loads(text: str) -> Dict[str, object]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("top level of a document must be an object")
    return doc


def write_doc(path: str, doc: Dict[str, object]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def read_doc(path: str) -> Dict[str, object]:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


# --------------------------------------------------------------------------
# graphs


def graph_to_doc(g: MultiGraph) -> Dict[str, object]:
    """Id-explicit graph document, the shape embedded in certificates."""
    return {
        "schema": schema_id("graph"),
        "vertices": sorted(g.vertices),
        "edges": [[eid, *g.endpoints(eid)] for eid in g.edge_ids],
    }


def graph_from_doc(doc: Dict[str, object]) -> MultiGraph:
    try:
        vertices = [int(v) for v in doc["vertices"]]
        edges = {int(e[0]): (int(e[1]), int(e[2])) for e in doc["edges"]}
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise MalformedDocument(f"bad graph document: {exc}") from None
    if len(edges) != len(doc["edges"]):
        raise MalformedDocument("duplicate edge id in graph document")
    return MultiGraph(vertices, edges)


def parse_edge_list(text: str) -> MultiGraph:
    """One ``u v`` line per edge occurrence; ``#`` starts a comment."""
    pairs: List[Tuple[int, int]] = []
    vertices: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) == 1:
            vertices.append(int(fields[0]))
            continue
        if len(fields) != 2:
            raise MalformedDocument(
                f"line {lineno}: expected 'u v', got {raw.strip()!r}")
        pairs.append((int(fields[0]), int(fields[1])))
    return MultiGraph.from_edge_list(pairs, vertices=vertices)


def parse_structured_graph(doc: Dict[str, object]) -> MultiGraph:
    """``{"vertices": [...], "edges": [[u, v, multiplicity], ...]}``."""
    try:
        vertices = [int(v) for v in doc.get("vertices", [])]
        rows = [list(row) for row in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad structured graph: {exc}") from None
    pairs: List[Tuple[int, int]] = []
    for row in rows:
        if len(row) == 2:
            u, v, mult = int(row[0]), int(row[1]), 1
        elif len(row) == 3:
            u, v, mult = int(row[0]), int(row[1]), int(row[2])
        else:
            raise MalformedDocument(f"bad edge row {row!r}")
        if mult < 1:
            raise MalformedDocument(f"multiplicity {mult} in edge row {row!r}")
        pairs.extend((u, v) for _ in range(mult))
    return MultiGraph.from_edge_list(pairs, vertices=vertices)


def load_graph_text(text: str) -> MultiGraph:
    """Sniff the ingestion format: JSON object or plain edge list."""
    if text.lstrip().startswith("{"):
        doc = loads(text)
        if "schema" in doc:
            if doc_kind(doc) != "graph":
                raise MalformedDocument("document is not a graph")
            return graph_from_doc(doc)
        return parse_structured_graph(doc)
    return parse_edge_list(text)


def read_graph(path: str) -> MultiGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_graph_text(fh.read())


def to_dot(g: MultiGraph, direction: Optional[Dict[int, Tuple[int, int]]] = None,
           name: str = "liftlink") -> str:
    """DOT text with edge ids as labels; directed when given an orientation.

    Orientations may be partial: undirected leftovers are drawn without an
    arrowhead inside the digraph.
    """
    lines = []
    if direction is None:
        lines.append(f"graph {name} {{")
        for v in sorted(g.vertices):
            lines.append(f"  {v};")
        for eid in g.edge_ids:
            u, v = g.endpoints(eid)
            lines.append(f'  {u} -- {v} [label="{eid}"];')
    else:
        lines.append(f"digraph {name} {{")
        for v in sorted(g.vertices):
            lines.append(f"  {v};")
        for eid in g.edge_ids:
            if eid in direction:
                t, h = direction[eid]
                lines.append(f'  {t} -> {h} [label="{eid}"];')
            else:
                u, v = g.endpoints(eid)
                lines.append(f'  {u} -> {v} [label="{eid}", dir=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# families


def family_to_doc(fam: LazyFamily, roots: Iterable[int] = ()) -> Dict[str, object]:
    doc = dict(fam.describe())
    doc["schema"] = schema_id("family")
    doc["roots"] = sorted(set(int(r) for r in roots))
    return doc


def family_from_doc(doc: Dict[str, object]) -> Tuple[LazyFamily, Tuple[int, ...]]:
    try:
        fam = family_from_descriptor(doc)
    except (KeyError, TypeError, ValueError, LiftlinkError) as exc:
        raise MalformedDocument(f"bad family document: {exc}") from None
    roots = tuple(int(r) for r in doc.get("roots", ()))
    return fam, roots


# --------------------------------------------------------------------------
# shared encoding helpers

# JSON objects only take string keys, so integer-keyed maps are stored as
# sorted [key, value...] rows instead.


def _arcs(direction: Dict[int, Tuple[int, int]]) -> List[List[int]]:
    return [[eid, *direction[eid]] for eid in sorted(direction)]


def arcs_from_rows(rows: Sequence[Sequence[int]]) -> Dict[int, Tuple[int, int]]:
    out: Dict[int, Tuple[int, int]] = {}
    for row in rows:
        if len(row) != 3:
            raise MalformedDocument(f"bad arc row {row!r}")
        eid = int(row[0])
        if eid in out:
            raise MalformedDocument(f"edge {eid} directed twice")
        out[eid] = (int(row[1]), int(row[2]))
    return out


def _walk(vertices: Sequence[int], edges: Sequence[int]) -> Dict[str, List[int]]:
    return {"vertices": [int(v) for v in vertices],
            "edges": [int(e) for e in edges]}


def walk_from_doc(doc: Dict[str, object]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    try:
        return (tuple(int(v) for v in doc["vertices"]),
                tuple(int(e) for e in doc["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad walk: {exc}") from None


# --------------------------------------------------------------------------
# lifting reports


def liftgraph_record(deg_s: int, k: int, class_tag: str,
                     complement_component_count: int,
                     dangerous_set: Optional[Iterable[int]] = None
                     ) -> Dict[str, object]:
    return {
        "deg_s": deg_s,
        "k": k,
        "class_tag": class_tag,
        "complement_component_count": complement_component_count,
        "dangerous_set": sorted(dangerous_set) if dangerous_set is not None else None,
    }


def records_to_jsonl(records: Sequence[Dict[str, object]]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def jsonl_to_records(text: str) -> List[Dict[str, object]]:
    out = []
    for line in text.splitlines():
        if line.strip():
            out.append(loads(line))
    return out


def liftgraph_report_to_doc(g: MultiGraph, s: int,
                            record: Dict[str, object],
                            pairs: Sequence[Sequence[int]]) -> Dict[str, object]:
    """Single-instance classification report with the liftable pairs."""
    return {
        "schema": schema_id("liftgraph-report"),
        "graph": graph_to_doc(g),
        "s": s,
        "record": record,
        "liftable_pairs": [sorted(p) for p in sorted(map(sorted, pairs))],
    }


# --------------------------------------------------------------------------
# splitting-off at a finite vertex


def split_to_doc(g: MultiGraph, s: int, k: int, steps, final: MultiGraph
                 ) -> Dict[str, object]:
    """Lift log at ``s`` plus the resulting graph, replayable from ``g``."""
    return {
        "schema": schema_id("split"),
        "graph": graph_to_doc(g),
        "s": s,
        "k": k,
        "steps": [{"e": st.e, "f": st.f, "x": st.x, "y": st.y,
                   "created": st.created} for st in steps],
        "final_graph": graph_to_doc(final),
    }


# --------------------------------------------------------------------------
# fans


def ray_to_doc(ray: Ray, fam: LazyFamily, count: int) -> Dict[str, object]:
    """Explicit prefix of a ray, long enough for the requested audit."""
    return {
        "first_edge": ray.first_edge,
        "vertices": ray.vertices(fam, count + 1),
        "edges": ray.edges(fam, count),
    }


def fan_to_doc(fam: LazyFamily, fan, rays: Sequence[Ray],
               avoid: Iterable[int], length: Optional[int]
               ) -> Dict[str, object]:
    horizon = max([fan.depth, *(len(p) for p in fan.path_edges)]) + 1
    return {
        "schema": schema_id("fan"),
        "family": dict(fam.describe()),
        "rays": [ray_to_doc(r, fam, horizon) for r in rays],
        "avoid": sorted(set(avoid)),
        "length": length,
        "depth": fan.depth,
        "hub": fan.hub,
        "paths": [list(p) for p in fan.paths],
        "path_edges": [list(p) for p in fan.path_edges],
        "segment_lengths": list(fan.segment_lengths),
        "layers": [sorted(layer) for layer in fan.layers],
    }


# --------------------------------------------------------------------------
# weak linkages


def linkage_instance_to_doc(graph: Union[MultiGraph, LazyFamily], k: int,
                            pairs: Sequence[Tuple[int, int]]
                            ) -> Dict[str, object]:
    doc: Dict[str, object] = {
        "schema": schema_id("linkage-instance"),
        "k": k,
        "pairs": [[int(s), int(t)] for s, t in pairs],
    }
    if isinstance(graph, MultiGraph):
        doc["graph"] = graph_to_doc(graph)
    else:
        doc["family"] = dict(graph.describe())
    return doc


def linkage_instance_from_doc(doc: Dict[str, object]
                              ) -> Tuple[Union[MultiGraph, LazyFamily], int,
                                         Tuple[Tuple[int, int], ...]]:
    try:
        k = int(doc["k"])
        pairs = tuple((int(s), int(t)) for s, t in doc["pairs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad linkage instance: {exc}") from None
    if "graph" in doc:
        return graph_from_doc(doc["graph"]), k, pairs
    if "family" in doc:
        fam, _roots = family_from_doc(dict(doc["family"]))
        return fam, k, pairs
    raise MalformedDocument("linkage instance carries neither graph nor family")


def linkage_result_to_doc(instance_doc: Dict[str, object], verdict: str,
                          paths: Sequence[Sequence[int]] = (),
                          path_edges: Sequence[Sequence[int]] = (),
                          transcript: Optional[Dict[str, object]] = None
                          ) -> Dict[str, object]:
    """Verdict document; Feasible verdicts carry the paths as certificate."""
    if verdict not in ("Feasible", "Infeasible"):
        raise MalformedDocument(f"unknown verdict {verdict!r}")
    return {
        "schema": schema_id("linkage-result"),
        "instance": {key: val for key, val in instance_doc.items()
                     if key != "schema"},
        "verdict": verdict,
        "paths": [list(p) for p in paths],
        "path_edges": [list(p) for p in path_edges],
        "transcript": transcript or {},
    }


def infinite_transcript(out) -> Dict[str, object]:
    """Pipeline audit trail for a linkage routed through contracted tails."""
    split = out.split
    return {
        "depth": out.depth,
        "core": sorted(out.core),
        "contracted_vertices": [[i, c] for i, c in sorted(split.remaining.items())],
        "contracted_paths": [_walk(vs, es)
                             for vs, es in zip(out.contracted.paths,
                                               out.contracted.path_edges)],
        "lifts": [{"set": st.set_index,
                   "lifted": list(st.lifted),
                   "created": st.created,
                   "path": _walk(st.path_vertices, st.path_edges)}
                  for st in split.steps],
        "fans": [{"set": i, "hub": fan.hub,
                  "paths": [list(p) for p in fan.paths],
                  "path_edges": [list(p) for p in fan.path_edges]}
                 for i, fan in out.fans],
    }


# --------------------------------------------------------------------------
# immersions


def immersion_to_doc(fam: LazyFamily, cert) -> Dict[str, object]:
    return {
        "schema": schema_id("immersion"),
        "family": dict(fam.describe()),
        "k": cert.k,
        "depth": cert.depth,
        "core": sorted(cert.core),
        "host": graph_to_doc(cert.host),
        "pattern": graph_to_doc(cert.pattern),
        "branch": [[pv, cert.branch[pv]] for pv in sorted(cert.branch)],
        "images": [[eid, _walk(*cert.images[eid])]
                   for eid in sorted(cert.images)],
        "closed_images": [_walk(vs, es) for vs, es in cert.closed_images],
        "boundaries": [sorted(b) for b in cert.boundaries],
    }


# --------------------------------------------------------------------------
# orientations


def orientation_to_doc(g: MultiGraph, k: int,
                       direction: Dict[int, Tuple[int, int]],
                       pre: Optional[Dict[int, Tuple[int, int]]] = None
                       ) -> Dict[str, object]:
    return {
        "schema": schema_id("orientation"),
        "graph": graph_to_doc(g),
        "k": k,
        "directions": _arcs(direction),
        "pre": _arcs(pre or {}),
    }


def round_to_doc(index: int, result) -> Dict[str, object]:
    """One growth round: pattern, its realization, and the new orientation."""
    cert = result.certificate
    base = result.orientation.base
    return {
        "round": index,
        "new_vertex": result.new_vertex,
        "vertices": sorted(base.vertices),
        "branch": sorted(result.branch),
        "branch_map": [[pv, cert.branch[pv]] for pv in sorted(cert.branch)],
        "H": graph_to_doc(cert.pattern),
        "H_directions": _arcs(result.pattern_direction),
        "edge_paths": [[eid, _walk(*cert.images[eid])]
                       for eid in sorted(cert.images)],
        "closed_paths": [_walk(vs, es) for vs, es in cert.closed_images],
        "directions": _arcs(result.orientation.direction),
        "verification": {"pairs_checked": result.pairs_checked,
                         "min_flow": result.min_flow},
    }


def rounds_to_doc(fam: LazyFamily, k: int, results: Sequence[object]
                  ) -> Dict[str, object]:
    return {
        "schema": schema_id("orientation-rounds"),
        "family": dict(fam.describe()),
        "k": k,
        "rounds": [round_to_doc(i + 1, r) for i, r in enumerate(results)],
    }


# --------------------------------------------------------------------------
# experiments


def experiment_to_doc(name: str, seed: int, params: Dict[str, object],
                      summary: Dict[str, object],
                      records: Sequence[Dict[str, object]]
                      ) -> Dict[str, object]:
    return {
        "schema": schema_id("experiment"),
        "name": name,
        "seed": seed,
        "params": params,
        "summary": summary,
        "records": list(records),
    }
