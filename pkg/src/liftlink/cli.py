"""Command-line surface: run the pipelines, write certificates, check them.

Exit statuses keep proofs and give-ups apart:

* 0 - success, or the presented certificate verified
* 1 - usage errors, violated preconditions, internal failures
* 2 - definite negative: the question was decided against the request
      (infeasible linkage, connectivity disproved, certificate refuted)
* 3 - no verdict at the configured depth or budget; retry with more

All randomness inside a run derives from ``--seed``, and documents are
serialized with sorted keys and no environment-dependent content, so equal
configurations produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import io
from . import verify as verify_mod
from .errors import (ConsistencyError, DepthExhausted, LiftlinkError,
                     MalformedDocument, NotEulerian, ResourceBudgetExceeded,
                     Stuck)
from .experiments import EXPERIMENTS, run_experiment
from .families import LazyFamily, make_family
from .fan import FanRequest, linking_fan
from .flows import is_k_edge_connected, local_edge_connectivity
from .immersion import immerse
from .lifting import (admissible_splitting, classify_structure,
                      find_dangerous_set, lifting_graph)
from .linkage import (LinkageInstance, counterexample_family, solve_finite,
                      solve_infinite, verify_linkage)
from .multigraph import MultiGraph
from .orientation import (Orientation, extend_orientation,
                          orient_eulerian_consistent, orient_infinite,
                          verify_k_arc_connected)
from .rays import RaySystem, boundary_linked_decomposition

OK = 0
USAGE = 1
DISPROVED = 2
UNDECIDED = 3

# summary fields that count violations of the property each batch probes
_EXPERIMENT_VIOLATIONS: Dict[str, Tuple[str, ...]] = {
    "liftgraph": ("other", "bipartite_degree_violations", "uncovered_pairs"),
    "splitting": ("stuck", "bad_terminal_degree", "final_not_k_ec"),
    "huck": ("infeasible", "failed_verification"),
    "identity": ("mismatches",),
    "eulerian-orientation": ("not_k_arc_connected",),
}


@dataclass
class RunConfig:
    """Everything a subcommand needs beyond its own arguments."""

    seed: int = 0
    depth: int = 16
    depth_cap: int = 256
    budget_nodes: int = 200_000
    family: Optional[str] = None
    graph: Optional[str] = None
    out: Optional[str] = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(seed=ns.seed, depth=ns.depth, depth_cap=ns.depth_cap,
                   budget_nodes=ns.budget_nodes, family=ns.family,
                   graph=ns.graph, out=ns.out)

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def load_graph(self) -> MultiGraph:
        if self.graph is None:
            raise LiftlinkError("this command needs --graph")
        return io.read_graph(self.graph)

    def load_family(self) -> LazyFamily:
        if self.family is None:
            raise LiftlinkError("this command needs --family")
        text = self.family
        if text.startswith("@"):
            fam, _roots = io.family_from_doc(io.read_doc(text[1:]))
            return fam
        if text.lstrip().startswith("{"):
            fam, _roots = io.family_from_doc(io.loads(text))
            return fam
        return make_family(text)


class Reporter:
    """Print a transcript and mirror it (plus documents) into --out."""

    def __init__(self, out: Optional[str]):
        self.out = out
        self.lines: List[str] = []
        if out:
            os.makedirs(out, exist_ok=True)

    def say(self, message: str) -> None:
        print(message)
        self.lines.append(message)

    def emit(self, name: str, doc: Dict[str, object]) -> None:
        if self.out:
            io.write_doc(os.path.join(self.out, name), doc)
            self.say(f"wrote {name}")

    def emit_text(self, name: str, text: str) -> None:
        if self.out:
            with open(os.path.join(self.out, name), "w", encoding="utf-8") as fh:
                fh.write(text)
            self.say(f"wrote {name}")

    def finish(self) -> None:
        if self.out:
            with open(os.path.join(self.out, "transcript.txt"), "w",
                      encoding="utf-8") as fh:
                fh.write("".join(line + "\n" for line in self.lines))


def _parse_ints(text: str) -> List[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def _parse_pairs(text: str) -> Tuple[Tuple[int, int], ...]:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = _parse_ints(chunk)
        if len(parts) != 2:
            raise LiftlinkError(f"demand {chunk!r} is not a pair")
        pairs.append((parts[0], parts[1]))
    return tuple(pairs)


# --------------------------------------------------------------------------
# subcommands


def cmd_connectivity(cfg: RunConfig, ns, rep: Reporter) -> int:
    g = cfg.load_graph()
    doc: Dict[str, object] = {"schema": io.schema_id("connectivity"),
                              "graph": io.graph_to_doc(g)}
    status = OK
    if ns.pairs:
        rows = []
        for u, v in _parse_pairs(ns.pairs):
            lam = local_edge_connectivity(g, u, v)
            rows.append([u, v, lam])
            rep.say(f"lambda({u}, {v}) = {lam}")
        doc["pairs"] = rows
    if ns.k is not None:
        ok = is_k_edge_connected(g, ns.k)
        doc["k"] = ns.k
        doc["k_edge_connected"] = ok
        rep.say(f"{ns.k}-edge-connected: {'yes' if ok else 'no'}")
        if not ok:
            status = DISPROVED
    if not ns.pairs and ns.k is None:
        verts = sorted(g.vertices)
        lam = min((local_edge_connectivity(g, verts[0], v)
                   for v in verts[1:]), default=0)
        doc["edge_connectivity"] = lam
        rep.say(f"edge connectivity: {lam}")
    rep.emit("connectivity.json", doc)
    return status


def cmd_liftgraph(cfg: RunConfig, ns, rep: Reporter) -> int:
    g = cfg.load_graph()
    lg = lifting_graph(g, ns.s, ns.k)
    cls = classify_structure(lg)
    dangerous = None
    pair = next(((e, f) for e in lg.nodes for f in lg.nodes
                 if e < f and not lg.is_adjacent(e, f)), None)
    if pair is not None:
        try:
            found = find_dangerous_set(g, ns.s, ns.k, list(pair))
        except LiftlinkError:
            found = None
        if found is not None:
            dangerous = sorted(found.side)
    record = io.liftgraph_record(g.degree(ns.s), ns.k, cls.tag,
                                 len(lg.complement_components()), dangerous)
    rep.say(json.dumps(record, sort_keys=True))
    rep.say(f"relation on {len(lg.nodes)} edges at {ns.s}: {cls.tag}")
    rep.emit("liftgraph.json",
             io.liftgraph_report_to_doc(g, ns.s, record, lg.edge_pairs()))
    return OK


def cmd_split(cfg: RunConfig, ns, rep: Reporter) -> int:
    g = cfg.load_graph()
    try:
        steps, final = admissible_splitting(g, ns.s, ns.k)
    except Stuck as exc:
        rep.say(f"internal inconsistency: {exc}")
        return USAGE
    for st in steps:
        tail = "dropped" if st.created is None else f"created {st.created}"
        rep.say(f"lift ({st.e}, {st.f}) at {ns.s}: joins {st.x}-{st.y}, {tail}")
    deg = final.degree(ns.s) if ns.s in final.vertices else 0
    rep.say(f"terminal degree {deg}; "
            f"{ns.k}-edge-connected: {is_k_edge_connected(final, ns.k)}")
    rep.emit("split.json", io.split_to_doc(g, ns.s, ns.k, steps, final))
    return OK


def _decompose(fam: LazyFamily, roots: Sequence[int], depth: int,
               depth_cap: int):
    d = depth
    while True:
        try:
            return d, boundary_linked_decomposition(fam, roots, d)
        except DepthExhausted:
            if 2 * d > depth_cap:
                raise
            d *= 2


def cmd_fan(cfg: RunConfig, ns, rep: Reporter) -> int:
    fam = cfg.load_family()
    roots = _parse_ints(ns.a0) if ns.a0 else [fam.origin()]
    depth, (_core, sets) = _decompose(fam, roots, cfg.depth, cfg.depth_cap)
    system = sets[ns.set_index].rays
    m = ns.count or len(system.rays)
    if m > len(system.rays):
        raise LiftlinkError(
            f"asked for {m} rays but the component only has {len(system.rays)}")
    picked = sorted(cfg.rng().sample(range(len(system.rays)), m))
    sub = RaySystem(region=system.region,
                    rays=tuple(system.rays[i] for i in picked),
                    verified_depth=system.verified_depth)
    avoid = frozenset(_parse_ints(ns.avoid)) if ns.avoid else frozenset()
    k = ns.k if ns.k is not None else fam.declared_connectivity()
    req = FanRequest(k=k, system=sub, avoid=avoid, length=ns.length)
    d = depth
    while True:
        try:
            fan = linking_fan(req, d)
            break
        except DepthExhausted:
            if 2 * d > cfg.depth_cap:
                raise
            d *= 2
    rep.say(f"hub {fan.hub} serving {m} rays at depth {fan.depth}")
    rep.say(f"segment lengths: {list(fan.segment_lengths)}")
    rep.emit("fan.json", io.fan_to_doc(fam, fan, sub.rays, avoid, ns.length))
    return OK


def _load_instance(cfg: RunConfig, ns):
    if ns.instance:
        return io.linkage_instance_from_doc(io.read_doc(ns.instance))
    if not ns.pairs:
        raise LiftlinkError("give --pairs or --instance")
    pairs = _parse_pairs(ns.pairs)
    k = ns.k if ns.k is not None else len(pairs)
    if cfg.graph is not None:
        return cfg.load_graph(), k, pairs
    return cfg.load_family(), k, pairs


def cmd_linkage_solve(cfg: RunConfig, ns, rep: Reporter) -> int:
    graph, k, pairs = _load_instance(cfg, ns)
    inst_doc = io.linkage_instance_to_doc(graph, k, pairs)
    rep.emit("linkage-instance.json", inst_doc)
    if isinstance(graph, MultiGraph):
        inst = LinkageInstance(graph=graph, k=k, pairs=pairs)
        got = solve_finite(inst, budget=cfg.budget_nodes)
        if got is None:
            rep.say("Infeasible: no edge-disjoint routing exists")
            rep.emit("linkage-result.json",
                     io.linkage_result_to_doc(inst_doc, "Infeasible"))
            return DISPROVED
        ok, diags = verify_linkage(inst, got)
        if not ok:
            raise ConsistencyError(f"solver output failed its audit: {diags}")
        rep.say(f"Feasible: {k} edge-disjoint paths, lengths "
                f"{[len(p) for p in got.path_edges]}")
        rep.emit("linkage-result.json",
                 io.linkage_result_to_doc(inst_doc, "Feasible", got.paths,
                                          got.path_edges))
        return OK
    out = solve_infinite(graph, pairs, k, depth=cfg.depth,
                         depth_cap=cfg.depth_cap, budget=cfg.budget_nodes)
    rep.say(f"Feasible at depth {out.depth}: path lengths "
            f"{[len(p) for p in out.linkage.path_edges]}")
    rep.emit("linkage-result.json",
             io.linkage_result_to_doc(inst_doc, "Feasible", out.linkage.paths,
                                      out.linkage.path_edges,
                                      transcript=io.infinite_transcript(out)))
    return OK


def cmd_linkage_verify(cfg: RunConfig, ns, rep: Reporter) -> int:
    return cmd_verify(cfg, ns, rep)


def cmd_linkage_counterexample(cfg: RunConfig, ns, rep: Reporter) -> int:
    inst = counterexample_family(ns.k)
    g = inst.graph
    if not is_k_edge_connected(g, ns.k):
        raise ConsistencyError("counterexample lost its edge-connectivity")
    got = solve_finite(inst, budget=cfg.budget_nodes)
    inst_doc = io.linkage_instance_to_doc(g, inst.k, inst.pairs)
    rep.emit("linkage-instance.json", inst_doc)
    if got is not None:
        raise ConsistencyError("counterexample instance was solved")
    rep.say(f"{g.num_vertices} vertices, {g.num_edges} edges, "
            f"{ns.k}-edge-connected, demands {list(inst.pairs)}: Infeasible")
    rep.emit("linkage-result.json",
             io.linkage_result_to_doc(inst_doc, "Infeasible"))
    return OK


def cmd_immerse(cfg: RunConfig, ns, rep: Reporter) -> int:
    fam = cfg.load_family()
    roots = _parse_ints(ns.a0) if ns.a0 else [fam.origin()]
    cert = immerse(fam, roots, ns.k, depth=cfg.depth, depth_cap=cfg.depth_cap)
    hubs = sorted(v for v in cert.branch if v < 0)
    rep.say(f"pattern: {cert.pattern.num_vertices} vertices, "
            f"{cert.pattern.num_edges} edges, {len(hubs)} hubs, "
            f"{2 * ns.k}-edge-connected")
    rep.say(f"kept set {sorted(cert.core)} realized at depth {cert.depth}")
    rep.emit("immersion.json", io.immersion_to_doc(fam, cert))
    return OK


def cmd_orient_finite(cfg: RunConfig, ns, rep: Reporter) -> int:
    g = cfg.load_graph()
    if ns.eulerian:
        try:
            o = orient_eulerian_consistent(g)
        except NotEulerian as exc:
            rep.say(f"not orientable along a closed trail: {exc}")
            return USAGE
        if not verify_k_arc_connected(o, ns.k):
            rep.say(f"closed-trail orientation is not "
                    f"{ns.k}-arc-connected")
            return DISPROVED
    else:
        if not is_k_edge_connected(g, 2 * ns.k):
            rep.say(f"no {ns.k}-arc-connected orientation exists: the graph "
                    f"is not {2 * ns.k}-edge-connected")
            return DISPROVED
        o = extend_orientation(g, ns.k, Orientation(g, {}),
                               budget=cfg.budget_nodes)
    rep.say(f"oriented {len(o.direction)} edges, "
            f"{ns.k}-arc-connected: True")
    rep.emit("orientation.json", io.orientation_to_doc(g, ns.k, o.direction))
    rep.emit_text("orientation.dot", io.to_dot(g, o.direction))
    return OK


def cmd_orient_infinite(cfg: RunConfig, ns, rep: Reporter) -> int:
    fam = cfg.load_family()
    results = orient_infinite(fam, ns.k, ns.rounds, depth=cfg.depth,
                              depth_cap=cfg.depth_cap,
                              budget=cfg.budget_nodes)
    for i, r in enumerate(results, start=1):
        ver = f"{r.pairs_checked} pairs checked, min flow {r.min_flow}"
        rep.say(f"round {i}: {len(r.branch)} branch vertices, "
                f"{len(r.orientation.direction)} arcs, {ver}")
    rep.emit("orientation-rounds.json", io.rounds_to_doc(fam, ns.k, results))
    return OK


def cmd_verify(cfg: RunConfig, ns, rep: Reporter) -> int:
    worst = OK
    for path in ns.documents:
        report = verify_mod.verify_path(path)
        name = os.path.basename(path)
        rep.say(f"{name}: {report.status} ({report.kind})")
        for diag in report.diagnostics:
            rep.say(f"  {diag}")
        if report.status == verify_mod.FAIL:
            worst = DISPROVED
        elif report.status == verify_mod.UNVERIFIED and worst == OK:
            worst = UNDECIDED
    return worst


def cmd_experiment(cfg: RunConfig, ns, rep: Reporter) -> int:
    records, summary = run_experiment(ns.name, cfg.seed, ns.count, {})
    rep.say(json.dumps(summary, sort_keys=True))
    rep.emit("experiment.json",
             io.experiment_to_doc(ns.name, cfg.seed, {"count": ns.count},
                                  summary, records))
    rep.emit_text("records.jsonl", io.records_to_jsonl(records))
    bad = sum(int(summary.get(key, 0))
              for key in _EXPERIMENT_VIOLATIONS[ns.name])
    if bad:
        rep.say(f"{bad} violations; see the records")
        return DISPROVED
    return OK


# --------------------------------------------------------------------------
# parser plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--depth", type=int, default=16)
    common.add_argument("--depth-cap", type=int, default=256)
    common.add_argument("--budget-nodes", type=int, default=200_000)
    common.add_argument("--family", help="family name, inline JSON, or @file")
    common.add_argument("--graph", help="edge list or graph document file")
    common.add_argument("--out", help="directory for certificates")

    parser = argparse.ArgumentParser(
        prog="liftlink",
        description="certified linkages, lifts, fans, and orientations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("connectivity", parents=[common],
                       help="edge connectivity questions on a finite graph")
    p.add_argument("--k", type=int)
    p.add_argument("--pairs", help="semicolon-separated u,v demands")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("liftgraph", parents=[common],
                       help="classify the liftability relation at a vertex")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_liftgraph)

    p = sub.add_parser("split", parents=[common],
                       help="split a vertex off by admissible lifts")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("fan", parents=[common],
                       help="link escape rays of a family to a common hub")
    p.add_argument("--a0", help="comma-separated seed vertices")
    p.add_argument("--set-index", type=int, default=0)
    p.add_argument("--count", type=int, help="number of rays to serve")
    p.add_argument("--k", type=int)
    p.add_argument("--length", type=int)
    p.add_argument("--avoid", help="comma-separated edge ids to dodge")
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("linkage", parents=[],
                       help="edge-disjoint path systems for terminal pairs")
    lsub = p.add_subparsers(dest="subcommand", required=True)
    q = lsub.add_parser("solve", parents=[common])
    q.add_argument("--k", type=int)
    q.add_argument("--pairs", help="semicolon-separated s,t demands")
    q.add_argument("--instance", help="instance document file")
    q.set_defaults(func=cmd_linkage_solve)
    q = lsub.add_parser("verify", parents=[common])
    q.add_argument("documents", nargs="+")
    q.set_defaults(func=cmd_linkage_verify)
    q = lsub.add_parser("counterexample", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.set_defaults(func=cmd_linkage_counterexample)

    p = sub.add_parser("immerse", parents=[common],
                       help="realize a finite pattern around a seed set")
    p.add_argument("--a0", help="comma-separated seed vertices")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_immerse)

    p = sub.add_parser("orient", parents=[],
                       help="arc-connected orientations")
    osub = p.add_subparsers(dest="subcommand", required=True)
    q = osub.add_parser("finite", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--eulerian", action="store_true",
                   help="orient along a closed trail instead of searching")
    q.set_defaults(func=cmd_orient_finite)
    q = osub.add_parser("infinite", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--rounds", type=int, default=1)
    q.set_defaults(func=cmd_orient_infinite)

    p = sub.add_parser("verify", parents=[common],
                       help="replay certificates with the independent checkers")
    p.add_argument("documents", nargs="+")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", parents=[common],
                       help="seeded batches probing the structure results")
    p.add_argument("name", choices=sorted(EXPERIMENTS))
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_experiment)

    return parser


def run_command(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        return OK if exc.code in (0, None) else USAGE
    cfg = RunConfig.from_args(ns)
    rep = Reporter(cfg.out)
    try:
        return ns.func(cfg, ns, rep)
    except (DepthExhausted, ResourceBudgetExceeded) as exc:
        rep.say(f"no verdict: {exc}")
        return UNDECIDED
    except (LiftlinkError, OSError) as exc:
        rep.say(f"error: {exc}")
        return USAGE
    finally:
        rep.finish()


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
