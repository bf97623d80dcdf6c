"""Seeded batch experiments over the lifting and orientation machinery.

Each runner draws every random choice from one ``random.Random(seed)``, so
equal (name, seed, count, params) always produce identical records.  The
records are plain JSON-ready dicts; the summary aggregates the properties
the batch is meant to probe (classification tallies, stuck runs, failed
verdicts), so a downstream reader can spot a violation without scanning
the records.
"""

from __future__ import annotations

import random
from collections import Counter
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from . import io
from .errors import (ConsistencyError, LiftlinkError, PreconditionViolated,
                     Stuck)
from .flows import is_k_edge_connected, is_sk_edge_connected
from .lifting import (admissible_splitting, classify_structure,
                      find_dangerous_set, lifting_graph)
from .linkage import LinkageInstance, solve_finite, verify_linkage
from .multigraph import MultiGraph, cut_identity_sides
from .orientation import orient_eulerian_consistent, verify_k_arc_connected
from .randgen import (random_demand_pairs, random_eulerian_2k_ec,
                      random_k_ec, random_multigraph, random_sk_instance)

Records = List[Dict[str, object]]
Outcome = Tuple[Records, Dict[str, object]]


def _doubled_path_wheel() -> Tuple[MultiGraph, int]:
    """Doubled 3-path with 2+1+2 edges from s: the bipartite relation shape."""
    return MultiGraph.from_edge_list(
        [(1, 2), (1, 2), (2, 3), (2, 3),
         (0, 1), (0, 1), (0, 2), (0, 3), (0, 3)]), 0


def _corpus_instance(rng: random.Random, k: int, deg_s: int, n: int
                     ) -> Tuple[MultiGraph, int]:
    """One (s,k)-edge-connected instance; s may carry part of the connectivity.

    Three shapes.  Plain: s attached to a k-edge-connected core (every pair
    of s-edges is liftable there, since no small cut can catch two of their
    endpoints).  Pocket: one extra vertex reaches the core by only k-1
    edges and holds one or two s-edges, creating tight cuts and with them
    non-liftable pairs.  For k=4 at degree 5, occasionally the doubled path
    wheel, whose relation is the isolated-plus-bipartite shape.
    """
    shape = rng.random()
    if k == 4 and deg_s == 5 and shape < 0.25:
        return _doubled_path_wheel()
    if shape < 0.5:
        return random_sk_instance(rng, k, deg_s, n, extra=rng.randint(0, 3))
    core = random_k_ec(rng, k, n, extra=rng.randint(0, 2))
    pocket = max(core.vertices) + 1
    s = pocket + 1
    g = core.add_vertex(pocket).add_vertex(s)
    for _ in range(k - 1):
        g, _eid = g.add_edge(pocket, rng.randrange(n))
    into_pocket = rng.randint(1, 2)
    for _ in range(into_pocket):
        g, _eid = g.add_edge(s, pocket)
    for _ in range(deg_s - into_pocket):
        g, _eid = g.add_edge(s, rng.randrange(n))
    if not is_sk_edge_connected(g, s, k):
        raise ConsistencyError("pocket construction lost (s,k)-connectivity")
    return g, s


def run_liftgraph(seed: int, count: int,
                  ks: Sequence[int] = (2, 4),
                  deg_range: Tuple[int, int] = (4, 9),
                  n_range: Tuple[int, int] = (4, 8)) -> Outcome:
    """Classify the liftability relation on random (s,k)-connected inputs.

    For each instance with a non-liftable pair, also hunt a vertex set
    witnessing that pair; ``uncovered_pairs`` counts the hunts that came
    back empty, and is expected to stay 0 for even k.
    """
    rng = random.Random(seed)
    records: Records = []
    tags = Counter()
    degree_violations = 0
    probed = 0
    dangerous_found = 0
    for _ in range(count):
        k = rng.choice(list(ks))
        deg_s = rng.randint(*deg_range)
        g, s = _corpus_instance(rng, k, deg_s, rng.randint(*n_range))
        lg = lifting_graph(g, s, k)
        cls = classify_structure(lg)
        tags[cls.tag] += 1
        if cls.tag == "IsolatedPlusBalancedBipartite":
            if g.degree(s) % 2 == 0 or g.degree(s) > k + 2:
                degree_violations += 1
        dangerous = None
        pair = next(((e, f) for e, f in combinations(lg.nodes, 2)
                     if not lg.is_adjacent(e, f)), None)
        if pair is not None:
            try:
                found = find_dangerous_set(g, s, k, list(pair))
                probed += 1
            except PreconditionViolated:
                found = None
            if found is not None:
                dangerous = sorted(found.side)
                dangerous_found += 1
        records.append(io.liftgraph_record(
            g.degree(s), k, cls.tag, len(lg.complement_components()),
            dangerous))
    summary = {
        "count": count,
        "tags": dict(sorted(tags.items())),
        "other": tags.get("Other", 0),
        "bipartite_degree_violations": degree_violations,
        "nonliftable_pairs_probed": probed,
        "dangerous_sets_found": dangerous_found,
        "uncovered_pairs": probed - dangerous_found,
    }
    return records, summary


def run_splitting(seed: int, count: int,
                  ks: Sequence[int] = (2, 4),
                  deg_range: Tuple[int, int] = (4, 9),
                  n_range: Tuple[int, int] = (4, 8)) -> Outcome:
    """Split off a vertex completely and audit the terminal state."""
    rng = random.Random(seed)
    records: Records = []
    stuck = 0
    bad_degree = 0
    bad_final = 0
    for _ in range(count):
        k = rng.choice(list(ks))
        deg_s = rng.randint(*deg_range)
        g, s = _corpus_instance(rng, k, deg_s, rng.randint(*n_range))
        rec: Dict[str, object] = {"k": k, "deg_start": g.degree(s),
                                  "stuck": False}
        try:
            steps, final = admissible_splitting(g, s, k)
        except Stuck:
            rec["stuck"] = True
            stuck += 1
            records.append(rec)
            continue
        deg_end = final.degree(s) if s in final.vertices else 0
        rec["deg_end"] = deg_end
        rec["steps"] = len(steps)
        if deg_end != (0 if rec["deg_start"] % 2 == 0 else k + 1):
            bad_degree += 1
        rec["final_k_ec"] = is_k_edge_connected(final, k)
        if not rec["final_k_ec"]:
            bad_final += 1
        records.append(rec)
    summary = {"count": count, "stuck": stuck,
               "bad_terminal_degree": bad_degree,
               "final_not_k_ec": bad_final}
    return records, summary


def run_huck(seed: int, count: int,
             ks: Sequence[int] = (1, 3),
             n_range: Tuple[int, int] = (4, 7)) -> Outcome:
    """Solve k demands on random (k+1)-edge-connected graphs.

    The expectation under test: such instances are never infeasible, and
    every returned linkage passes the verifier.
    """
    rng = random.Random(seed)
    records: Records = []
    infeasible = 0
    unverified = 0
    for _ in range(count):
        k = rng.choice(list(ks))
        g = random_k_ec(rng, k + 1, rng.randint(*n_range),
                        extra=rng.randint(0, 2))
        pairs = tuple(random_demand_pairs(rng, g, k))
        inst = LinkageInstance(graph=g, k=k, pairs=pairs)
        got = solve_finite(inst)
        rec: Dict[str, object] = {"k": k, "n": g.num_vertices,
                                  "m": g.num_edges,
                                  "verdict": "Infeasible" if got is None
                                  else "Feasible"}
        if got is None:
            infeasible += 1
        else:
            ok, diags = verify_linkage(inst, got)
            rec["verified"] = ok
            if not ok:
                unverified += 1
                rec["diagnostics"] = diags
        records.append(rec)
    summary = {"count": count, "infeasible": infeasible,
               "failed_verification": unverified}
    return records, summary


def run_identity(seed: int, count: int,
                 n_range: Tuple[int, int] = (4, 9),
                 m_range: Tuple[int, int] = (4, 16)) -> Outcome:
    """Both sides of the two-set counting identity on random set pairs."""
    rng = random.Random(seed)
    records: Records = []
    mismatches = 0
    for _ in range(count):
        g = random_multigraph(rng, rng.randint(*n_range),
                              rng.randint(*m_range))
        vs = sorted(g.vertices)
        common = rng.choice(vs)
        a1 = {common} | {v for v in vs if rng.random() < 0.4}
        a2 = {common} | {v for v in vs if rng.random() < 0.4}
        lhs, rhs = cut_identity_sides(g, a1, a2)
        if lhs != rhs:
            mismatches += 1
        records.append({"n": g.num_vertices, "m": g.num_edges,
                        "a1": sorted(a1), "a2": sorted(a2),
                        "lhs": lhs, "rhs": rhs})
    summary = {"count": count, "mismatches": mismatches}
    return records, summary


def run_eulerian_orientation(seed: int, count: int,
                             ks: Sequence[int] = (1, 2),
                             n_range: Tuple[int, int] = (4, 8)) -> Outcome:
    """Orient Eulerian 2k-edge-connected graphs along a closed trail."""
    rng = random.Random(seed)
    records: Records = []
    failures = 0
    for _ in range(count):
        k = rng.choice(list(ks))
        g = random_eulerian_2k_ec(rng, k, rng.randint(*n_range))
        o = orient_eulerian_consistent(g)
        ok = verify_k_arc_connected(o, k)
        if not ok:
            failures += 1
        records.append({"k": k, "n": g.num_vertices, "m": g.num_edges,
                        "k_arc_connected": ok})
    summary = {"count": count, "not_k_arc_connected": failures}
    return records, summary


EXPERIMENTS = {
    "liftgraph": run_liftgraph,
    "splitting": run_splitting,
    "huck": run_huck,
    "identity": run_identity,
    "eulerian-orientation": run_eulerian_orientation,
}


def run_experiment(name: str, seed: int, count: int,
                   params: Dict[str, object]) -> Outcome:
    if name not in EXPERIMENTS:
        raise LiftlinkError(
            f"unknown experiment {name!r}; "
            f"known: {', '.join(sorted(EXPERIMENTS))}")
    return EXPERIMENTS[name](seed, count, **params)
