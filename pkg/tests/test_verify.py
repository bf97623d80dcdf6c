"""Certificate replay: accepts solver output, rejects tampered documents.

The checkers must stay independent of the solvers, so the final test
asserts that importing the verifier pulls in no solver module.
"""

import copy
import random
import subprocess
import sys

from liftlink import io, verify
from liftlink.families import make_family
from liftlink.fan import FanRequest, linking_fan
from liftlink.immersion import immerse
from liftlink.lifting import (admissible_splitting, classify_structure,
                              find_dangerous_set, lifting_graph)
from liftlink.linkage import LinkageInstance, solve_finite, solve_infinite
from liftlink.multigraph import MultiGraph
from liftlink.orientation import Orientation, extend_orientation, orient_infinite
from liftlink.randgen import random_eulerian_2k_ec, random_sk_instance
from liftlink.rays import boundary_linked_decomposition

GRID = make_family("grid")


def test_graph_document():
    g = MultiGraph.from_edge_list([(0, 1), (1, 2)])
    assert verify.verify_document(io.graph_to_doc(g)).ok
    bad = io.graph_to_doc(g)
    bad["edges"].append([5, 2, 2])
    assert verify.verify_document(bad).status == verify.FAIL


def test_unknown_schema_fails():
    rep = verify.verify_document({"schema": "liftlink/graph/9"})
    assert rep.status == verify.FAIL
    assert verify.verify_document({"what": 1}).status == verify.FAIL


def test_family_document_roots():
    doc = io.family_to_doc(GRID, roots=[0, 2])
    assert verify.verify_document(doc).ok
    doc["roots"] = [-7]
    assert verify.verify_document(doc).status == verify.FAIL


def test_connectivity_document():
    g = MultiGraph.from_edge_list([(0, 1), (1, 2), (0, 2), (0, 2)])
    doc = {"schema": io.schema_id("connectivity"),
           "graph": io.graph_to_doc(g),
           "pairs": [[0, 2, 3], [1, 2, 2]],
           "k": 2, "k_edge_connected": True}
    assert verify.verify_document(doc).ok
    doc["pairs"][0][2] = 4
    assert verify.verify_document(doc).status == verify.FAIL


def _liftgraph_doc(g, s, k, dangerous=None):
    lg = lifting_graph(g, s, k)
    cls = classify_structure(lg)
    record = io.liftgraph_record(
        g.degree(s), k, cls.tag, len(lg.complement_components()),
        dangerous_set=dangerous)
    return io.liftgraph_report_to_doc(g, s, record, lg.edge_pairs())


def test_liftgraph_report_document():
    g, s = random_sk_instance(random.Random(11), 2, 6, 5)
    doc = _liftgraph_doc(g, s, 2)
    rep = verify.verify_document(doc)
    assert rep.ok, rep.diagnostics
    bad = copy.deepcopy(doc)
    bad["record"]["complement_component_count"] += 1
    assert verify.verify_document(bad).status == verify.FAIL
    bad = copy.deepcopy(doc)
    bad["liftable_pairs"] = bad["liftable_pairs"][:-1]
    assert verify.verify_document(bad).status == verify.FAIL


def test_liftgraph_report_with_dangerous_set():
    # the set {1, 2} has boundary 3 = k+1: both its s-edges plus one exit,
    # so the two s-edges into it cannot be lifted together
    g = MultiGraph.from_edge_list(
        [(0, 1), (0, 2), (0, 4), (0, 3), (1, 2), (2, 3), (3, 4)])
    ds = find_dangerous_set(g, 0, 2, [0, 1])
    assert ds is not None and {1, 2} <= set(ds.side)
    doc = _liftgraph_doc(g, 0, 2, dangerous=sorted(ds.side))
    rep = verify.verify_document(doc)
    assert rep.ok, rep.diagnostics
    doc["record"]["dangerous_set"] = sorted(set(g.vertices) - {0})
    assert verify.verify_document(doc).status == verify.FAIL


def test_split_document_replay():
    g, s = random_sk_instance(random.Random(7), 2, 6, 5)
    steps, final = admissible_splitting(g, s, 2)
    doc = io.split_to_doc(g, s, 2, steps, final)
    rep = verify.verify_document(doc)
    assert rep.ok and rep.checked["steps"] == len(steps)

    short = copy.deepcopy(doc)
    short["steps"] = short["steps"][:-1]
    assert verify.verify_document(short).status == verify.FAIL

    wrong = copy.deepcopy(doc)
    wrong["final_graph"]["edges"] = wrong["final_graph"]["edges"][:-1]
    assert verify.verify_document(wrong).status == verify.FAIL


def _fan_doc():
    _core, sets = boundary_linked_decomposition(GRID, [0], 16)
    system = sets[0].rays
    req = FanRequest(k=4, system=system, length=2)
    fan = linking_fan(req, 24)
    return io.fan_to_doc(GRID, fan, system.rays, req.avoid, req.length)


def test_fan_document():
    doc = _fan_doc()
    rep = verify.verify_document(doc)
    assert rep.ok, rep.diagnostics

    greedy = copy.deepcopy(doc)
    greedy["segment_lengths"] = [s + 5 for s in greedy["segment_lengths"]]
    assert verify.verify_document(greedy).status == verify.FAIL

    dodgy = copy.deepcopy(doc)
    dodgy["avoid"] = sorted(set(dodgy["path_edges"][0][:1]))
    assert verify.verify_document(dodgy).status == verify.FAIL

    broken = copy.deepcopy(doc)
    broken["rays"][0]["edges"][1] = 999999
    assert verify.verify_document(broken).status == verify.FAIL


def test_linkage_result_documents():
    g = MultiGraph.from_edge_list([(0, 1), (1, 2), (0, 1), (1, 2), (0, 2)])
    inst = LinkageInstance(graph=g, k=2, pairs=((0, 2), (0, 2)))
    got = solve_finite(inst)
    idoc = io.linkage_instance_to_doc(g, 2, inst.pairs)
    doc = io.linkage_result_to_doc(idoc, "Feasible",
                                   paths=got.paths, path_edges=got.path_edges)
    assert verify.verify_document(doc).ok

    shared = copy.deepcopy(doc)
    shared["path_edges"][1] = shared["path_edges"][0]
    shared["paths"][1] = shared["paths"][0]
    rep = verify.verify_document(shared)
    assert rep.status == verify.FAIL
    assert any("used 2 times" in d for d in rep.diagnostics)

    off = copy.deepcopy(doc)
    off["paths"][0][-1] = 1
    assert verify.verify_document(off).status == verify.FAIL

    assert verify.verify_document(
        io.linkage_result_to_doc(idoc, "Infeasible")
    ).status == verify.UNVERIFIED


def test_infinite_linkage_result_document():
    pairs = ((0, 5), (1, 7), (2, 12))
    out = solve_infinite(GRID, pairs, 3, depth=16)
    idoc = io.linkage_instance_to_doc(GRID, 3, pairs)
    doc = io.linkage_result_to_doc(
        idoc, "Feasible", paths=out.linkage.paths,
        path_edges=out.linkage.path_edges,
        transcript=io.infinite_transcript(out))
    rep = verify.verify_document(doc)
    assert rep.ok, rep.diagnostics
    doc["paths"][0] = list(doc["paths"][0]); doc["paths"][0][0] = 99
    assert verify.verify_document(doc).status == verify.FAIL


def test_immersion_document():
    cert = immerse(GRID, [0, 1, 2], 1, depth=16)
    doc = io.immersion_to_doc(GRID, cert)
    rep = verify.verify_document(doc)
    assert rep.ok, rep.diagnostics

    missing = copy.deepcopy(doc)
    missing["images"] = missing["images"][:-1]
    assert verify.verify_document(missing).status == verify.FAIL

    bent = copy.deepcopy(doc)
    bent["branch"][0][1] = bent["branch"][1][1]
    assert verify.verify_document(bent).status == verify.FAIL


def test_orientation_document():
    g = random_eulerian_2k_ec(random.Random(3), 2, 5)
    o = extend_orientation(g, 2, Orientation(g, {}))
    doc = io.orientation_to_doc(g, 2, o.direction)
    rep = verify.verify_document(doc)
    assert rep.ok and rep.checked["pairs"] == 20

    flipped = copy.deepcopy(doc)
    eid, t, h = flipped["directions"][0]
    flipped["directions"][0] = [eid, h, t]
    assert verify.verify_document(flipped).status == verify.FAIL

    partial = copy.deepcopy(doc)
    partial["directions"] = partial["directions"][:-1]
    assert verify.verify_document(partial).status == verify.FAIL

    pinned = copy.deepcopy(doc)
    eid, t, h = pinned["directions"][0]
    pinned["pre"] = [[eid, h, t]]
    assert verify.verify_document(pinned).status == verify.FAIL


def test_orientation_rounds_document():
    rounds = orient_infinite(GRID, 1, rounds=2, depth=16)
    doc = io.rounds_to_doc(GRID, 1, rounds)
    rep = verify.verify_document(doc)
    assert rep.ok, rep.diagnostics
    assert rep.checked["pairs"] > 0

    unbalanced = copy.deepcopy(doc)
    eid, t, h = unbalanced["rounds"][0]["directions"][0]
    unbalanced["rounds"][0]["directions"][0] = [eid, h, t]
    assert verify.verify_document(unbalanced).status == verify.FAIL

    fickle = copy.deepcopy(doc)
    row = None
    for row in fickle["rounds"][1]["directions"]:
        if any(row[0] == r0[0] for r0 in fickle["rounds"][0]["directions"]):
            break
    row[1], row[2] = row[2], row[1]
    assert verify.verify_document(fickle).status == verify.FAIL


def test_experiment_document():
    records = [io.liftgraph_record(5, 2, "Other", 1, None),
               io.liftgraph_record(6, 2, "ComplementDisconnected", 2, None)]
    doc = io.experiment_to_doc("liftgraph", 1, {}, {"count": 2, "other": 1},
                               records)
    assert verify.verify_document(doc).ok
    doc["summary"]["other"] = 0
    assert verify.verify_document(doc).status == verify.FAIL


def test_verify_path_missing_file(tmp_path):
    rep = verify.verify_path(str(tmp_path / "nope.json"))
    assert rep.status == verify.FAIL


def test_verifier_imports_no_solver():
    code = ("import sys, liftlink.verify; "
            "names = ('lifting', 'splitting', 'fan', 'linkage', "
            "'immersion', 'orientation', 'rays'); "
            "bad = [m for m in sys.modules "
            "if m.startswith('liftlink.') and m.split('.')[1] in names]; "
            "sys.exit(1 if bad else 0)")
    proc = subprocess.run([sys.executable, "-c", code])
    assert proc.returncode == 0
