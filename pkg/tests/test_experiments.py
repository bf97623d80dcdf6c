"""Batch runners: deterministic, JSON-clean, and clean summaries at desk scale."""

import json

import pytest

from liftlink import io, verify
from liftlink.errors import LiftlinkError
from liftlink.experiments import (EXPERIMENTS, run_experiment, run_huck,
                                  run_identity, run_liftgraph, run_splitting)


def test_liftgraph_batch_is_clean():
    records, summary = run_liftgraph(seed=5, count=30)
    assert summary["count"] == 30 and len(records) == 30
    assert summary["other"] == 0
    assert summary["bipartite_degree_violations"] == 0
    assert set(summary["tags"]) <= {"ComplementDisconnected",
                                    "IsolatedPlusBalancedBipartite"}


def test_liftgraph_every_nonliftable_pair_is_witnessed():
    _records, summary = run_liftgraph(seed=5, count=40)
    assert summary["nonliftable_pairs_probed"] > 0
    assert summary["dangerous_sets_found"] > 0
    assert summary["uncovered_pairs"] == 0


def test_liftgraph_bipartite_shape_occurs():
    _records, summary = run_liftgraph(seed=2, count=40, ks=(4,),
                                      deg_range=(5, 5))
    assert summary["tags"].get("IsolatedPlusBalancedBipartite", 0) > 0
    assert summary["bipartite_degree_violations"] == 0


def test_splitting_batch_is_clean():
    records, summary = run_splitting(seed=9, count=25)
    assert summary == {"count": 25, "stuck": 0, "bad_terminal_degree": 0,
                       "final_not_k_ec": 0}
    for rec in records:
        assert rec["deg_end"] in (0, rec["k"] + 1)


def test_huck_batch_never_infeasible():
    records, summary = run_huck(seed=3, count=15)
    assert summary["infeasible"] == 0
    assert summary["failed_verification"] == 0
    assert all(r["verdict"] == "Feasible" for r in records)


def test_identity_batch_exact():
    _records, summary = run_identity(seed=1, count=50)
    assert summary["mismatches"] == 0


def test_eulerian_orientation_batch():
    records, summary = run_experiment("eulerian-orientation", 12, 20, {})
    assert summary["not_k_arc_connected"] == 0
    assert all(r["k_arc_connected"] for r in records)


def test_runs_are_deterministic():
    for name in EXPERIMENTS:
        a = run_experiment(name, 77, 8, {})
        b = run_experiment(name, 77, 8, {})
        assert a == b, name


def test_records_are_json_clean_and_doc_verifies():
    for name in EXPERIMENTS:
        records, summary = run_experiment(name, 4, 6, {})
        doc = io.experiment_to_doc(name, 4, {}, summary, records)
        json.dumps(doc)
        rep = verify.verify_document(doc)
        assert rep.ok, (name, rep.diagnostics)


def test_unknown_experiment():
    with pytest.raises(LiftlinkError):
        run_experiment("free-lunch", 0, 1, {})
