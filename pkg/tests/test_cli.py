import json

from liftlink import io
from liftlink.cli import (DISPROVED, OK, UNDECIDED, USAGE, RunConfig,
                          run_command)

TRIANGLE = "0 1\n0 1\n1 2\n1 2\n0 2\n0 2\n"
TWO_EARS = "0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n"
PATH = "0 1\n1 2\n"


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_connectivity_pairs_and_verdict(tmp_path):
    g = _write(tmp_path, "g.txt", TRIANGLE)
    out = tmp_path / "run"
    rc = run_command(["connectivity", "--graph", g, "--k", "2",
                      "--pairs", "0,1;1,2", "--out", str(out)])
    assert rc == OK
    doc = io.read_doc(str(out / "connectivity.json"))
    assert doc["pairs"] == [[0, 1, 4], [1, 2, 4]]
    assert doc["k_edge_connected"] is True
    assert (out / "transcript.txt").exists()


def test_connectivity_disproved(tmp_path):
    g = _write(tmp_path, "g.txt", PATH)
    assert run_command(["connectivity", "--graph", g, "--k", "2"]) == DISPROVED


def test_liftgraph_report_verifies(tmp_path):
    g = _write(tmp_path, "g.txt", TRIANGLE)
    out = tmp_path / "run"
    assert run_command(["liftgraph", "--graph", g, "--s", "0", "--k", "2",
                        "--out", str(out)]) == OK
    rc = run_command(["verify", str(out / "liftgraph.json")])
    assert rc == OK


def test_split_document_verifies(tmp_path):
    g = _write(tmp_path, "g.txt", TRIANGLE)
    out = tmp_path / "run"
    assert run_command(["split", "--graph", g, "--s", "0", "--k", "2",
                        "--out", str(out)]) == OK
    assert run_command(["verify", str(out / "split.json")]) == OK


def test_linkage_solve_feasible_finite(tmp_path):
    g = _write(tmp_path, "g.txt", TRIANGLE)
    out = tmp_path / "run"
    rc = run_command(["linkage", "solve", "--graph", g,
                      "--pairs", "0,1;1,2;0,2", "--out", str(out)])
    assert rc == OK
    assert run_command(["verify", str(out / "linkage-result.json")]) == OK


def test_linkage_solve_infeasible_is_disproved(tmp_path):
    g = _write(tmp_path, "g.txt", PATH)
    out = tmp_path / "run"
    rc = run_command(["linkage", "solve", "--graph", g,
                      "--pairs", "0,2;0,2", "--out", str(out)])
    assert rc == DISPROVED
    doc = io.read_doc(str(out / "linkage-result.json"))
    assert doc["verdict"] == "Infeasible"
    # nonexistence has no replayable certificate
    assert run_command(["verify", str(out / "linkage-result.json")]) == UNDECIDED


def test_linkage_solve_on_family(tmp_path):
    out = tmp_path / "run"
    rc = run_command(["linkage", "solve", "--family", "grid",
                      "--pairs", "0,5;1,7;2,12", "--out", str(out)])
    assert rc == OK
    doc = io.read_doc(str(out / "linkage-result.json"))
    assert doc["verdict"] == "Feasible"
    assert "transcript" in doc
    assert run_command(["verify", str(out / "linkage-result.json")]) == OK


def test_linkage_counterexample(tmp_path):
    out = tmp_path / "run"
    assert run_command(["linkage", "counterexample", "--k", "2",
                        "--out", str(out)]) == OK
    doc = io.read_doc(str(out / "linkage-result.json"))
    assert doc["verdict"] == "Infeasible"


def test_orient_finite_eulerian(tmp_path):
    g = _write(tmp_path, "g.txt", TWO_EARS)
    out = tmp_path / "run"
    rc = run_command(["orient", "finite", "--graph", g, "--k", "1",
                      "--eulerian", "--out", str(out)])
    assert rc == OK
    assert run_command(["verify", str(out / "orientation.json")]) == OK
    assert "digraph" in (out / "orientation.dot").read_text()


def test_orient_finite_search(tmp_path):
    g = _write(tmp_path, "g.txt", TRIANGLE)
    out = tmp_path / "run"
    assert run_command(["orient", "finite", "--graph", g, "--k", "1",
                        "--out", str(out)]) == OK
    assert run_command(["verify", str(out / "orientation.json")]) == OK


def test_orient_finite_infeasible_is_disproved(tmp_path):
    g = _write(tmp_path, "g.txt", PATH)
    # the path has bridges, so no 1-arc-connected orientation exists
    assert run_command(["orient", "finite", "--graph", g, "--k", "1"]
                       ) == DISPROVED


def test_orient_infinite_rounds_verify(tmp_path):
    out = tmp_path / "run"
    rc = run_command(["orient", "infinite", "--family", "grid", "--k", "1",
                      "--rounds", "2", "--out", str(out)])
    assert rc == OK
    assert run_command(["verify", str(out / "orientation-rounds.json")]) == OK


def test_fan_document_verifies(tmp_path):
    out = tmp_path / "run"
    rc = run_command(["fan", "--family", "grid", "--count", "2",
                      "--length", "2", "--out", str(out)])
    assert rc == OK
    assert run_command(["verify", str(out / "fan.json")]) == OK


def test_fan_shallow_cap_is_undecided():
    rc = run_command(["fan", "--family", "grid", "--count", "2",
                      "--depth", "2", "--depth-cap", "2"])
    assert rc == UNDECIDED


def test_immerse_document_verifies(tmp_path):
    out = tmp_path / "run"
    rc = run_command(["immerse", "--family", "grid", "--a0", "0,1",
                      "--k", "1", "--out", str(out)])
    assert rc == OK
    assert run_command(["verify", str(out / "immersion.json")]) == OK


def test_verify_flags_tampering(tmp_path):
    g = _write(tmp_path, "g.txt", TWO_EARS)
    out = tmp_path / "run"
    run_command(["orient", "finite", "--graph", g, "--k", "1", "--eulerian",
                 "--out", str(out)])
    doc = io.read_doc(str(out / "orientation.json"))
    eid, tail, head = doc["directions"][0]
    doc["directions"][0] = [eid, head, tail]
    io.write_doc(str(out / "bad.json"), doc)
    assert run_command(["verify", str(out / "bad.json")]) == DISPROVED
    # a batch with one bad document still reports the failure
    assert run_command(["verify", str(out / "orientation.json"),
                        str(out / "bad.json")]) == DISPROVED


def test_experiment_writes_records(tmp_path):
    out = tmp_path / "run"
    rc = run_command(["experiment", "identity", "--count", "20",
                      "--seed", "3", "--out", str(out)])
    assert rc == OK
    records = io.jsonl_to_records((out / "records.jsonl").read_text())
    assert len(records) == 20
    assert run_command(["verify", str(out / "experiment.json")]) == OK


def test_experiment_reruns_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run_command(["experiment", "liftgraph", "--count", "6",
                            "--seed", "11", "--out", str(out)]) == OK
    for name in ("experiment.json", "records.jsonl"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_linkage_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        rc = run_command(["linkage", "solve", "--family", "grid",
                          "--pairs", "0,5;1,7;2,12", "--out", str(out)])
        assert rc == OK
    assert ((a / "linkage-result.json").read_bytes()
            == (b / "linkage-result.json").read_bytes())


def test_family_flag_inline_and_file(tmp_path):
    desc = {"family": "ladder", "params": {"width": 3}}
    inline = json.dumps(desc)
    out = tmp_path / "run"
    assert run_command(["fan", "--family", inline, "--count", "2",
                        "--out", str(out)]) == OK
    famdoc = tmp_path / "fam.json"
    famdoc.write_text(io.dumps({"schema": io.schema_id("family"),
                                "roots": [], **desc}))
    assert run_command(["fan", "--family", "@" + str(famdoc),
                        "--count", "2"]) == OK


def test_usage_errors(tmp_path):
    assert run_command(["nosuchcommand"]) == USAGE
    assert run_command(["--help"]) == OK
    assert run_command(["split", "--graph", str(tmp_path / "missing.txt"),
                        "--s", "0", "--k", "2"]) == USAGE
    assert run_command(["split", "--s", "0", "--k", "2"]) == USAGE


def test_runconfig_defaults():
    cfg = RunConfig()
    assert (cfg.seed, cfg.depth, cfg.depth_cap) == (0, 16, 256)
    assert cfg.rng().random() == RunConfig().rng().random()
