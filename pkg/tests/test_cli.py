import json
import subprocess
import sys

import jsonschema

from lcdforge.cli import admissible_N, main, sweep_requests

DISTANCE_SCHEMA = {
    "type": "object",
    "required": ["status", "d", "lower", "method", "certified_window", "witness"],
    "properties": {
        "status": {"enum": ["exact", "interval"]},
        "d": {"type": ["integer", "null"]},
        "lower": {"type": "integer"},
        "upper": {"type": ["integer", "null"]},
        "method": {"enum": ["enumeration", "low-weight-search", "designed-only"]},
        "certified_window": {"type": "integer", "minimum": 0},
        "witness": {"type": ["array", "null"],
                    "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["n", "k", "d_exact", "d_designed", "d_search_window", "hull_dim", "lcd",
                 "dims_match_formula", "provenance", "distance", "field"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "k": {"type": "integer", "minimum": 0},
        "d_exact": {"type": ["integer", "null"]},
        "d_designed": {"type": "integer"},
        "d_search_window": {"type": "integer"},
        "hull_dim": {"type": "integer", "minimum": 0},
        "lcd": {"type": "boolean"},
        "dims_match_formula": {"type": "object", "required": ["status", "got"],
                               "properties": {"status": {"enum": ["match", "mismatch", "none"]}}},
        "provenance": {"type": "object", "required": ["config", "kind", "params"]},
        "distance": DISTANCE_SCHEMA,
        "generator": {"type": "string"},
    },
}

VERIFY_SCHEMA = {
    "type": "object",
    "required": ["n", "k", "hull_dim", "lcd", "d_exact", "d_lower", "distance"],
    "properties": {"distance": DISTANCE_SCHEMA, "lcd": {"type": "boolean"}},
}

ATLAS_SCHEMA = {
    "type": "object",
    "required": ["config", "sets", "A1", "A2"],
    "properties": {
        "sets": {"type": "array", "items": {
            "type": "object",
            "required": ["rep", "elements", "cardinality", "symmetric", "reciprocal_rep"]}},
        "A1": {"type": "array"},
    },
}

VERDICT_SCHEMA = {
    "type": "object",
    "required": ["id", "verdict", "details"],
    "properties": {"verdict": {"enum": ["PASS", "FAIL", "DISCREPANCY"]}},
}

SUMMARY_SCHEMA = {
    "type": "object",
    "required": ["summary"],
    "properties": {"summary": {"type": "object", "required": ["pass", "fail", "discrepancy"]}},
}

TRES = ["construct", "--p", "2", "--r", "4", "--N", "16,4,4", "--J", "1,2,3",
        "--kind", "hyperbolic-ss-shifted", "--t", "4"]


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_ex_tres(capsys):
    code, out, err = run(capsys, TRES)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert (doc["n"], doc["k"], doc["d_exact"], doc["hull_dim"]) == (135, 122, 4, 0)


def test_construct_ex7(capsys):
    # the listed invocation uses r=6, which is not a valid extension degree for N=42
    code, _, err = run(capsys, ["construct", "--p", "3", "--r", "6", "--N", "42", "--J", "1",
                                "--kind", "nok", "--t", "4"])
    assert code == 2 and "precondition" in err
    code, out, _ = run(capsys, ["construct", "--p", "3", "--r", "8", "--N", "42", "--J", "1",
                                "--kind", "nok", "--t", "4"])
    doc = json.loads(out)
    assert code == 0 and (doc["n"], doc["k"], doc["d_exact"]) == (41, 8, 22)


def test_construct_repetition_has_hull(capsys):
    # [2,1,2] repetition is self-dual in characteristic 2
    code, out, _ = run(capsys, ["construct", "--p", "2", "--r", "1", "--N", "2", "--J", "",
                                "--kind", "custom-delta", "--delta-set", "[[0]]"])
    doc = json.loads(out)
    assert (doc["n"], doc["k"], doc["d_exact"], doc["hull_dim"]) == (2, 1, 2, 1)
    assert code == 3


def test_construct_invalid_flags(capsys):
    assert run(capsys, ["construct", "--p", "2"])[0] == 1
    assert run(capsys, TRES[:-1] + ["x"])[0] == 1
    assert run(capsys, ["construct", "--p", "2", "--r", "1", "--N", "3", "--J", "1",
                        "--kind", "custom-delta", "--delta-set", "[[0]]"])[0] == 2
    code, _, err = run(capsys, ["construct", "--p", "2", "--r", "1", "--N", "2", "--J", "",
                                "--kind", "custom-delta", "--delta-set", "[[0"])
    assert code == 1 and "JSON" in err
    assert run(capsys, ["bogus"])[0] == 1


def test_construct_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, TRES + ["--distance", "designed", "--out", str(out)])
    assert code == 0 and stdout == ""
    jsonschema.validate(json.loads(out.read_text()), REPORT_SCHEMA)


def test_atlas(capsys):
    code, out, _ = run(capsys, ["atlas", "--p", "2", "--r", "12", "--N", "66", "--J", "1"])
    doc = json.loads(out)
    jsonschema.validate(doc, ATLAS_SCHEMA)
    assert sorted(a[0] for a in doc["A1"]) == [0, 1, 3, 5, 7, 11, 13]
    code, out, _ = run(capsys, ["atlas", "--p", "3", "--r", "4", "--N", "81", "--J", "1"])
    assert len(json.loads(out)["A1"]) == 14
    code, out, _ = run(capsys, ["atlas", "--p", "2", "--r", "1", "--N", "2", "--J", ""])
    assert [s["elements"] for s in json.loads(out)["sets"]] == [[[0]], [[1]]]


def test_reproduce_ex4(capsys):
    code, out, _ = run(capsys, ["reproduce", "--only", "ex4-*", "--jobs", "1"])
    lines = [json.loads(x) for x in out.splitlines()]
    for v in lines[:-1]:
        jsonschema.validate(v, VERDICT_SCHEMA)
        assert v["verdict"] == "PASS"
    jsonschema.validate(lines[-1], SUMMARY_SCHEMA)
    assert lines[-1]["summary"] == {"pass": 7, "fail": 0, "discrepancy": 0}
    assert [v["id"] for v in lines[:-1]] == sorted(v["id"] for v in lines[:-1])
    assert code == 0


def test_reproduce_ex2(capsys):
    code, out, _ = run(capsys, ["reproduce", "--only", "ex2-16383", "--jobs", "1"])
    v = json.loads(out.splitlines()[0])
    assert v["verdict"] == "DISCREPANCY" and code == 0
    assert v["details"]["k_candidates"]["computed"] == v["details"]["computed"]["k"]


def test_reproduce_unknown(capsys):
    assert run(capsys, ["reproduce", "--only", "no-such"])[0] == 1


def test_reproduce_failure_exit_code(capsys, monkeypatch):
    from lcdforge import cli
    from lcdforge.fixtures import Verdict
    monkeypatch.setattr(cli, "_run_one", lambda job: Verdict(job[0], "FAIL").to_json())
    code, out, _ = run(capsys, ["reproduce", "--only", "ex3-*", "--jobs", "1"])
    assert code == 3 and json.loads(out.splitlines()[-1])["summary"]["fail"] == 1


def test_sweep_includes_ex_tres(capsys):
    code, out, err = run(capsys, ["sweep", "--p", "2", "--r", "4", "--max-n", "150",
                                  "--kinds", "hyperbolic-ss-shifted", "--jobs", "1"])
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    reports = lines[:-1]
    for rep in reports:
        jsonschema.validate(rep, REPORT_SCHEMA)
    assert any((r["n"], r["k"], r["d_exact"]) == (135, 122, 4) for r in reports)
    summary = lines[-1]["summary"]
    assert {"n": 135, "k": 122} in [{"n": s["n"], "k": s["k"]} for s in summary]


def test_sweep_empty(capsys):
    code, out, _ = run(capsys, ["sweep", "--p", "2", "--r", "4", "--max-n", "2", "--jobs", "1"])
    assert code == 0 and out == ""
    assert run(capsys, ["sweep", "--p", "2", "--r", "4", "--kinds", "nope"])[0] == 1


def test_sweep_requests_are_admissible():
    assert admissible_N(2, 4, 16) == [4, 6, 16]
    reqs = list(sweep_requests(3, 2, 2, ["hyperbolic-ss", "nok"], 30, 3))
    assert reqs and all(r.config.n <= 30 for r in reqs)


def test_verify_identity(capsys, tmp_path):
    m = tmp_path / "id.txt"
    m.write_text("2 1 3 3\n1 0 0\n0 1 0\n0 0 1\n")
    code, out, _ = run(capsys, ["verify", "--matrix", str(m)])
    doc = json.loads(out)
    jsonschema.validate(doc, VERIFY_SCHEMA)
    assert code == 0 and doc["lcd"] and doc["d_exact"] == 1


def test_verify_self_dual(capsys, tmp_path):
    m = tmp_path / "sd.txt"
    m.write_text("2 1 2 4\n1 1 0 0\n0 0 1 1\n")
    code, out, _ = run(capsys, ["verify", "--matrix", str(m)])
    doc = json.loads(out)
    assert code == 3 and doc["hull_dim"] == 2 and not doc["lcd"]


def test_verify_malformed(capsys, tmp_path):
    m = tmp_path / "bad.txt"
    m.write_text("2 1 2 3\n1 0 1\n1 0 x\n")
    code, _, err = run(capsys, ["verify", "--matrix", str(m)])
    assert code == 1 and "line 3" in err
    assert run(capsys, ["verify", "--matrix", str(tmp_path / "missing")])[0] == 1


def test_round_trip(capsys, monkeypatch):
    code, out, _ = run(capsys, TRES + ["--emit-matrix"])
    rep = json.loads(out)
    code, out2, _ = run(capsys, ["verify", "--matrix", "-"], stdin=out, monkeypatch=monkeypatch)
    ver = json.loads(out2)
    for key in ("n", "k", "hull_dim", "lcd", "d_exact", "d_lower", "d_designed"):
        assert ver[key] == rep[key], key
    assert ver["distance"]["status"] == rep["distance"]["status"]
    code, out3, _ = run(capsys, ["verify", "--matrix", "-", "--designed", "4"],
                        stdin=rep["generator"], monkeypatch=monkeypatch)
    assert json.loads(out3)["d_exact"] == 4


def test_console_entry_points():
    for cmd in (["lcdforge"], [sys.executable, "-m", "lcdforge"]):
        p = subprocess.run(cmd + ["atlas", "--p", "2", "--r", "1", "--N", "2", "--J", ""],
                           capture_output=True, text=True)
        assert p.returncode == 0 and p.stderr == ""
        jsonschema.validate(json.loads(p.stdout), ATLAS_SCHEMA)
