import dataclasses
import json
from collections import Counter

import pytest

from lcdforge.fixtures import (FEASIBILITY, Fixture, Verdict, effective_feasibility, fixture_table,
                               lookup, run_fixture, select, summarise)

# tuples listed per worked example; ex7 has five (length-41 chain)
TUPLES_PER_EXAMPLE = {"ex1": 12, "ex2": 3, "ex3": 1, "ex4": 7, "ex5": 13, "ex6": 18, "ex7": 5, "ex8": 10}


def test_table_size_and_ids():
    table = fixture_table()
    assert len(table) >= 45
    ids = [f.id for f in table]
    assert len(ids) == len(set(ids))
    assert Counter(f.example for f in table) == TUPLES_PER_EXAMPLE


def test_every_tuple_appears_once():
    seen = Counter((f.example, f.expected["n"], f.expected["k"], f.expected["d_claim"])
                   for f in fixture_table())
    assert max(seen.values()) == 1


def test_fixture_fields():
    for f in fixture_table():
        assert f.feasibility in FEASIBILITY
        assert f.expected["lcd"] is True
        assert f.source.startswith("Example")
        assert Fixture.from_dict(json.loads(json.dumps(f.to_dict()))) == f
        f.construction  # parses


def test_lookup_examples():
    f = lookup("ex3-135")
    assert f.request["kind"] == "hyperbolic-ss-shifted" and f.request["params"] == {"t": 4}
    assert (f.expected["n"], f.expected["k"], f.expected["d_claim"], f.expected["d_claim_kind"]) == (135, 122, 4, "exact")
    f = lookup("ex7-41-8")
    assert (f.expected["n"], f.expected["k"], f.expected["d_claim"]) == (41, 8, 22)
    f = lookup("ex2-16383")
    assert f.k_candidates["paper"] == 14606 and f.discrepancy_expected
    with pytest.raises(KeyError):
        lookup("no-such")


def test_select_glob():
    assert len(select("ex4-*")) == 7
    assert select("no-such") == []
    assert len(select(None)) == len(fixture_table())


def test_ex4_27_passes_exactly():
    v = run_fixture(lookup("ex4-27-6-12"))
    assert v.verdict == "PASS"
    assert v.details["computed"]["d"] == 12 and v.details["computed"]["method"] == "enumeration"


def test_ex6_82_1_passes_exactly():
    v = run_fixture(lookup("ex6-82-1-82"))
    assert v.verdict == "PASS" and v.details["computed"]["d"] == 82


def test_corrupted_fixture_fails():
    f = lookup("ex4-27-6-12")
    bad = dataclasses.replace(f, expected=dict(f.expected, k=7))
    v = run_fixture(bad)
    assert v.verdict == "FAIL"
    assert any("dimension" in c for c in v.details["contradictions"])


def test_contradiction_with_annotation_is_discrepancy():
    f = lookup("ex4-27-6-12")
    bad = dataclasses.replace(f, expected=dict(f.expected, d_claim=13), discrepancy_expected="test")
    v = run_fixture(bad)
    assert v.verdict == "DISCREPANCY" and v.details["annotation"] == "test"


def test_unreachable_claim_is_not_silently_passed():
    # a lower-bound claim the harness cannot certify must FAIL, not PASS
    f = lookup("ex3-135")
    bad = dataclasses.replace(f, expected=dict(f.expected, d_claim=6, d_claim_kind="lower-bound"))
    assert run_fixture(bad, search_budget=1000).verdict != "PASS"


def test_precondition_failure_is_fail():
    f = lookup("ex3-135")
    bad = dataclasses.replace(f, request=dict(f.request, params={"t": 0}))
    v = run_fixture(bad)
    assert v.verdict == "FAIL" and "precondition" in v.details["error"]


def test_ex5_63_is_discrepancy():
    v = run_fixture(lookup("ex5-63"))
    assert v.verdict == "DISCREPANCY"
    assert v.details["k_candidates"]["computed"] == v.details["computed"]["k"] != 5


def test_feasibility_cap():
    f = lookup("ex4-27-6-12")
    assert effective_feasibility(f, None) == "full"
    assert effective_feasibility(f, "lcd-and-dims-only") == "lcd-and-dims-only"
    assert effective_feasibility(lookup("ex2-16383"), "full") == "lcd-and-dims-only"
    v = run_fixture(f, feasibility_cap="lcd-and-dims-only")
    assert v.verdict == "PASS" and v.details["computed"]["method"] == "designed-only"


def test_verdict_json_and_summary():
    vs = [Verdict("a", "PASS"), Verdict("b", "DISCREPANCY"), Verdict("c", "PASS")]
    assert summarise(vs) == {"pass": 2, "fail": 0, "discrepancy": 1}
    assert json.loads(vs[0].to_json()) == {"id": "a", "verdict": "PASS", "details": {}}


def test_bad_fixture_rejected():
    d = lookup("ex3-135").to_dict()
    with pytest.raises(ValueError):
        Fixture.from_dict(dict(d, feasibility="sometimes"))
    with pytest.raises(ValueError):
        Fixture.from_dict(dict(d, expected=dict(d["expected"], d_claim_kind="roughly")))
