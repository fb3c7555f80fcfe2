"""Parameter tuples from the worked examples, as runnable fixtures."""
from __future__ import annotations

import fnmatch
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

from .subfield import ConstructionRequest, PreconditionError, construct
from .variety import ConfigError

FEASIBILITY = ("full", "lcd-dims-and-bound", "lcd-and-dims-only")
VERDICTS = ("PASS", "FAIL", "DISCREPANCY")


@dataclass(frozen=True)
class Fixture:
    id: str
    request: dict
    expected: dict
    feasibility: str
    source: str
    discrepancy_expected: str | None = None
    notes: str | None = None
    k_candidates: dict | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "Fixture":
        f = cls(d["id"], d["request"], d["expected"], d["feasibility"], d["source"],
                d.get("discrepancy_expected"), d.get("notes"), d.get("k_candidates"))
        if f.feasibility not in FEASIBILITY:
            raise ValueError(f"{f.id}: unknown feasibility {f.feasibility!r}")
        if f.expected.get("d_claim_kind") not in ("exact", "lower-bound"):
            raise ValueError(f"{f.id}: bad d_claim_kind")
        return f

    def to_dict(self) -> dict:
        out = {"id": self.id, "request": self.request, "expected": self.expected,
               "feasibility": self.feasibility, "source": self.source}
        for key in ("discrepancy_expected", "notes", "k_candidates"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out

    @property
    def construction(self) -> ConstructionRequest:
        return ConstructionRequest.from_dict(self.request)

    @property
    def example(self) -> str:
        return self.id.split("-", 1)[0]


@dataclass
class Verdict:
    id: str
    verdict: str
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.id, "verdict": self.verdict, "details": self.details}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@lru_cache(maxsize=1)
def _load() -> tuple[Fixture, ...]:
    text = resources.files("lcdforge").joinpath("data/fixtures.json").read_text()
    return tuple(Fixture.from_dict(d) for d in json.loads(text)["fixtures"])


def fixture_table() -> list[Fixture]:
    return list(_load())


def lookup(fid: str) -> Fixture:
    for f in _load():
        if f.id == fid:
            return f
    raise KeyError(fid)


def select(pattern: str | None) -> list[Fixture]:
    if pattern is None:
        return fixture_table()
    return [f for f in _load() if fnmatch.fnmatchcase(f.id, pattern)]


def _distance_problems(exp: dict, dist: dict, feas: str) -> tuple[list[str], list[str]]:
    """Return (contradictions with the claim, things the harness could not certify)."""
    claim, kind = exp["d_claim"], exp["d_claim_kind"]
    contra, unsure = [], []
    if dist["status"] == "exact":
        d = dist["d"]
        if kind == "exact" and d != claim:
            contra.append(f"minimum distance is {d}, claim {claim}")
        if kind == "lower-bound" and d < claim:
            contra.append(f"minimum distance is {d}, below the claimed bound {claim}")
        return contra, unsure
    lo, up = dist["lower"], dist.get("upper")
    if up is not None and up < claim:
        contra.append(f"a codeword of weight {up} exists, claim {claim}")
    if kind == "exact":
        if lo > claim:
            contra.append(f"no codeword below weight {lo}, claim {claim}")
        if feas == "full":
            unsure.append(f"distance only bracketed in [{lo}, {up}]")
    elif lo < claim:
        unsure.append(f"lower bound {claim} not certified (got {lo})")
    return contra, unsure


def effective_feasibility(f: Fixture, cap: str | None) -> str:
    """The cheaper of the fixture's own level and ``cap``."""
    if cap is None:
        return f.feasibility
    return FEASIBILITY[max(FEASIBILITY.index(f.feasibility), FEASIBILITY.index(cap))]


def run_fixture(f: Fixture, budget: int | None = None, search_budget: int | None = None,
                emit_report: bool = False, feasibility_cap: str | None = None) -> Verdict:
    exp = f.expected
    feas = effective_feasibility(f, feasibility_cap)
    try:
        mode = "designed" if feas == "lcd-and-dims-only" else "auto"
        rep = construct(f.construction, distance=mode, budget=budget, search_budget=search_budget)
    except (PreconditionError, ConfigError) as exc:
        return Verdict(f.id, "FAIL", {"error": f"precondition: {exc}"})

    contra: list[str] = []
    unsure: list[str] = []
    if rep.n != exp["n"]:
        contra.append(f"length is {rep.n}, claim {exp['n']}")
    if rep.k != exp["k"]:
        contra.append(f"dimension is {rep.k}, claim {exp['k']}")
    if rep.hull_dim != 0:
        contra.append(f"hull dimension {rep.hull_dim}")
    if feas != "lcd-and-dims-only":
        c, u = _distance_problems(exp, rep.distance, feas)
        contra += c
        unsure += u

    details: dict[str, Any] = {
        "computed": {"n": rep.n, "k": rep.k, "hull_dim": rep.hull_dim,
                     "d": rep.distance.get("d"), "d_lower": rep.distance["lower"],
                     "d_upper": rep.distance.get("upper"), "d_designed": rep.d_designed,
                     "method": rep.distance["method"],
                     "certified_window": rep.distance["certified_window"]},
        "expected": exp,
        "feasibility": feas,
    }
    if f.k_candidates:
        details["k_candidates"] = dict(f.k_candidates, computed=rep.k)
    if contra:
        details["contradictions"] = contra
    if unsure:
        details["uncertified"] = unsure
    if emit_report:
        details["report"] = rep.to_dict()

    if unsure:
        verdict = "FAIL"
    elif contra:
        verdict = "DISCREPANCY" if f.discrepancy_expected else "FAIL"
        if f.discrepancy_expected:
            details["annotation"] = f.discrepancy_expected
    else:
        verdict = "PASS"
    return Verdict(f.id, verdict, details)


def summarise(verdicts) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "discrepancy": 0}
    for v in verdicts:
        out[v.verdict.lower()] += 1
    return out
