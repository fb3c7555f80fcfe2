"""Subfield-subcodes over GF(p) and the LCD constructions built on them.

Every construction returns a :class:`CodeReport` about the code ``C``, the
Euclidean dual of the GF(p) subfield-subcode ``E`` of an evaluation code
(for ``univariate-delta`` there is no subfield step and both live over
GF(q)).  ``C`` and ``E`` share their hull, so the hull is computed on the
smaller of the two.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .cyclotomic import atlas, closure, is_orbit_closed, orbits_in
from .distance import (DistanceResult, budget_from_env, distance_report)
from .field import build_field
from .matrix import (HullDisagreement, LinearCode, Matrix, dual_code, format_matrix,
                     hull_dimension, kernel, rank)
from .variety import (ConfigError, DeltaSet, VarietyConfig, box_delta, boundary_clause_fires,
                      build_evaluation_code, close_under_reciprocals, hyperbolic_set,
                      is_reciprocal_closed, monomial_logs)

KINDS = ("univariate-delta", "nok", "theorem35", "bch-dimension", "box-ss",
         "hyperbolic-ss", "hyperbolic-ss-shifted", "custom-delta")
RECIPROCITY = ("full", "keep", "swap")

# above this many kernel entries the intersection hull check is skipped
INTERSECTION_LIMIT = 4_000_000


class PreconditionError(ValueError):
    """A construction's parameters violate the statement it implements."""


# --- trace basis ---------------------------------------------------------------

def trace_class_vector(cfg: VarietyConfig, a, s: int, xi_power: int = 1) -> np.ndarray:
    """Evaluation of ``T_a(xi^s X^a)`` as a vector of GF(p) integers.

    ``xi = g^(xi_power (q-1)/(p^i - 1))`` with ``i`` the orbit size of ``a``;
    ``xi_power`` must be coprime to ``p^i - 1`` for ``xi`` to be primitive.
    """
    a = cfg.check_exponent(a)
    i = atlas(cfg).set_of(a).cardinality
    if not 0 <= s < i:
        raise ConfigError(f"s={s} outside 0..{i - 1}")
    return _trace_rows(cfg, a, i, [s], xi_power)[0]


def _trace_rows(cfg: VarietyConfig, a, i: int, ss, xi_power: int = 1) -> np.ndarray:
    F = cfg.field
    Q = cfg.q - 1
    if math.gcd(xi_power, cfg.p**i - 1) != 1:
        raise ConfigError(f"xi_power={xi_power} is not coprime to {cfg.p**i - 1}")
    xi = (xi_power * (Q // (cfg.p**i - 1))) % Q
    lg = monomial_logs(cfg, np.array([a]))[0]
    tab = F.partial_trace_table(i)
    rows = []
    for s in ss:
        v = tab[(s * xi + np.maximum(lg, 0)) % Q]
        v = np.where(lg < 0, 0, v)
        if v.max(initial=0) >= cfg.p:
            raise AssertionError(f"trace vector of {a} left the prime field")
        rows.append(v)
    return np.array(rows, dtype=np.int64)


def subfield_subcode(cfg: VarietyConfig, delta, xi_power: int = 1) -> LinearCode:
    """Trace-basis generator of ``E_delta`` intersected with GF(p)^n."""
    d = DeltaSet(cfg, delta)
    if not is_orbit_closed(cfg, d):
        d = closure(cfg, d)
    sets = orbits_in(cfg, d)
    rows = [_trace_rows(cfg, S.representative, S.cardinality, range(S.cardinality), xi_power)
            for S in sets]
    Fp = build_field(cfg.p, 1)
    n = cfg.n
    G = np.concatenate(rows) if rows else np.zeros((0, n), dtype=np.int64)
    expected = sum(S.cardinality for S in sets)
    got = rank(Matrix(Fp, G)) if G.shape[0] else 0
    if got != expected:
        raise AssertionError(f"trace basis has rank {got}, expected {expected}")
    return LinearCode(Fp, Matrix(Fp, G), {"kind": "subfield-subcode", "config": cfg.to_dict(),
                                          "orbits": [list(S.representative) for S in sets]})


def subfield_subcode_oracle(C: LinearCode) -> LinearCode:
    """``C ∩ GF(p)^n`` by expanding each GF(q) check into r GF(p) checks."""
    F = C.field
    Fp = build_field(F.p, 1)
    if F.r == 1:
        return LinearCode.from_rows(Fp, C.generator.data, C.n)
    H = kernel(C.generator).data                        # (n-k, n) over GF(q)
    if H.shape[0] == 0:
        return LinearCode(Fp, Matrix.identity(Fp, C.n))
    D = F.digits_array(H)                               # (n-k, n, r)
    checks = D.transpose(0, 2, 1).reshape(-1, C.n)      # one GF(p) row per digit
    K = kernel(Matrix(Fp, checks))
    return LinearCode.from_rows(Fp, K.data, C.n, provenance={"kind": "subfield-oracle"})


def lcd_verify(C: LinearCode, method: str = "both") -> tuple[int, bool]:
    """Hull dimension and LCD flag; ``method="both"`` cross-checks two algorithms."""
    if method == "auto":
        method = "both" if C.n * max(C.n - C.k, 1) <= INTERSECTION_LIMIT else "gram"
    h = hull_dimension(C, method)
    return h, h == 0


# --- requests and reports ----------------------------------------------------------

@dataclass
class ConstructionRequest:
    config: VarietyConfig
    kind: str
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")

    def to_dict(self) -> dict:
        return {"config": self.config.to_dict(), "kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> "ConstructionRequest":
        return cls(VarietyConfig.from_dict(d["config"]), d["kind"], dict(d.get("params", {})))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class CodeReport:
    field: dict
    n: int
    k: int
    d_designed: int
    hull_dim: int
    lcd: bool
    dims_match_formula: dict
    provenance: dict
    distance: dict
    delta_size: int
    flags: list[str] = field(default_factory=list)
    hull_method: str = "both"
    extra: dict = field(default_factory=dict)
    generator: str | None = None

    @property
    def d_exact(self) -> int | None:
        return self.distance.get("d")

    @property
    def d_lower(self) -> int:
        return self.distance.get("lower", self.d_designed)

    @property
    def d_search_window(self) -> int:
        return self.distance.get("certified_window", 0)

    def to_dict(self) -> dict:
        out = {
            "field": self.field,
            "n": self.n,
            "k": self.k,
            "d_exact": self.d_exact,
            "d_designed": self.d_designed,
            "d_lower": self.d_lower,
            "d_upper": self.distance.get("upper"),
            "d_search_window": self.d_search_window,
            "hull_dim": self.hull_dim,
            "lcd": self.lcd,
            "hull_method": self.hull_method,
            "dims_match_formula": self.dims_match_formula,
            "delta_size": self.delta_size,
            "flags": list(self.flags),
            "distance": self.distance,
            "provenance": self.provenance,
        }
        if self.extra:
            out["extra"] = self.extra
        if self.generator is not None:
            out["generator"] = self.generator
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class _Plan:
    delta: DeltaSet
    designed: int
    expected_k: int | None
    formula: str
    flags: list[str]
    over_q: bool = False


def _param(params: dict, name: str, cast=int):
    if name not in params or params[name] is None:
        raise PreconditionError(f"missing parameter {name!r}")
    try:
        return cast(params[name])
    except (TypeError, ValueError):
        raise PreconditionError(f"parameter {name!r} has a bad value {params[name]!r}") from None


def _univariate(cfg: VarietyConfig) -> None:
    if cfg.m != 1:
        raise PreconditionError("this construction is univariate (one N value)")


def _a1_chain(cfg: VarietyConfig) -> list[int]:
    return sorted(a[0] for a in atlas(cfg).A1)


def _prefix_delta(cfg: VarietyConfig, reps: list[int]) -> DeltaSet:
    base = closure(cfg, [(a,) for a in reps])
    return closure(cfg, close_under_reciprocals(cfg, base))


def _mode(params: dict) -> Any:
    mode = params.get("reciprocity", "full")
    if mode not in RECIPROCITY:
        raise PreconditionError(f"reciprocity must be one of {', '.join(RECIPROCITY)}")
    return False if mode == "full" else mode


def _recip_closed_sigma(cfg: VarietyConfig, base: DeltaSet, params: dict) -> tuple[DeltaSet, DeltaSet]:
    sigma = closure(cfg, base)
    full = closure(cfg, close_under_reciprocals(cfg, sigma, _mode(params)))
    return sigma, full


def plan(req: ConstructionRequest) -> _Plan:
    cfg, kind, P = req.config, req.kind, req.params
    flags: list[str] = []
    p, r, q = cfg.p, cfg.r, cfg.q

    if kind == "univariate-delta":
        _univariate(cfg)
        N = cfg.N[0]
        delta = _param(P, "delta")
        top = (N - 1) // 2 if (N - 1) % 2 == 0 else N // 2 - 1
        if not 1 <= delta <= top:
            raise PreconditionError(f"delta={delta} outside 1..{top}")
        exps = list(range(delta)) + list(range(N - delta, N - 1))
        if not cfg.J:
            exps.append(N - 1)
        d = DeltaSet(cfg, [(a,) for a in exps])
        return _Plan(d, 2 * delta, N - 2 * delta, "N - 2 delta", flags, over_q=True)

    if kind in ("nok", "theorem35"):
        _univariate(cfg)
        N, M = cfg.N[0], cfg.M[0]
        A1 = _a1_chain(cfg)
        t = _param(P, "t")
        if not 0 <= t < len(A1) - 1:
            raise PreconditionError(f"t={t} outside 0..{len(A1) - 2} (A1 has {len(A1)} elements)")
        d = _prefix_delta(cfg, A1[:t + 1])
        designed = 2 * A1[t + 1]
        if kind == "nok":
            return _Plan(d, designed, None, "", flags)
        if not p ** (r // 2) < M:
            raise PreconditionError(f"need p^floor(r/2) < N-1, got N-1={M}")
        if t < 1:
            raise PreconditionError("t must be >= 1")
        if A1[t] * (q - 1) > M * p ** math.ceil(r / 2):
            raise PreconditionError(f"a_t={A1[t]} exceeds (N-1)p^ceil(r/2)/(p^r-1)")
        special = r % 2 == 0 and A1[t] * (q - 1) == M * p ** (r // 2)
        if special:
            return _Plan(d, designed, N - (2 * t - 1) * r, "N - (2t-1) r", flags)
        return _Plan(d, designed, N - 2 * t * r, "N - 2 t r", flags)

    if kind == "bch-dimension":
        _univariate(cfg)
        N, M = cfg.N[0], cfg.M[0]
        delta = _param(P, "delta")
        if not p ** (r // 2) < M:
            raise PreconditionError(f"need p^floor(r/2) < N-1, got N-1={M}")
        top = min(M * p ** math.ceil(r / 2) // (q - 1), N - 2)
        if not 2 <= delta <= top:
            raise PreconditionError(f"delta={delta} outside 2..{top}")
        A1 = _a1_chain(cfg)
        reps = [a for a in A1 if a < delta]
        d = _prefix_delta(cfg, reps)
        expected = N - 2 * (r * -(-(delta - 1) * (p - 1) // p))
        return _Plan(d, 2 * delta, expected, "N - 2 r ceil((delta-1)(1-1/p))", flags)

    if kind == "box-ss":
        alpha = P.get("alpha")
        if alpha is None:
            raise PreconditionError("missing parameter 'alpha'")
        try:
            box = box_delta(cfg, alpha)
        except ConfigError as exc:
            raise PreconditionError(str(exc)) from None
        sigma, d = _recip_closed_sigma(cfg, box, P)
        if len(d) != len(sigma):
            flags.append("reciprocal-closure-added")
        designed = min(2 * int(a) + 2 for a in alpha)
        return _Plan(d, designed, cfg.n - len(sigma), "n - card(box^sigma)", flags)

    if kind in ("hyperbolic-ss", "hyperbolic-ss-shifted"):
        t = _param(P, "t")
        if not 1 <= t <= cfg.n:
            raise PreconditionError(f"t={t} outside 1..{cfg.n}")
        bad = [j + 1 for j in range(cfg.m) if not cfg.in_J(j) and cfg.N[j] % p]
        if bad:
            raise PreconditionError(f"p must divide N_j for j outside J; fails for j={bad}")
        shifted = kind.endswith("shifted")
        if shifted and not cfg.J:
            raise PreconditionError("the shifted set needs J nonempty")
        base = hyperbolic_set(cfg, t, shifted)
        if len(base) == 0:
            raise PreconditionError(f"t={t} gives an empty exponent set")
        _, d = _recip_closed_sigma(cfg, base, P)
        if any(boundary_clause_fires(cfg, a) for a in base):
            flags.append("boundary-clause")
        return _Plan(d, t, cfg.n - len(d), "n - card(N^sigma)", flags)

    if kind == "custom-delta":
        raw = P.get("delta_set")
        if raw is None:
            raise PreconditionError("missing parameter 'delta_set'")
        if isinstance(raw, str):
            d0 = DeltaSet.from_json(cfg, raw)
        else:
            d0 = DeltaSet(cfg, [[a] if isinstance(a, int) else a for a in raw])
        if len(d0) == 0:
            raise PreconditionError("empty exponent set")
        d = closure(cfg, d0)
        if len(d) != len(d0):
            flags.append("orbit-closure-added")
        if not is_reciprocal_closed(cfg, d):
            flags.append("not-reciprocal-closed")
        return _Plan(d, int(P.get("designed", 1)), None, "", flags)

    raise PreconditionError(f"unknown kind {kind!r}")  # pragma: no cover


def construct(req: ConstructionRequest, distance: str = "auto", budget: int | None = None,
              w_max: int | None = None, emit_matrix: bool = False,
              search_budget: int | None = None) -> CodeReport:
    """Build the code described by ``req`` and report its parameters."""
    if distance not in ("auto", "designed", "off"):
        raise PreconditionError(f"distance mode {distance!r}")
    budget = budget_from_env() if budget is None else budget
    try:
        pl = plan(req)
    except ConfigError as exc:
        raise PreconditionError(str(exc)) from None
    cfg = req.config
    flags = list(pl.flags)
    if pl.over_q:
        E = build_evaluation_code(cfg, pl.delta)
    else:
        E = subfield_subcode(cfg, pl.delta)
    n = E.n
    k = n - E.k
    extra: dict = {}

    hull_method = "both" if n * max(k, 1) <= INTERSECTION_LIMIT else "gram"
    if hull_method == "gram":
        flags.append("hull-gram-only")
    try:
        hull = hull_dimension(E, hull_method)
    except HullDisagreement:
        raise
    if hull:
        flags.append("hull-nonzero")

    if pl.expected_k is None:
        match = {"status": "none", "formula": pl.formula, "expected": None, "got": k}
    else:
        match = {"status": "match" if pl.expected_k == k else "mismatch",
                 "formula": pl.formula, "expected": pl.expected_k, "got": k}

    F = E.field
    C = None
    if distance == "off":
        dres = DistanceResult("interval", pl.designed, None, "designed-only", 0,
                              notes=["distance computation disabled"])
    elif distance == "designed":
        dres = DistanceResult("interval", pl.designed, None, "designed-only", 0)
    else:
        if F.q ** k <= budget:
            C = dual_code(E)
            dres = distance_report(C, pl.designed, budget, w_max, search_budget)
        elif F.r == 1 and F.p in (2, 3):
            dres = distance_report(None, pl.designed, budget, w_max, search_budget, H=E.generator)
        else:
            dres = DistanceResult("interval", pl.designed, None, "designed-only", 0)
    if dres.status == "interval" and dres.upper is None:
        dres.upper = n - k + 1 if k else None
    if dres.contradiction:
        flags.append("distance-below-designed")
    if pl.over_q and distance == "auto" and F.q ** E.k <= budget:
        e_res = distance_report(E, 1, budget)
        extra["E"] = {"n": E.n, "k": E.k, "distance": e_res.to_dict()}

    gen = None
    if emit_matrix:
        if C is None:
            C = dual_code(E)
        gen = format_matrix(C.generator)
    return CodeReport(
        field={"p": F.p, "r": F.r},
        n=n, k=k, d_designed=pl.designed, hull_dim=hull, lcd=hull == 0,
        dims_match_formula=match, provenance=req.to_dict(), distance=dres.to_dict(),
        delta_size=len(pl.delta), flags=flags, hull_method=hull_method,
        extra=extra, generator=gen,
    )
