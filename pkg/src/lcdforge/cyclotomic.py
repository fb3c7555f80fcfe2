"""Orbits of exponents under multiplication by p.

For a coordinate in J the exponent lives in Z/(N_j - 1) and ``x -> p x``.
Outside J the value 0 is a standalone fixed point and 1..N_j-1 represent
Z/(N_j - 1) with N_j - 1 standing for the zero class, so
``x -> ((p x - 1) mod (N_j - 1)) + 1``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .variety import DeltaSet, Exponent, VarietyConfig, ConfigError, swap_reciprocal


def times_p(cfg: VarietyConfig, x: Sequence[int], k: int = 1) -> Exponent:
    out = []
    pk = cfg.p ** k
    for j, v in enumerate(x):
        M = cfg.M[j]
        if cfg.in_J(j):
            out.append((v * pk) % M)
        elif v == 0:
            out.append(0)
        else:
            out.append((v * pk - 1) % M + 1)
    return tuple(out)


def canonical_representative(elements: Iterable[Sequence[int]]) -> Exponent:
    """Coordinatewise-minimum rule: minimise coordinate 1, then 2 among those, ..."""
    pool = [tuple(e) for e in elements]
    m = len(pool[0])
    for j in range(m):
        best = min(e[j] for e in pool)
        pool = [e for e in pool if e[j] == best]
    return pool[0]


@dataclass(frozen=True)
class CyclotomicSet:
    representative: Exponent
    elements: tuple[Exponent, ...]
    symmetric: bool
    reciprocal_representative: Exponent

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.elements

    def to_dict(self) -> dict:
        return {
            "rep": list(self.representative),
            "elements": [list(e) for e in self.elements],
            "cardinality": self.cardinality,
            "symmetric": self.symmetric,
            "reciprocal_rep": list(self.reciprocal_representative),
        }


def _raw_orbit(cfg: VarietyConfig, x: Exponent) -> tuple[Exponent, ...]:
    out = [x]
    y = times_p(cfg, x)
    while y != x:
        out.append(y)
        y = times_p(cfg, y)
    return tuple(out)


def orbit(cfg: VarietyConfig, x: Sequence[int]) -> CyclotomicSet:
    x = cfg.check_exponent(x)
    els = _raw_orbit(cfg, x)
    rep = canonical_representative(els)
    start = els.index(rep)
    els = els[start:] + els[:start]
    rho = swap_reciprocal(cfg, rep)
    sym = rho in els
    rrep = rep if sym else canonical_representative(_raw_orbit(cfg, rho))
    return CyclotomicSet(rep, els, sym, rrep)


def reciprocal_orbit(cfg: VarietyConfig, S: CyclotomicSet) -> CyclotomicSet:
    return orbit(cfg, S.reciprocal_representative)


@dataclass(frozen=True)
class CyclotomicAtlas:
    cfg: VarietyConfig
    sets: tuple[CyclotomicSet, ...]
    index: dict = field(repr=False, compare=False)

    @property
    def representatives(self) -> list[Exponent]:
        return [S.representative for S in self.sets]

    @property
    def A1(self) -> list[Exponent]:
        return [S.representative for S in self.sets
                if S.symmetric or S.representative < S.reciprocal_representative]

    @property
    def A2(self) -> list[Exponent]:
        return [S.representative for S in self.sets
                if not S.symmetric and S.representative > S.reciprocal_representative]

    def set_of(self, x: Sequence[int]) -> CyclotomicSet:
        return self.sets[self.index[tuple(x)]]

    def __getitem__(self, rep) -> CyclotomicSet:
        S = self.set_of(rep)
        if S.representative != tuple(rep):
            raise KeyError(f"{tuple(rep)} is not a representative")
        return S

    def to_dict(self) -> dict:
        return {
            "config": self.cfg.to_dict(),
            "sets": [S.to_dict() for S in self.sets],
            "A1": [list(a) for a in self.A1],
            "A2": [list(a) for a in self.A2],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _perm(cfg: VarietyConfig) -> np.ndarray:
    """Multiplication by p as a permutation of flat exponent indices."""
    grids = np.meshgrid(*(np.arange(s) for s in cfg.shape), indexing="ij")
    img = []
    for j, g in enumerate(grids):
        M = cfg.M[j]
        if cfg.in_J(j):
            img.append((g * cfg.p) % M)
        else:
            img.append(np.where(g == 0, 0, (g * cfg.p - 1) % M + 1))
    return np.ravel_multi_index(tuple(img), cfg.shape).reshape(-1)


@lru_cache(maxsize=32)
def atlas(cfg: VarietyConfig) -> CyclotomicAtlas:
    perm = _perm(cfg)
    size = perm.size
    seen = np.zeros(size, dtype=bool)
    raw = []
    # flat index order is lexicographic, so the first unseen index of each
    # orbit is its lexicographic minimum
    for start in range(size):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = int(perm[start])
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = int(perm[nxt])
        raw.append(cyc)
    shape = cfg.shape
    index: dict[Exponent, int] = {}
    sets: list[CyclotomicSet] = []
    orbit_of = np.empty(size, dtype=np.int64)
    for i, cyc in enumerate(raw):
        orbit_of[cyc] = i
    for i, cyc in enumerate(raw):
        els = tuple(tuple(int(v) for v in np.unravel_index(c, shape)) for c in cyc)
        rep = els[0]
        rho = swap_reciprocal(cfg, rep)
        other = int(orbit_of[np.ravel_multi_index(rho, shape)])
        rrep = tuple(int(v) for v in np.unravel_index(raw[other][0], shape))
        sets.append(CyclotomicSet(rep, els, other == i, rrep))
        for e in els:
            index[e] = i
    return CyclotomicAtlas(cfg, tuple(sets), index)


def closure(cfg: VarietyConfig, delta: DeltaSet | Iterable) -> DeltaSet:
    """Union of the orbits meeting ``delta``."""
    A = atlas(cfg)
    reps: list[int] = []
    seen = set()
    for a in delta:
        i = A.index[cfg.check_exponent(a)]
        if i not in seen:
            seen.add(i)
            reps.append(i)
    out = []
    for i in reps:
        out.extend(A.sets[i].elements)
    return DeltaSet(cfg, out)


def is_orbit_closed(cfg: VarietyConfig, delta: DeltaSet | Iterable) -> bool:
    s = set(tuple(a) for a in delta)
    return all(times_p(cfg, a) in s for a in s)


def orbits_in(cfg: VarietyConfig, delta: DeltaSet | Iterable) -> list[CyclotomicSet]:
    """Orbits fully contained in ``delta``, ordered by representative."""
    A = atlas(cfg)
    s = set(tuple(a) for a in delta)
    ids = sorted({A.index[a] for a in s})
    return [A.sets[i] for i in ids if all(e in s for e in A.sets[i].elements)]


# --- univariate facts ----------------------------------------------------------

def is_symmetric_univariate(N: int, p: int, r: int, a: int) -> bool:
    """Symmetry of the orbit of ``a`` in Z/(N-1) without computing orbits.

    The orbit is symmetric iff ``N-1-a = a p^j`` in Z/(N-1) for some
    ``0 <= j < r``, i.e. ``a (p^j + 1) = 0 mod N-1``.
    """
    M = N - 1
    if not 0 < a <= N - 2:
        raise ConfigError(f"a={a} outside 1..{N - 2}")
    return any(a * (p**j + 1) % M == 0 for j in range(r))


def symmetric_equality_form(N: int, p: int, r: int, a: int) -> bool:
    """The integer-equality reading ``a = (N-1)/(p^j+1)`` with ``p^j+1 | N-1``.

    Only sufficient: e.g. N=81, p=3, a=16 is symmetric but of no such form.
    """
    M = N - 1
    if not 0 < a <= N - 2:
        raise ConfigError(f"a={a} outside 1..{N - 2}")
    return any(M % (p**j + 1) == 0 and a == M // (p**j + 1) for j in range(r))


def univariate_orbit_sizes(N: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Orbit size and canonical representative of each residue mod N-1."""
    M = N - 1
    if math.gcd(p, M) != 1:
        raise ConfigError(f"p={p} is not invertible mod N-1={M}")
    x = np.arange(M, dtype=np.int64)
    size = np.ones(M, dtype=np.int64)
    rep = x.copy()
    y = (x * p) % M
    while True:
        active = y != x
        if not active.any():
            break
        size += active
        rep = np.where(active, np.minimum(rep, y), rep)
        y = np.where(active, (y * p) % M, y)
    return size, rep


@dataclass
class WindowReport:
    N: int
    p: int
    r: int
    checks: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def to_dict(self) -> dict:
        return {"N": self.N, "p": self.p, "r": self.r, "checks": self.checks, "pass": self.ok}


def cardinality_window_checks(N: int, p: int, r: int) -> WindowReport:
    """Check the orbit-size, distinctness and asymmetry windows against brute force."""
    q = p**r
    M = N - 1
    if (q - 1) % M:
        raise ConfigError(f"N-1={M} does not divide {q - 1}")
    if not p ** (r // 2) < M <= q - 1:
        raise ConfigError(f"need p^floor(r/2) < N-1 <= p^r-1, got N-1={M}")
    size, rep = univariate_orbit_sizes(N, p)
    sym = np.zeros(M, dtype=bool)
    sym[0] = True
    for a in range(1, M):
        sym[a] = rep[a] == rep[(M - a) % M]
    report = WindowReport(N, p, r)

    # orbit sizes equal r below the window
    bound = M * p ** math.ceil(r / 2) // (q - 1)
    bad = [a for a in range(1, min(bound, M - 1) + 1) if size[a] != r]
    report.checks["orbit-size-window"] = {"bound": bound, "pass": not bad, "counterexamples": bad[:10]}

    # distinct orbits for non-multiples of p below the window
    top = min((M * p ** math.ceil(r / 2)) // (q - 1) - 1, N - 2)
    xs = [x for x in range(1, top + 1) if x % p]
    reps = [int(rep[x]) for x in xs]
    dup = sorted({x for x, rx in zip(xs, reps) if reps.count(rx) > 1})
    report.checks["distinct-window"] = {"bound": top, "pass": not dup, "counterexamples": dup[:10]}

    # asymmetry window
    syms = [a for a in range(1, M) if sym[a]]
    if r % 2:
        expect = [M // 2] if (p == 3 and M % 2 == 0) else []
        expect_reps = sorted({int(rep[a]) for a in expect})
        got = sorted({int(rep[a]) for a in syms})
        ok = got == expect_reps
        report.checks["asymmetry-window"] = {"rule": "odd r", "pass": ok,
                                             "counterexamples": [] if ok else got[:10]}
    else:
        lim = M / (p ** (r // 2) + 1)
        bad = [a for a in syms if a < lim]
        report.checks["asymmetry-window"] = {"rule": "even r", "bound": lim, "pass": not bad,
                                             "counterexamples": bad[:10]}

    # closed forms for symmetric orbits, checked on representatives
    reps_all = sorted({int(x) for x in rep[1:]})
    bad = [a for a in reps_all if bool(sym[a]) != is_symmetric_univariate(N, p, r, a)]
    report.checks["symmetric-congruence"] = {"pass": not bad, "counterexamples": bad[:10]}
    bad = [a for a in reps_all if bool(sym[a]) != symmetric_equality_form(N, p, r, a)]
    report.checks["symmetric-equality"] = {"pass": not bad, "counterexamples": bad[:10]}
    return report
