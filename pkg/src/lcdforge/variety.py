"""J-affine variety codes: points, monomial evaluation and exponent sets.

Exponents are plain tuples of ints.  ``J`` is stored 1-based, matching the
usual notation; internally ``cfg.eps[j]`` (0-based) says whether coordinate
``j`` is restricted to nonzero values.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .field import GF, build_field
from .matrix import LinearCode, Matrix

Exponent = tuple[int, ...]


class ConfigError(ValueError):
    """A variety configuration or exponent violates its preconditions."""


@dataclass(frozen=True)
class VarietyConfig:
    p: int
    r: int
    N: tuple[int, ...]
    J: tuple[int, ...] = ()

    def __post_init__(self):
        N = tuple(int(x) for x in self.N)
        J = tuple(sorted(set(int(j) for j in self.J)))
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "J", J)
        if not N:
            raise ConfigError("at least one variable is required")
        q = self.p ** self.r
        for j, Nj in enumerate(N, 1):
            if Nj < 2:
                raise ConfigError(f"N_{j}={Nj} must be > 1")
            if (q - 1) % (Nj - 1):
                raise ConfigError(f"N_{j}-1={Nj - 1} does not divide q-1={q - 1}")
        if any(not 1 <= j <= len(N) for j in J):
            raise ConfigError(f"J={list(J)} not inside 1..{len(N)}")
        build_field(self.p, self.r)  # validates p and r

    @property
    def field(self) -> GF:
        return build_field(self.p, self.r)

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def m(self) -> int:
        return len(self.N)

    @cached_property
    def eps(self) -> tuple[int, ...]:
        return tuple(1 if j + 1 in self.J else 0 for j in range(self.m))

    @cached_property
    def T(self) -> tuple[int, ...]:
        return tuple(Nj - 1 - e for Nj, e in zip(self.N, self.eps))

    @cached_property
    def M(self) -> tuple[int, ...]:
        """Moduli ``N_j - 1`` of the exponent residue rings."""
        return tuple(Nj - 1 for Nj in self.N)

    @cached_property
    def shape(self) -> tuple[int, ...]:
        return tuple(t + 1 for t in self.T)

    @property
    def n(self) -> int:
        return math.prod(self.shape)

    def in_J(self, j: int) -> bool:
        return bool(self.eps[j])

    def check_exponent(self, a: Sequence[int]) -> Exponent:
        a = tuple(int(x) for x in a)
        if len(a) != self.m:
            raise ConfigError(f"exponent {a} has {len(a)} coordinates, expected {self.m}")
        for j, (x, t) in enumerate(zip(a, self.T), 1):
            if not 0 <= x <= t:
                raise ConfigError(f"exponent {a}: coordinate {j} outside 0..{t}")
        return a

    def exponents(self) -> Iterator[Exponent]:
        return itertools.product(*(range(s) for s in self.shape))

    def to_dict(self) -> dict:
        return {"p": self.p, "r": self.r, "N": list(self.N), "J": list(self.J)}

    @classmethod
    def from_dict(cls, d: dict) -> "VarietyConfig":
        return cls(int(d["p"]), int(d["r"]), tuple(d["N"]), tuple(d.get("J", ())))

    def __str__(self) -> str:
        return f"p={self.p} r={self.r} N={list(self.N)} J={list(self.J)}"


# --- exponent sets -------------------------------------------------------------

class DeltaSet:
    """Ordered duplicate-free set of exponents attached to a config."""

    __slots__ = ("cfg", "_items", "_set")

    def __init__(self, cfg: VarietyConfig, exponents: Iterable[Sequence[int]] = ()):
        self.cfg = cfg
        items: list[Exponent] = []
        seen: set[Exponent] = set()
        for a in exponents:
            a = cfg.check_exponent(a)
            if a not in seen:
                seen.add(a)
                items.append(a)
        self._items = tuple(items)
        self._set = frozenset(seen)

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, a) -> bool:
        return tuple(a) in self._set

    def __eq__(self, other) -> bool:
        if isinstance(other, DeltaSet):
            return self.cfg == other.cfg and self._set == other._set
        return NotImplemented

    def __hash__(self):
        return hash((self.cfg, self._set))

    def __or__(self, other: "DeltaSet") -> "DeltaSet":
        return DeltaSet(self.cfg, itertools.chain(self, other))

    def __le__(self, other: "DeltaSet") -> bool:
        return self._set <= other._set

    def sorted(self) -> "DeltaSet":
        return DeltaSet(self.cfg, sorted(self._items))

    @property
    def items(self) -> tuple[Exponent, ...]:
        return self._items

    def complement(self) -> "DeltaSet":
        return DeltaSet(self.cfg, (a for a in self.cfg.exponents() if a not in self._set))

    def to_json(self) -> str:
        return json.dumps([list(a) for a in self._items])

    @classmethod
    def from_json(cls, cfg: VarietyConfig, text: str) -> "DeltaSet":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ConfigError("exponent set must be a JSON array of integer arrays")
        out = []
        for a in data:
            if isinstance(a, int):
                a = [a]
            if not isinstance(a, list) or not all(isinstance(x, int) for x in a):
                raise ConfigError(f"bad exponent {a!r}")
            out.append(a)
        return cls(cfg, out)

    def __repr__(self) -> str:
        return f"DeltaSet({list(self._items)})"


# --- points and evaluation -----------------------------------------------------

@dataclass(frozen=True)
class PointSet:
    """Points of the variety in odometer order (last coordinate fastest).

    ``logs[i, j]`` is the discrete log of coordinate ``j`` of point ``i``
    (known by construction, so no table lookup is needed) or -1 for zero.
    """

    cfg: VarietyConfig
    values: np.ndarray
    logs: np.ndarray

    def __len__(self) -> int:
        return self.values.shape[0]

    def as_elements(self) -> list[tuple]:
        F = self.cfg.field
        return [tuple(F(int(v)) for v in row) for row in self.values]


def coordinate_logs(cfg: VarietyConfig, j: int) -> list[int]:
    """Log list of coordinate ``j``'s value set, -1 standing for zero."""
    step = (cfg.q - 1) // cfg.M[j]
    logs = [e * step for e in range(cfg.M[j])]
    return logs if cfg.in_J(j) else [-1] + logs


def enumerate_points(cfg: VarietyConfig) -> PointSet:
    return _points(cfg)


_POINT_CACHE: dict[VarietyConfig, PointSet] = {}


def _points(cfg: VarietyConfig) -> PointSet:
    ps = _POINT_CACHE.get(cfg)
    if ps is not None:
        return ps
    F = cfg.field
    per = [np.array(coordinate_logs(cfg, j), dtype=np.int64) for j in range(cfg.m)]
    grids = np.meshgrid(*per, indexing="ij")
    logs = np.stack([g.reshape(-1) for g in grids], axis=1)
    values = np.where(logs < 0, 0, F.exp_arr(np.maximum(logs, 0)))
    ps = PointSet(cfg, values, logs)
    if len(_POINT_CACHE) > 64:
        _POINT_CACHE.clear()
    _POINT_CACHE[cfg] = ps
    return ps


def monomial_logs(cfg: VarietyConfig, exps: np.ndarray) -> np.ndarray:
    """Logs of ``ev(X^a)`` for each row ``a`` of ``exps``; -1 marks a zero entry.

    Result has shape ``(len(exps), n)``.
    """
    pts = _points(cfg)
    exps = np.asarray(exps, dtype=np.int64).reshape(-1, cfg.m)
    zero = pts.logs < 0
    L = np.where(zero, 0, pts.logs)
    out = (exps @ L.T) % (cfg.q - 1)
    # 0^0 = 1, 0^a = 0 for a > 0
    vanish = (exps[:, None, :] > 0) & zero[None, :, :]
    return np.where(vanish.any(axis=2), -1, out)


def evaluation_matrix(cfg: VarietyConfig, exps: Iterable[Sequence[int]]) -> np.ndarray:
    exps = np.array([cfg.check_exponent(a) for a in exps], dtype=np.int64).reshape(-1, cfg.m)
    lg = monomial_logs(cfg, exps)
    F = cfg.field
    return np.where(lg < 0, 0, F.exp_arr(np.maximum(lg, 0)))


def evaluate_monomial(cfg: VarietyConfig, a: Sequence[int]) -> np.ndarray:
    return evaluation_matrix(cfg, [a])[0]


def build_evaluation_code(cfg: VarietyConfig, delta: DeltaSet | Iterable[Sequence[int]]) -> LinearCode:
    exps = list(delta)
    if not exps:
        raise ConfigError("the exponent set is empty")
    G = evaluation_matrix(cfg, exps)
    return LinearCode(cfg.field, Matrix(cfg.field, G),
                      {"kind": "evaluation", "config": cfg.to_dict(), "delta": [list(a) for a in exps]})


# --- orthogonality and reciprocals ---------------------------------------------

def predict_inner_nonzero(cfg: VarietyConfig, a: Sequence[int], b: Sequence[int]) -> bool:
    """Closed-form test for ``ev(X^a) . ev(X^b) != 0``."""
    a = cfg.check_exponent(a)
    b = cfg.check_exponent(b)
    for j in range(cfg.m):
        s, M = a[j] + b[j], cfg.M[j]
        if cfg.in_J(j):
            if s % M:
                return False
        elif s > 0:
            if s % M:
                return False
        elif cfg.N[j] % cfg.p == 0:
            return False
    return True


def _flip(cfg: VarietyConfig, j: int, x: int) -> int:
    M = cfg.M[j]
    return (M - x) % M if cfg.in_J(j) else M - x


def boundary_coords(cfg: VarietyConfig, a: Sequence[int]) -> list[int]:
    """Coordinates outside J sitting at 0 or N_j - 1 (0-based)."""
    return [j for j in range(cfg.m) if not cfg.in_J(j) and a[j] in (0, cfg.M[j])]


def swap_reciprocal(cfg: VarietyConfig, a: Sequence[int]) -> Exponent:
    """The reciprocal exchanging 0 and N_j - 1 outside J and flipping the rest."""
    out = []
    for j, x in enumerate(a):
        if not cfg.in_J(j) and x in (0, cfg.M[j]):
            out.append(cfg.M[j] - x)
        else:
            out.append(_flip(cfg, j, x))
    return tuple(out)


def boundary_clause_fires(cfg: VarietyConfig, a: Sequence[int]) -> bool:
    """True when the reciprocal set mixes boundary coordinates with a J part."""
    a = tuple(a)
    return bool(boundary_coords(cfg, a)) and any(cfg.in_J(j) for j in range(cfg.m))


def reciprocal_set(cfg: VarietyConfig, a: Sequence[int], restricted=False) -> frozenset[Exponent]:
    """Reciprocal set of ``a``.

    ``restricted=False`` gives the full set: the connected component of ``a``
    in the graph of nonzero inner products between monomial evaluations.
    Boundary coordinates outside J range over {0, N_j - 1} and the remaining
    coordinates are either all kept or all flipped.

    ``restricted="keep"`` returns ``{a, b}`` where ``b`` keeps every boundary
    coordinate that can pair with itself (``N_j - 1``, or ``0`` when
    ``p`` does not divide ``N_j``), moves an unpairable ``0`` to ``N_j - 1`` and
    flips the rest.  ``restricted="swap"`` returns ``{a, swap_reciprocal(a)}``.
    Any other truthy value is taken as an explicit subset and validated.
    """
    a = cfg.check_exponent(a)
    B = boundary_coords(cfg, a)
    inner = tuple(_flip(cfg, j, x) if j not in B else x for j, x in enumerate(a))
    if restricted is False or restricted is None:
        if not B:
            return frozenset({a, inner})
        out = set()
        for bits in itertools.product(*((0, cfg.M[j]) for j in B)):
            for base in (a, inner):
                v = list(base)
                for j, x in zip(B, bits):
                    v[j] = x
                out.add(tuple(v))
        return frozenset(out)
    if restricted == "swap":
        return frozenset({a, swap_reciprocal(cfg, a)})
    if restricted == "keep":
        b = list(inner)
        for j in B:
            selfpair = a[j] == cfg.M[j] or (a[j] == 0 and cfg.N[j] % cfg.p)
            b[j] = a[j] if selfpair else cfg.M[j]
        return frozenset({a, tuple(b)})
    chosen = frozenset(cfg.check_exponent(b) for b in restricted)
    full = reciprocal_set(cfg, a)
    if a not in chosen or not chosen <= full:
        raise ConfigError(f"restricted set {sorted(chosen)} is not a subset of the reciprocals of {a} containing it")
    return chosen


def reciprocal_graph_component(cfg: VarietyConfig, a: Sequence[int]) -> frozenset[Exponent]:
    """Brute-force component of ``a`` under :func:`predict_inner_nonzero`."""
    a = cfg.check_exponent(a)
    allx = list(cfg.exponents())
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in allx:
            if y not in seen and predict_inner_nonzero(cfg, x, y):
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def close_under_reciprocals(cfg: VarietyConfig, delta: DeltaSet | Iterable, restricted=False) -> DeltaSet:
    out = list(delta)
    for a in list(out):
        out.extend(sorted(reciprocal_set(cfg, a, restricted)))
    return DeltaSet(cfg, out)


def is_reciprocal_closed(cfg: VarietyConfig, delta: DeltaSet | Iterable, restricted=False) -> bool:
    s = set(tuple(a) for a in delta)
    return all(reciprocal_set(cfg, a, restricted) <= s for a in s)


# --- bounds and exponent-set constructors ------------------------------------

def footprint_bound(cfg: VarietyConfig, a: Sequence[int]) -> int:
    a = cfg.check_exponent(a)
    return math.prod(Nj - e - x for Nj, e, x in zip(cfg.N, cfg.eps, a))


def box_delta(cfg: VarietyConfig, alpha: Sequence[int]) -> DeltaSet:
    """Box of half-widths ``alpha`` centred at ``T_j/2`` (even) or ``(T_j-1)/2`` (odd).

    The box is not closed under reciprocals in general; callers wanting an
    LCD code close it with :func:`close_under_reciprocals`.
    """
    if len(cfg.J) != cfg.m:
        raise ConfigError("box sets need J = {1..m}")
    alpha = [int(x) for x in alpha]
    if len(alpha) != cfg.m:
        raise ConfigError(f"alpha needs {cfg.m} entries")
    ranges = []
    for j, (al, T) in enumerate(zip(alpha, cfg.T), 1):
        if al < 0:
            raise ConfigError(f"alpha_{j} must be >= 0")
        if T % 2 == 0:
            if not al < T / 2:
                raise ConfigError(f"alpha_{j}={al} must be < T_{j}/2={T // 2}")
            c = T // 2
        else:
            if al > (T - 1) // 2:
                raise ConfigError(f"alpha_{j}={al} must be <= (T_{j}-1)/2={(T - 1) // 2}")
            c = (T - 1) // 2
        ranges.append(range(c - al, c + al + 1))
    return DeltaSet(cfg, itertools.product(*ranges))


def normalize_shifted(cfg: VarietyConfig, b: Sequence[int]) -> Exponent:
    """Map an exponent of the shifted domain (J coordinates in 1..N_j-1) into H_J."""
    out = []
    for j, x in enumerate(b):
        if cfg.in_J(j):
            if not 1 <= x <= cfg.M[j]:
                raise ConfigError(f"shifted coordinate {j + 1} must lie in 1..{cfg.M[j]}")
            out.append(x % cfg.M[j])
        else:
            out.append(x)
    return cfg.check_exponent(out)


def hyperbolic_set(cfg: VarietyConfig, t: int, shifted: bool = False) -> DeltaSet:
    """``{b : prod(b_j + 1 - eps_j) < t}`` or, shifted, ``{c in H_J : prod(c_j + 1) < t}``."""
    if not 1 <= t <= cfg.n:
        raise ConfigError(f"t={t} outside 1..{cfg.n}")
    out = []
    if shifted:
        for c in cfg.exponents():
            if math.prod(x + 1 for x in c) < t:
                out.append(c)
        return DeltaSet(cfg, out)
    ranges = [range(e, Nj) for e, Nj in zip(cfg.eps, cfg.N)]
    for b in itertools.product(*ranges):
        if math.prod(x + 1 - e for x, e in zip(b, cfg.eps)) < t:
            out.append(normalize_shifted(cfg, b))
    return DeltaSet(cfg, out)


def dot_products(cfg: VarietyConfig, exps: Sequence[Sequence[int]]) -> np.ndarray:
    """Gram matrix of the evaluation vectors of ``exps`` over GF(q)."""
    from .matrix import matmul
    G = evaluation_matrix(cfg, exps)
    return matmul(cfg.field, G, G.T)
