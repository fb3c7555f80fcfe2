"""Minimum distance: exhaustive enumeration and windowed low-weight search.

Vectors over GF(2) and GF(3) are packed into uint64 words.  A GF(2) vector is
one bit plane; a GF(3) vector is two planes (positions equal to 1, positions
equal to 2).  Codes over GF(p^r) are enumerated through their GF(p)
expansion, one digit plane per coordinate of the field basis.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .matrix import LinearCode, Matrix, matmul

DEFAULT_BUDGET = 2**30
SEARCH_BUDGET = 2**25


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    val = os.environ.get("LCDFORGE_BUDGET")
    if not val:
        return default
    try:
        return int(float(val))
    except ValueError:
        raise ValueError(f"LCDFORGE_BUDGET={val!r} is not a number") from None


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class DistanceResult:
    status: str                      # "exact" | "interval"
    lower: int
    upper: int | None = None
    method: str = "designed-only"    # enumeration | low-weight-search | designed-only
    certified_window: int = 0
    witness: list[tuple[int, int]] | None = None
    contradiction: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def d(self) -> int | None:
        return self.lower if self.status == "exact" else None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "d": self.d,
            "lower": self.lower,
            "upper": self.upper,
            "method": self.method,
            "certified_window": self.certified_window,
            "witness": None if self.witness is None else [[i, v] for i, v in self.witness],
            "contradiction": self.contradiction,
            "notes": list(self.notes),
        }


# --- packing -------------------------------------------------------------------

def _words(n: int) -> int:
    return (n + 63) // 64


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a (count, n) 0/1 array into (count, words) uint64, bit i of word w = column 64w+i."""
    bits = np.asarray(bits, dtype=np.uint8)
    count, n = bits.shape
    W = _words(n)
    padded = np.zeros((count, W * 64), dtype=np.uint8)
    padded[:, :n] = bits
    by = np.packbits(padded.reshape(count, W, 8, 8)[:, :, :, ::-1], axis=3).reshape(count, W, 8)
    return by.view("<u8").reshape(count, W).copy()


def unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    count, W = words.shape
    by = words.view(np.uint8).reshape(count, W, 8, 1)
    bits = np.unpackbits(by, axis=3)[:, :, :, ::-1].reshape(count, W * 64)
    return bits[:, :n]


class _Packed:
    """Vector arithmetic on packed GF(2)/GF(3) planes; shape (..., planes, words)."""

    def __init__(self, p: int):
        if p not in (2, 3):
            raise ValueError("packed arithmetic supports p = 2, 3")
        self.p = p
        self.planes = 1 if p == 2 else 2

    def pack(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.asarray(vecs) % self.p
        if self.p == 2:
            return pack_bits(vecs)[:, None, :]
        return np.stack([pack_bits(vecs == 1), pack_bits(vecs == 2)], axis=1)

    def unpack(self, x: np.ndarray, n: int) -> np.ndarray:
        if self.p == 2:
            return unpack_bits(x[:, 0, :], n).astype(np.int64)
        return unpack_bits(x[:, 0, :], n).astype(np.int64) + 2 * unpack_bits(x[:, 1, :], n).astype(np.int64)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a ^ b
        a1, a2 = a[..., 0, :], a[..., 1, :]
        b1, b2 = b[..., 0, :], b[..., 1, :]
        na = ~(a1 | a2)
        nb = ~(b1 | b2)
        c1 = (a1 & nb) | (na & b1) | (a2 & b2)
        c2 = (a2 & nb) | (na & b2) | (a1 & b1)
        return np.stack([c1, c2], axis=-2)

    def neg(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a
        return a[..., ::-1, :]

    def scale(self, a: np.ndarray, c: int) -> np.ndarray:
        c %= self.p
        if c == 0:
            return np.zeros_like(a)
        return a if c == 1 else self.neg(a)

    def support(self, a: np.ndarray) -> np.ndarray:
        """OR of the planes: bit set where the symbol is nonzero."""
        if self.p == 2:
            return a[..., 0, :]
        return a[..., 0, :] | a[..., 1, :]


def _popcount_rows(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


# --- enumeration ---------------------------------------------------------------

def _expand_generator(C: LinearCode) -> tuple[np.ndarray, int, int]:
    """GF(p) generator of the expansion: rows ``alpha^i g``, columns digit-major.

    Returns ``(G, p, r)`` with ``G`` of shape (r*k, r*n); a symbol is nonzero
    iff any of its r digit columns is.
    """
    F = C.field
    G = C.generator.data
    if F.r == 1:
        return G.copy(), F.p, 1
    rows = []
    for g in G:
        for i in range(F.r):
            scaled = F.mul_arr(np.full_like(g, F.p**i), g)   # alpha^i = encoding p^i
            d = F.digits_array(scaled)                        # (n, r)
            rows.append(d.T.reshape(-1))                      # digit-major
    return np.array(rows, dtype=np.int64), F.p, F.r


def _span_table(P: _Packed, rows: np.ndarray) -> np.ndarray:
    """All GF(p)-combinations of ``rows`` (packed), in odometer order (last row fastest)."""
    table = np.zeros((1,) + rows.shape[1:], dtype=np.uint64)
    for g in rows:
        parts = [table]
        cur = table
        for _ in range(P.p - 1):
            cur = P.add(cur, g[None])
            parts.append(cur)
        table = np.stack(parts, axis=1).reshape((-1,) + rows.shape[1:])
    return table


def _support_words(P: _Packed, x: np.ndarray, r: int, W: int) -> np.ndarray:
    s = P.support(x)                         # (..., r*W)
    s = s.reshape(s.shape[:-1] + (r, W))
    return np.bitwise_or.reduce(s, axis=-2)


def _pack_expanded(P: _Packed, G: np.ndarray, r: int, n: int) -> np.ndarray:
    """Pack each digit plane separately so symbol i sits at bit i of every plane."""
    parts = [P.pack(G[:, d * n:(d + 1) * n]) for d in range(r)]   # each (rows, planes, W)
    return np.concatenate(parts, axis=-1)                          # (rows, planes, r*W)


def _messages(q: int, k: int) -> np.ndarray:
    return np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64).reshape(q**k, k)


def _normalised_span(F, rows: np.ndarray) -> np.ndarray:
    """Combinations of ``rows`` whose first nonzero coefficient is 1."""
    k = rows.shape[0]
    coeffs = []
    for i in range(k):
        tail = _messages(F.q, k - 1 - i)
        head = np.zeros((tail.shape[0], i + 1), dtype=np.int64)
        head[:, i] = 1
        coeffs.append(np.concatenate([head, tail], axis=1))
    if not coeffs:
        return np.zeros((0, rows.shape[1]), dtype=np.int64)
    return matmul(F, np.concatenate(coeffs), rows)


def _full_span(F, rows: np.ndarray) -> np.ndarray:
    k = rows.shape[0]
    if not k:
        return np.zeros((1, rows.shape[1]), dtype=np.int64)
    return matmul(F, _messages(F.q, k), rows)


def _direct_enumeration(C: LinearCode) -> tuple[int, np.ndarray]:
    """Symbol-level enumeration up to scalars, used for all fields but GF(2) and GF(3).

    Every nonzero codeword is a multiple of one whose message has leading
    coefficient 1.  Such messages are (normalised B part, any A part) or
    (zero B part, normalised A part); ``b + a`` vanishes where ``a = -b``.
    """
    F = C.field
    G = C.generator.data
    k, n = G.shape
    kb = (k + 1) // 2
    Bn = _normalised_span(F, G[:kb])
    A = _full_span(F, G[kb:])
    An = _normalised_span(F, G[kb:])
    best, word = n + 1, None
    if An.shape[0]:
        wts = (An != 0).sum(axis=1)
        i = int(np.argmin(wts))
        best, word = int(wts[i]), An[i]
    negB = F.neg_arr(Bn)
    A8 = A.astype(np.int16)
    chunk = max(1, (1 << 22) // max(1, A.shape[0] * n))
    for s in range(0, Bn.shape[0], chunk):
        nb = negB[s:s + chunk].astype(np.int16)
        wts = (A8[None, :, :] != nb[:, None, :]).sum(axis=2)
        idx = int(np.argmin(wts))
        if wts.flat[idx] < best:
            bi, ai = divmod(idx, A.shape[0])
            best = int(wts.flat[idx])
            word = F.add_arr(Bn[s + bi], A[ai])
    return best, word


def exact_distance_enumeration(C: LinearCode, budget: int | None = None) -> DistanceResult:
    """Minimum weight over all nonzero codewords; needs ``q^k <= budget``."""
    budget = budget_from_env() if budget is None else budget
    F = C.field
    n, k = C.n, C.k
    if k == 0:
        return DistanceResult("interval", n + 1, None, "enumeration", n,
                              notes=["zero code: no nonzero codewords"])
    if F.q**k > budget:
        raise BudgetExceeded(f"q^k = {F.q}^{k} exceeds budget {budget}")
    if F.p not in (2, 3) or F.r > 1:
        best, word = _direct_enumeration(C)
        witness = [(int(i), int(word[i])) for i in np.flatnonzero(word)]
        assert len(witness) == best
        return DistanceResult("exact", best, best, "enumeration", best - 1, witness)
    G, p, r = _expand_generator(C)
    P = _Packed(p)
    W = _words(n)
    packed = _pack_expanded(P, G, r, n)
    K = packed.shape[0]
    k1 = (K + 1) // 2
    A = _span_table(P, packed[:k1])
    B = _span_table(P, packed[k1:])
    chunk = max(1, (1 << 21) // max(1, A.shape[0] * W * r))
    best, best_ab = n + 1, None
    for s in range(0, B.shape[0], chunk):
        Bc = B[s:s + chunk]
        S = P.add(A[None, :, :, :], Bc[:, None, :, :])
        wts = _popcount_rows(_support_words(P, S, r, W))
        if s == 0:
            wts[0, 0] = n + 1            # the zero codeword
        idx = int(np.argmin(wts))
        if wts.flat[idx] < best:
            best = int(wts.flat[idx])
            bi, ai = divmod(idx, A.shape[0])
            best_ab = (ai, s + bi)
    ai, bi = best_ab
    word = P.add(A[ai], B[bi])
    digits = np.stack([P.unpack(word[None, :, d * W:(d + 1) * W], n)[0] for d in range(r)], axis=1)
    return _enum_result(C, best, digits)


def _enum_result(C: LinearCode, best: int, digits: np.ndarray) -> DistanceResult:
    F = C.field
    values = F.from_digits_array(digits) if F.r > 1 else digits[:, 0]
    witness = [(int(i), int(values[i])) for i in np.flatnonzero(values)]
    assert len(witness) == best
    return DistanceResult("exact", best, best, "enumeration", best - 1, witness)


# --- low-weight search -----------------------------------------------------------

class _Level:
    """Projectively normalised weight-h column combinations and their syndromes."""

    def __init__(self, cols: np.ndarray, idx: np.ndarray, coef: np.ndarray, syn: np.ndarray):
        self.cols = cols      # packed columns of H, (n, planes, W)
        self.idx = idx        # (count, h) column indices, increasing
        self.coef = coef      # (count, h) coefficients, first one = 1
        self.syn = syn        # (count, planes, W)


def _normalise(P: _Packed, syn: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scale each syndrome so its first nonzero symbol is 1; returns (syn, scale)."""
    if P.p == 2:
        return syn, np.ones(syn.shape[0], dtype=np.int64)
    sup = P.support(syn)
    nzw = sup != 0
    first = np.argmax(nzw, axis=1)
    word = sup[np.arange(sup.shape[0]), first]
    low = word & (~word + np.uint64(1))
    two = (syn[np.arange(syn.shape[0]), 1, first] & low) != 0
    out = np.where(two[:, None, None], syn[:, ::-1, :], syn)
    return out, np.where(two, 2, 1)


def _hash(syn: np.ndarray, salt: np.ndarray) -> np.ndarray:
    flat = syn.reshape(syn.shape[0], -1)
    with np.errstate(over="ignore"):
        h = (flat * salt[: flat.shape[1]]).sum(axis=1, dtype=np.uint64)
        h ^= h >> np.uint64(29)
    return h


def _extend(P: _Packed, cols: np.ndarray, idx: np.ndarray, coef: np.ndarray, syn: np.ndarray):
    """All one-column extensions (new column index above the last one)."""
    n = cols.shape[0]
    last = idx[:, -1].astype(np.int64) if idx.shape[1] else np.full(idx.shape[0], -1, dtype=np.int64)
    reps = n - 1 - last
    total = int(reps.sum())
    if total == 0:
        return (np.zeros((0, idx.shape[1] + 1), np.int16), np.zeros((0, idx.shape[1] + 1), np.int8),
                np.zeros((0,) + syn.shape[1:], np.uint64))
    parent = np.repeat(np.arange(idx.shape[0]), reps)
    starts = np.cumsum(reps) - reps
    new = np.arange(total) - np.repeat(starts, reps) + np.repeat(last + 1, reps)
    cvals = [1] if idx.shape[1] == 0 else list(range(1, P.p))
    out_i, out_c, out_s = [], [], []
    for c in cvals:
        out_i.append(np.concatenate([idx[parent], new[:, None].astype(np.int16)], axis=1))
        out_c.append(np.concatenate([coef[parent], np.full((total, 1), c, dtype=np.int8)], axis=1))
        out_s.append(P.add(syn[parent], P.scale(cols[new], c)))
    return np.concatenate(out_i), np.concatenate(out_c), np.concatenate(out_s)


def _level_count(n: int, h: int, p: int) -> int:
    return math.comb(n, h) * (p - 1) ** max(h - 1, 0)


def _iter_level(P, cols, h, chunk_parents=4096):
    """Yield weight-h combinations in chunks, built from weight-(h-1) ones."""
    if h == 0:
        yield (np.zeros((1, 0), np.int16), np.zeros((1, 0), np.int8),
               np.zeros((1,) + cols.shape[1:], np.uint64))
        return
    for idx, coef, syn in _iter_level(P, cols, h - 1, chunk_parents):
        for s in range(0, idx.shape[0], chunk_parents):
            out = _extend(P, cols, idx[s:s + chunk_parents], coef[s:s + chunk_parents], syn[s:s + chunk_parents])
            if out[0].shape[0]:
                yield out


def _collect_level(P, cols, h):
    parts = list(_iter_level(P, cols, h))
    if not parts:
        return (np.zeros((0, h), np.int16), np.zeros((0, h), np.int8),
                np.zeros((0,) + cols.shape[1:], np.uint64))
    return tuple(np.concatenate(x) for x in zip(*parts))


def _witness_from(idx1, coef1, idx2, coef2, lam, p, n):
    v = np.zeros(n, dtype=np.int64)
    v[idx1.astype(np.int64)] = coef1
    i2 = idx2.astype(np.int64)
    v[i2] = (v[i2] - lam * coef2.astype(np.int64)) % p
    return v % p


def _match(P, p, n, a, b):
    """Codeword from two combinations with equal normalised syndromes, or None."""
    idx1, coef1, lam1 = a
    idx2, coef2, lam2 = b
    # lam1 * syn1 = lam2 * syn2  =>  syn1 - (lam2 / lam1) syn2 = 0
    lam = (int(lam2) * pow(int(lam1), p - 2, p)) % p
    v = _witness_from(idx1, coef1, idx2, coef2, lam, p, n)
    return v if np.count_nonzero(v) else None


def low_weight_search(C: LinearCode, w_max: int, budget: int | None = None,
                      H: Matrix | None = None) -> DistanceResult:
    """Search weights 1..w_max via syndrome collisions on the parity-check columns.

    A weight-u codeword splits into a weight-ceil(u/2) part and a weight-floor(u/2)
    part with opposite syndromes.  Both parts are projectively normalised, so
    collisions are looked up on normalised syndromes.  Once all weights below u
    are excluded, every collision is a codeword of weight exactly u.
    """
    budget = SEARCH_BUDGET if budget is None else budget
    F = C.field if H is None else H.field
    if F.r != 1 or F.p not in (2, 3):
        raise ValueError("low-weight search supports GF(2) and GF(3)")
    P = _Packed(F.p)
    p = F.p
    Hm = (C.parity() if H is None else H).data
    n = Hm.shape[1]
    if Hm.shape[0] == 0:
        # no checks: every unit vector is a codeword
        return DistanceResult("exact", 1, 1, "low-weight-search", 0, [(0, 1)])
    cols = P.pack(Hm.T)                     # (n, planes, W)
    rng = np.random.default_rng(12345)
    salt = rng.integers(1, 2**63, size=cols.shape[1] * cols.shape[2], dtype=np.uint64) | np.uint64(1)
    certified = 0
    w_max = min(w_max, n)
    cache: dict[int, tuple] = {}

    def table(h):
        if h not in cache:
            idx, coef, syn = _collect_level(P, cols, h)
            nsyn, lam = _normalise(P, syn)
            hsh = _hash(nsyn, salt)
            order = np.argsort(hsh, kind="stable")
            cache.clear()
            cache[h] = (idx[order], coef[order], nsyn[order], lam[order], hsh[order])
        return cache[h]

    for u in range(1, w_max + 1):
        h2 = u // 2
        h1 = u - h2
        cost = _level_count(n, h2, p) + _level_count(n, h1, p)
        if cost > budget:
            break
        found = None
        if h2 == 0:
            idx, coef, syn = _collect_level(P, cols, 1)
            zero = ~P.support(syn).any(axis=1)
            if zero.any():
                i = int(np.flatnonzero(zero)[0])
                found = np.zeros(n, dtype=np.int64)
                found[idx[i]] = coef[i]
        elif h1 == h2:
            idx, coef, nsyn, lam, hsh = table(h2)
            dup = np.flatnonzero(hsh[1:] == hsh[:-1])
            for i in dup:
                j = i + 1
                if np.array_equal(nsyn[i], nsyn[j]):
                    found = _match(P, p, n, (idx[i], coef[i], lam[i]), (idx[j], coef[j], lam[j]))
                    if found is not None:
                        break
        else:
            idx2, coef2, nsyn2, lam2, h_sorted = table(h2)
            for idx1, coef1, syn1 in _iter_level(P, cols, h1):
                nsyn1, lam1 = _normalise(P, syn1)
                hq = _hash(nsyn1, salt)
                lo = np.searchsorted(h_sorted, hq, side="left")
                hi = np.searchsorted(h_sorted, hq, side="right")
                for qi in np.flatnonzero(hi > lo):
                    for tj in range(lo[qi], hi[qi]):
                        if np.array_equal(nsyn1[qi], nsyn2[tj]):
                            found = _match(P, p, n, (idx1[qi], coef1[qi], lam1[qi]),
                                           (idx2[tj], coef2[tj], lam2[tj]))
                            if found is not None:
                                break
                    if found is not None:
                        break
                if found is not None:
                    break
        if found is not None:
            wt = int(np.count_nonzero(found))
            if ((Hm @ found) % p).any() or wt != u:
                raise AssertionError(f"internal error: bad witness of weight {wt} at u={u}")
            witness = [(int(i), int(found[i])) for i in np.flatnonzero(found)]
            return DistanceResult("exact", u, u, "low-weight-search", u - 1, witness)
        certified = u
    res = DistanceResult("interval", certified + 1, None, "low-weight-search", certified)
    if certified < w_max:
        res.notes.append(f"search budget exhausted after weight {certified}")
    return res


def min_row_weight(C: LinearCode) -> int | None:
    if C.k == 0:
        return None
    return int((C.generator.data != 0).sum(axis=1).min())


def distance_report(C: LinearCode, designed: int = 1, budget: int | None = None,
                    w_max: int | None = None, search_budget: int | None = None,
                    H: Matrix | None = None, mode: str = "auto") -> DistanceResult:
    """Best available distance statement for ``C``.

    ``H`` may be supplied to avoid materialising a parity-check matrix.
    Witnesses of weight below ``designed`` are flagged as contradictions.
    """
    budget = budget_from_env() if budget is None else budget
    F = C.field if C is not None else H.field
    designed = max(1, int(designed))
    res: DistanceResult | None = None
    k = C.k if C is not None else H.cols - H.rows
    if mode == "auto":
        if C is not None and F.q**k <= budget:
            res = exact_distance_enumeration(C, budget)
        elif F.r == 1 and F.p in (2, 3):
            target = designed + 2 if w_max is None else w_max
            res = low_weight_search(C, target, search_budget, H=H)
    if res is None:
        res = DistanceResult("interval", designed, None, "designed-only", 0)
    if res.status == "exact":
        if res.lower < designed:
            res.contradiction = True
            res.notes.append(f"weight-{res.lower} codeword below designed distance {designed}")
    else:
        res.lower = max(res.lower, designed)
        if C is not None and res.upper is None:
            mw = min_row_weight(C)
            res.upper = mw
    return res
