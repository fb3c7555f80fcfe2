"""Dense linear algebra over GF(p) and GF(p^r).

Entries are integer element encodings (see :mod:`lcdforge.field`).  Binary
matrices wider than 64 columns are row-reduced bit-packed in uint64 words;
everything else uses vectorised row operations on int64 arrays.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .field import GF, build_field


class HullDisagreement(RuntimeError):
    """The Gram-rank and intersection hull computations differ."""


class MatrixFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass(frozen=True)
class Matrix:
    field: GF
    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= self.field.q):
            raise ValueError(f"entries outside GF({self.field.q})")
        object.__setattr__(self, "data", a)

    @classmethod
    def zeros(cls, F: GF, rows: int, cols: int) -> "Matrix":
        return cls(F, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, F: GF, n: int) -> "Matrix":
        return cls(F, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def vstack(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return Matrix(self.field, np.vstack([self.data, other.data]))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy())

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.field, matmul(self.field, self.data, other.data))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and self.data.shape == other.data.shape and bool(np.all(self.data == other.data)))

    def __hash__(self):
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def is_zero(self) -> bool:
        return not np.any(self.data)


def _same_field(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


def matmul(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two encoded matrices over ``F``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.r == 1:
        # exact in float64 while n * (p-1)^2 < 2^53
        if a.shape[1] * (F.p - 1) ** 2 < 2**52:
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % F.p
        return (a @ b) % F.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[1]):
        out = F.add_arr(out, F.mul_arr(a[:, i:i + 1], b[i:i + 1, :]))
    return out


# --- row reduction -----------------------------------------------------------

def _rref_prime(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = A % p
    m, n = A.shape
    pivots: list[int] = []
    row = 0
    for c in range(n):
        if row >= m:
            break
        nz = np.flatnonzero(A[row:, c])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        lead = int(A[row, c])
        if lead != 1:
            A[row] = (A[row] * pow(lead, p - 2, p)) % p
        col = A[:, c].copy()
        col[row] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            if p == 2:
                A[hit] ^= A[row]
            else:
                A[hit] = (A[hit] - col[hit, None] * A[row]) % p
        pivots.append(c)
        row += 1
    return A, pivots


def _rref_gf2_packed(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = A.shape
    words = (n + 63) // 64
    bits = np.zeros((m, words * 64), dtype=np.uint8)
    bits[:, :n] = A & 1
    P = np.packbits(bits, axis=1, bitorder="little").view(np.uint64).copy()
    pivots: list[int] = []
    row = 0
    one = np.uint64(1)
    for c in range(n):
        if row >= m:
            break
        w, b = divmod(c, 64)
        colbits = (P[:, w] >> np.uint64(b)) & one
        nz = np.flatnonzero(colbits[row:])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            P[[row, piv]] = P[[piv, row]]
            colbits[[row, piv]] = colbits[[piv, row]]
        colbits[row] = 0
        hit = np.flatnonzero(colbits)
        if hit.size:
            P[hit] ^= P[row]
        pivots.append(c)
        row += 1
    out = np.unpackbits(P.view(np.uint8), axis=1, bitorder="little")[:, :n]
    return out.astype(np.int64), pivots


def _rref_extension(F: GF, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = A.shape
    pivots: list[int] = []
    row = 0
    for c in range(n):
        if row >= m:
            break
        nz = np.flatnonzero(A[row:, c])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        lead = int(A[row, c])
        if lead != 1:
            A[row] = F.mul_arr(A[row], F.inv(lead))
        col = A[:, c].copy()
        col[row] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = F.sub_arr(A[hit], F.mul_arr(col[hit, None], A[row][None, :]))
        pivots.append(c)
        row += 1
    return A, pivots


def rref_array(F: GF, data: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
    A = np.array(data, dtype=np.int64, copy=True)
    if A.size == 0:
        return A, 0, []
    if F.r == 1:
        if F.p == 2 and A.shape[1] > 64 and A.shape[0] > 8:
            R, piv = _rref_gf2_packed(A)
        else:
            R, piv = _rref_prime(A, F.p)
    else:
        R, piv = _rref_extension(F, A)
    return R, len(piv), piv


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    R, rank_, piv = rref_array(M.field, M.data)
    return Matrix(M.field, R), rank_, piv


def rank(M: Matrix) -> int:
    return rref_array(M.field, M.data)[1]


def row_basis(M: Matrix) -> Matrix:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    R, r, _ = rref_array(M.field, M.data)
    return Matrix(M.field, R[:r].reshape(r, M.cols))


def kernel(M: Matrix) -> Matrix:
    """Basis (as rows) of ``{x : M x^T = 0}``."""
    F = M.field
    n = M.cols
    R, r, piv = rref_array(F, M.data)
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        if r:
            K[i, piv] = F.neg_arr(R[:r, f])
    return Matrix(F, K)


def row_space_intersection(A: Matrix, B: Matrix) -> Matrix:
    """Basis of ``rowspace(A) ∩ rowspace(B)``."""
    _same_field(A, B)
    if A.cols != B.cols:
        raise ValueError(f"shape mismatch: {A.cols} vs {B.cols} columns")
    F = A.field
    Ab = row_basis(A)
    Bb = row_basis(B)
    if Ab.rows == 0 or Bb.rows == 0:
        return Matrix.zeros(F, 0, A.cols)
    stacked = np.vstack([Ab.data, F.neg_arr(Bb.data)])
    # x A = y B  <=>  (x, y) [A; -B] = 0
    left = kernel(Matrix(F, stacked.T.copy()))
    if left.rows == 0:
        return Matrix.zeros(F, 0, A.cols)
    vecs = matmul(F, left.data[:, :Ab.rows], Ab.data)
    return row_basis(Matrix(F, vecs))


def gram(M: Matrix) -> Matrix:
    return Matrix(M.field, matmul(M.field, M.data, M.data.T))


@dataclass
class LinearCode:
    """Row space of a full-row-rank generator matrix."""

    field: GF
    generator: Matrix
    provenance: dict[str, Any] = dc_field(default_factory=dict)
    parity_check: Matrix | None = None

    def __post_init__(self):
        if self.generator.field != self.field:
            raise ValueError("generator over the wrong field")

    @classmethod
    def from_rows(cls, F: GF, rows, n: int | None = None, provenance=None, independent=False) -> "LinearCode":
        a = np.asarray(rows, dtype=np.int64)
        if a.size == 0:
            a = np.zeros((0, n or 0), dtype=np.int64)
        M = Matrix(F, a)
        if not independent:
            M = row_basis(M)
        return cls(F, M, dict(provenance or {}))

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    def check_basis(self) -> None:
        if rank(self.generator) != self.k:
            raise ValueError("generator rows are linearly dependent")

    def parity(self) -> Matrix:
        if self.parity_check is None:
            self.parity_check = kernel(self.generator)
        return self.parity_check

    def same_space(self, other: "LinearCode") -> bool:
        return (self.field == other.field and self.n == other.n
                and row_basis(self.generator) == row_basis(other.generator))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field!r})"


def dual_code(C: LinearCode) -> LinearCode:
    H = C.parity()
    D = LinearCode(C.field, H, {"dual_of": C.provenance}, parity_check=C.generator)
    return D


def hull_dimension_gram(C: LinearCode) -> int:
    """``k - rank(G G^T)``, valid for a full-row-rank generator."""
    if C.k == 0:
        return 0
    return C.k - rank(gram(C.generator))


def hull_dimension_intersection(C: LinearCode) -> int:
    return row_space_intersection(C.generator, C.parity()).rows


def hull_dimension(C: LinearCode, method: str = "both") -> int:
    """Dimension of ``C ∩ C^⊥``.

    ``method`` is ``"gram"``, ``"intersection"`` or ``"both"``; the last runs
    the two independent computations and raises :class:`HullDisagreement` if
    they differ.
    """
    if method == "gram":
        return hull_dimension_gram(C)
    if method == "intersection":
        return hull_dimension_intersection(C)
    if method != "both":
        raise ValueError(f"unknown hull method {method!r}")
    g = hull_dimension_gram(C)
    i = hull_dimension_intersection(C)
    if g != i:
        raise HullDisagreement(f"gram rank gives {g}, intersection gives {i} for {C!r}")
    return g


# --- text format ---------------------------------------------------------------

def format_matrix(M: Matrix) -> str:
    F = M.field
    lines = [f"{F.p} {F.r} {M.rows} {M.cols}"]
    for row in M.data:
        lines.append(" ".join(F.format(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix:
    lines = [ln for ln in text.splitlines()]
    header_idx = next((i for i, ln in enumerate(lines) if ln.strip()), None)
    if header_idx is None:
        raise MatrixFormatError("empty input", 1)
    head = lines[header_idx].split()
    if len(head) != 4 or not all(h.isdigit() for h in head):
        raise MatrixFormatError("header must be 'p r rows cols'", header_idx + 1)
    p, r, m, n = (int(h) for h in head)
    try:
        F = build_field(p, r)
    except ValueError as exc:
        raise MatrixFormatError(str(exc), header_idx + 1) from None
    body = [(i + 1, ln) for i, ln in enumerate(lines[header_idx + 1:], start=header_idx + 1) if ln.strip()]
    if len(body) != m:
        raise MatrixFormatError(f"expected {m} rows, found {len(body)}", body[-1][0] if body else header_idx + 1)
    data = np.zeros((m, n), dtype=np.int64)
    for i, (lineno, ln) in enumerate(body):
        toks = ln.split()
        if len(toks) != n:
            raise MatrixFormatError(f"expected {n} entries, found {len(toks)}", lineno)
        try:
            data[i] = [F.parse(t) for t in toks]
        except ValueError as exc:
            raise MatrixFormatError(str(exc), lineno) from None
    return Matrix(F, data)
