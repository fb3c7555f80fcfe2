"""Randomised properties driven by hypothesis."""
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from lcdforge.cyclotomic import closure, is_orbit_closed
from lcdforge.field import build_field
from lcdforge.matrix import (LinearCode, Matrix, dual_code, format_matrix, hull_dimension, kernel,
                             parse_matrix, rank)
from lcdforge.variety import VarietyConfig, close_under_reciprocals, is_reciprocal_closed

FIELDS = [build_field(2, 1), build_field(3, 1), build_field(2, 2), build_field(3, 2), build_field(2, 3)]
field_st = st.sampled_from(FIELDS)


@st.composite
def matrices(draw, max_rows=6, max_cols=9):
    F = draw(field_st)
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=cols, max_size=cols),
                         min_size=rows, max_size=rows))
    return Matrix(F, data)


@given(field_st, st.data())
def test_field_distributive(F, data):
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


@given(field_st, st.data())
def test_field_text_round_trip(F, data):
    a = data.draw(st.integers(0, F.q - 1))
    assert F.parse(F.format(a)) == a


@given(matrices())
def test_rank_nullity(M):
    K = kernel(M)
    assert rank(M) + K.rows == M.cols
    assert (M @ K.T).is_zero()


@given(matrices())
def test_matrix_text_round_trip(M):
    assert parse_matrix(format_matrix(M)) == M


@settings(max_examples=60)
@given(matrices(max_rows=5, max_cols=10), st.data())
def test_hull_methods_agree_and_ignore_row_operations(M, data):
    F = M.field
    C = LinearCode.from_rows(F, M.data, M.cols)
    h = hull_dimension(C, "both")
    assert h == hull_dimension(dual_code(C), "both")
    if C.k > 1:
        c = data.draw(st.integers(1, F.q - 1))
        G = C.generator.data.copy()
        G[0] = F.add_arr(G[0], F.mul_arr(np.full(C.n, c), G[1]))
        assert hull_dimension(LinearCode(F, Matrix(F, G)), "both") == h


CONFIGS = [VarietyConfig(2, 4, (16,), (1,)), VarietyConfig(3, 2, (3, 9), (2,)),
           VarietyConfig(2, 2, (4, 4), ()), VarietyConfig(3, 2, (9, 9), (1,))]


@given(st.sampled_from(CONFIGS), st.data())
def test_closures_are_idempotent(cfg, data):
    exps = list(cfg.exponents())
    picks = data.draw(st.lists(st.integers(0, len(exps) - 1), min_size=1, max_size=6))
    d = [exps[i] for i in picks]
    c = closure(cfg, d)
    assert is_orbit_closed(cfg, c) and closure(cfg, c) == c
    r = close_under_reciprocals(cfg, c)
    assert is_reciprocal_closed(cfg, r) and close_under_reciprocals(cfg, r) == r
    assert set(d) <= set(c) <= set(r)
