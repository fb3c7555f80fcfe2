import numpy as np
import pytest

from _util import codewords
from lcdforge.cyclotomic import closure
from lcdforge.distance import (BudgetExceeded, distance_report, exact_distance_enumeration,
                               low_weight_search, min_row_weight, pack_bits, unpack_bits)
from lcdforge.field import build_field
from lcdforge.matrix import LinearCode, Matrix, dual_code
from lcdforge.subfield import subfield_subcode
from lcdforge.variety import VarietyConfig

F2, F3, F4, F9 = build_field(2, 1), build_field(3, 1), build_field(2, 2), build_field(3, 2)
F5, F7, F25 = build_field(5, 1), build_field(7, 1), build_field(5, 2)


def brute_distance(C):
    w = (codewords(C) != 0).sum(axis=1)
    return int(w[w > 0].min())


def random_code(F, n, k, rng):
    while True:
        C = LinearCode.from_rows(F, rng.integers(0, F.q, size=(k, n)), n)
        if C.k == k:
            return C


def test_pack_round_trip():
    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, size=(5, 130))
    assert np.array_equal(unpack_bits(pack_bits(bits), 130), bits)


@pytest.mark.parametrize("F", [F2, F3], ids=["GF2", "GF3"])
def test_repetition(F):
    C = LinearCode(F, Matrix(F, [[1] * 9]))
    r = exact_distance_enumeration(C)
    assert r.status == "exact" and r.d == 9 and len(r.witness) == 9
    assert low_weight_search(C, 9).d == 9


def test_even_weight_code():
    C = dual_code(LinearCode(F2, Matrix(F2, [[1] * 12])))
    assert C.k == 11
    assert low_weight_search(C, 3).d == 2
    assert exact_distance_enumeration(C).d == 2


@pytest.mark.parametrize("F", [F2, F3, F4, F9, F5, F7, F25], ids=["GF2", "GF3", "GF4", "GF9", "GF5", "GF7", "GF25"])
def test_enumeration_matches_brute_force(F):
    rng = np.random.default_rng(F.q)
    for _ in range(10):
        n = int(rng.integers(3, 11))
        k = int(rng.integers(1, min(n, 3 if F.q > 9 else 4 if F.q > 3 else 7) + 1))
        C = random_code(F, n, k, rng)
        r = exact_distance_enumeration(C)
        assert r.d == brute_distance(C)
        word = np.zeros(n, dtype=np.int64)
        for i, v in r.witness:
            word[i] = v
        assert (Matrix(F, word[None, :]) @ dual_code(C).generator.T).is_zero()


@pytest.mark.parametrize("F", [F2, F3], ids=["GF2", "GF3"])
def test_search_agrees_with_enumeration(F):
    rng = np.random.default_rng(10 + F.p)
    for _ in range(25):
        n = int(rng.integers(4, 21))
        k = int(rng.integers(1, min(n - 1, 12) + 1))
        C = random_code(F, n, k, rng)
        d = exact_distance_enumeration(C).d
        s = low_weight_search(C, n)
        assert s.status == "exact" and s.d == d
        s = low_weight_search(C, d - 1)
        assert s.status == "interval" and s.lower == d and s.certified_window == d - 1


def test_row_operations_do_not_change_distance():
    rng = np.random.default_rng(4)
    C = random_code(F3, 14, 5, rng)
    U = Matrix(F3, [[1, 1, 0, 0, 2], [0, 1, 0, 0, 0], [0, 0, 2, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 0, 1]])
    D = LinearCode(F3, U @ C.generator)
    assert D.same_space(C)
    assert exact_distance_enumeration(D).d == exact_distance_enumeration(C).d


def test_budget():
    C = LinearCode(F2, Matrix.identity(F2, 12))
    with pytest.raises(BudgetExceeded):
        exact_distance_enumeration(C, budget=100)
    r = distance_report(C, designed=1, budget=100)
    assert r.status == "exact" and r.method == "low-weight-search" and r.d == 1
    r = low_weight_search(dual_code(LinearCode(F2, Matrix(F2, [[1] * 30]))), 5, budget=10)
    assert r.status == "interval" and "exhausted" in r.notes[0]


def test_contradiction_is_flagged():
    # [4,2] code with a weight-2 word claimed to have designed distance 3
    C = LinearCode(F2, Matrix(F2, [[1, 1, 0, 0], [0, 1, 1, 1]]))
    r = distance_report(C, designed=3)
    assert r.status == "exact" and r.d == 2 and r.contradiction
    assert not distance_report(C, designed=2).contradiction


def test_report_interval_upper_bound():
    rng = np.random.default_rng(8)
    C = random_code(F2, 60, 40, rng)
    r = distance_report(C, designed=2, budget=1000, w_max=2)
    assert r.status == "interval" or r.d <= 2
    if r.status == "interval":
        assert r.lower == 3 and r.upper == min_row_weight(C)


def test_ex1_65_52_window_five():
    cfg = VarietyConfig(2, 12, (66,), (1,))
    E = subfield_subcode(cfg, closure(cfg, [(0,), (1,)]))
    r = distance_report(None, designed=6, w_max=5, H=E.generator)
    assert r.status == "interval" and r.lower == 6 and r.certified_window == 5


def test_zero_code():
    C = LinearCode(F2, Matrix.zeros(F2, 0, 5))
    r = exact_distance_enumeration(C)
    assert r.status == "interval" and r.d is None
