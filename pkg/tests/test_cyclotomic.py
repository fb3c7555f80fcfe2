import pytest

from lcdforge.cyclotomic import (atlas, canonical_representative, cardinality_window_checks, closure,
                                 is_orbit_closed, is_symmetric_univariate, orbit, orbits_in,
                                 symmetric_equality_form, times_p, univariate_orbit_sizes)
from lcdforge.variety import ConfigError, VarietyConfig, swap_reciprocal


def test_orbit_of_one_mod_65():
    cfg = VarietyConfig(2, 12, (66,), (1,))
    S = orbit(cfg, (1,))
    assert S.cardinality == 12
    assert {e[0] for e in S.elements} == {pow(2, j, 65) for j in range(12)}
    # 2^6 = -1 mod 65, so the orbit is its own reciprocal
    assert S.symmetric


def test_orbit_of_one_mod_80_reciprocal():
    cfg = VarietyConfig(3, 4, (81,), (1,))
    S = orbit(cfg, (1,))
    assert {e[0] for e in S.elements} == {1, 3, 9, 27}
    assert S.reciprocal_representative == (53,)


def test_outside_J_zero_is_fixed():
    cfg = VarietyConfig(3, 2, (9,), ())
    assert orbit(cfg, (0,)).elements == ((0,),)
    assert orbit(cfg, (8,)).elements == ((8,),)
    assert times_p(cfg, (1,)) == (3,)


def test_canonical_representative_is_lexicographic_min():
    assert canonical_representative([(3, 1), (1, 5), (1, 2)]) == (1, 2)


def test_atlas_partitions_exponents():
    cfg = VarietyConfig(3, 2, (3, 9), (2,))
    A = atlas(cfg)
    seen = [e for S in A.sets for e in S.elements]
    assert sorted(seen) == sorted(cfg.exponents())
    for S in A.sets:
        assert S.representative == min(S.elements)
        rho = swap_reciprocal(cfg, S.representative)
        assert (rho in S) == S.symmetric
    assert set(A.A1).isdisjoint(A.A2)
    assert len(A.A1) + len(A.A2) == len(A.sets)


def test_atlas_ex1():
    A = atlas(VarietyConfig(2, 12, (66,), (1,)))
    assert sorted(a[0] for a in A.A1) == [0, 1, 3, 5, 7, 11, 13]


def test_atlas_ex6_81():
    # the worked list skips 10, whose orbit {10,30} pairs with {50,70} and is
    # therefore part of A1 under the "representative below its reciprocal" rule
    A = atlas(VarietyConfig(3, 4, (81,), (1,)))
    a1 = sorted(a[0] for a in A.A1)
    printed = [0, 1, 2, 4, 5, 7, 8, 11, 13, 14, 16, 20, 40]
    assert set(a1) - set(printed) == {10}
    assert set(printed) <= set(a1)


def test_atlas_ex7():
    # 41 does not divide 3^6 - 1, the smallest valid extension degree is 8
    with pytest.raises(ConfigError):
        VarietyConfig(3, 6, (42,), (1,))
    A = atlas(VarietyConfig(3, 8, (42,), (1,)))
    assert sorted(a[0] for a in A.A1) == [0, 1, 2, 4, 7, 8]


def test_closure_and_orbits_in():
    cfg = VarietyConfig(2, 4, (16,), (1,))
    d = closure(cfg, [(1,)])
    assert {a[0] for a in d} == {1, 2, 4, 8}
    assert is_orbit_closed(cfg, d)
    assert not is_orbit_closed(cfg, [(1,), (2,)])
    assert [S.representative for S in orbits_in(cfg, list(d) + [(3,)])] == [(1,)]


@pytest.mark.parametrize("N,p,r", [(16, 2, 4), (83, 3, 8), (66, 2, 12), (27, 3, 3), (256, 2, 8)])
def test_symmetric_congruence_matches_orbits(N, p, r):
    size, rep = univariate_orbit_sizes(N, p)
    M = N - 1
    for a in range(1, M):
        assert is_symmetric_univariate(N, p, r, a) == (rep[a] == rep[(M - a) % M])


def test_equality_form_is_only_sufficient():
    assert is_symmetric_univariate(81, 3, 4, 16)
    assert not symmetric_equality_form(81, 3, 4, 16)
    with pytest.raises(ConfigError):
        is_symmetric_univariate(81, 3, 4, 0)


def test_window_report_ex1():
    rep = cardinality_window_checks(66, 2, 12)
    for name in ("orbit-size-window", "distinct-window", "asymmetry-window", "symmetric-congruence"):
        assert rep.checks[name]["pass"], name
    with pytest.raises(ConfigError):
        cardinality_window_checks(10, 2, 4)
    with pytest.raises(ConfigError):
        univariate_orbit_sizes(82, 3)
