"""Shared helpers for the test modules."""
import itertools

import numpy as np

from lcdforge.cyclotomic import atlas
from lcdforge.matrix import Matrix
from lcdforge.variety import DeltaSet, VarietyConfig

# small configurations (n <= 81) over GF(4), GF(8), GF(16), GF(9), GF(81)
SMALL_CONFIGS = [
    VarietyConfig(2, 4, (16,), (1,)),
    VarietyConfig(2, 4, (16,), ()),
    VarietyConfig(2, 2, (4, 4), ()),
    VarietyConfig(2, 2, (4, 4), (1, 2)),
    VarietyConfig(2, 3, (8, 8), (1,)),
    VarietyConfig(3, 2, (3, 9), (2,)),
    VarietyConfig(3, 2, (9, 9), (1, 2)),
    VarietyConfig(3, 2, (3, 3, 3), ()),
    VarietyConfig(3, 4, (41,), (1,)),
    VarietyConfig(2, 4, (6, 4), (1,)),
]


def random_closed_delta(cfg, rng, max_orbits=None):
    """A random union of cyclotomic orbits."""
    sets = atlas(cfg).sets
    k = int(rng.integers(1, (max_orbits or len(sets)) + 1))
    pick = rng.choice(len(sets), size=min(k, len(sets)), replace=False)
    return DeltaSet(cfg, [e for i in pick for e in sets[int(i)].elements])


def codewords(C):
    F = C.field
    k = C.k
    coeffs = np.array(list(itertools.product(range(F.q), repeat=k)), dtype=np.int64).reshape(-1, k)
    return (Matrix(F, coeffs) @ C.generator).data


def weight_enumerator(C):
    w = (codewords(C) != 0).sum(axis=1)
    return np.bincount(w, minlength=C.n + 1).tolist()
