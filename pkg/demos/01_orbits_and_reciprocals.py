"""
Cyclotomic sets and reciprocal pairs
====================================

Orbits of exponents under multiplication by p, which of them are their own
reciprocal, and the representatives A1 used by the nested constructions.
"""

from lcdforge import VarietyConfig, atlas, orbit, reciprocal_set
from lcdforge.cyclotomic import is_symmetric_univariate, symmetric_equality_form

# binary, length 65: N - 1 = 65 divides 2^12 - 1
cfg = VarietyConfig(2, 12, (66,), (1,))
A = atlas(cfg)
print("A1 =", sorted(a[0] for a in A.A1))

for a in A.A1[:4]:
    S = A[a]
    print(f"  orbit of {a[0]:2d}: size {S.cardinality:2d}, symmetric={S.symmetric}, "
          f"reciprocal rep {S.reciprocal_representative[0]}")

# ternary, length 80
cfg = VarietyConfig(3, 4, (81,), (1,))
S = orbit(cfg, (1,))
print("\norbit of 1 mod 80:", [e[0] for e in S.elements], "reciprocal rep", S.reciprocal_representative)

# symmetry: congruence a(p^j + 1) = 0 mod N-1 against the integer form a = (N-1)/(p^j+1)
for a in (8, 16, 20, 40):
    print(f"  a={a:2d} symmetric={is_symmetric_univariate(81, 3, 4, a)}  "
          f"integer form={symmetric_equality_form(81, 3, 4, a)}")

# two variables: a reciprocal set reaches across the boundary values 0 and N-1
cfg = VarietyConfig(3, 3, (27, 27), (2,))
print("\nreciprocal set of (0,10):", sorted(reciprocal_set(cfg, (0, 10))))
