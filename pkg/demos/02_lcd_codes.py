"""
Building LCD codes
==================

The [135,122,4] binary code from the shifted hyperbolic set, the
[3^m, 3^m - 2m - 1] family and a nested univariate chain over GF(3).
"""

from lcdforge import ConstructionRequest, VarietyConfig, construct

cfg = VarietyConfig(2, 4, (16, 4, 4), (1, 2, 3))
rep = construct(ConstructionRequest(cfg, "hyperbolic-ss-shifted", {"t": 4}), w_max=4)
print(f"[{rep.n},{rep.k},{rep.d_exact}]_2  hull={rep.hull_dim}  designed={rep.d_designed}")

print("\nfamily over N=(4,...,4):")
for m in (2, 3, 4):
    cfg = VarietyConfig(2, 2, (4,) * m, tuple(range(1, m + 1)))
    rep = construct(ConstructionRequest(cfg, "hyperbolic-ss-shifted", {"t": 4}))
    d = rep.d_exact if rep.d_exact is not None else f">={rep.d_lower}"
    print(f"  m={m}: [{rep.n},{rep.k},{d}]  lcd={rep.lcd}")

# length 41 over GF(3); 41 divides 3^8 - 1
print("\nnested chain, N=42:")
cfg = VarietyConfig(3, 8, (42,), (1,))
for t in range(5):
    rep = construct(ConstructionRequest(cfg, "nok", {"t": t}))
    print(f"  t={t}: [{rep.n},{rep.k},{rep.d_exact}]_3  designed {rep.d_designed}")
