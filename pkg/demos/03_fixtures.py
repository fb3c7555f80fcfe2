"""
Checking printed tuples
=======================

Run a few fixtures and look at what was computed against what was claimed.
A corrupted copy of a fixture shows what a failure looks like.
"""

import dataclasses

from lcdforge.fixtures import lookup, run_fixture

for fid in ("ex4-27-6-12", "ex6-82-1-82", "ex8-20-14", "ex5-63", "ex6-82-9-32"):
    v = run_fixture(lookup(fid))
    c, e = v.details["computed"], v.details["expected"]
    d = c["d"] if c["d"] is not None else f">={c['d_lower']}"
    print(f"{fid:14s} {v.verdict:11s} claimed [{e['n']},{e['k']},{e['d_claim']}]  "
          f"computed [{c['n']},{c['k']},{d}] via {c['method']}")
    for line in v.details.get("contradictions", []):
        print("    ", line)

f = lookup("ex4-27-6-12")
bad = dataclasses.replace(f, expected=dict(f.expected, k=7))
print("\ncorrupted copy:", run_fixture(bad).verdict)
