"""Cosexponential functions and a few of their identities.

Run with ``python demos/cosexponential_tables.py``.
"""

import math

import numpy as np

from ncomplex.cosexp import CosexpFamily, eval_all, eval_series

# For n = 2 the polar family is (cosh, sinh) and the planar family (cos, sin).
for y in (0.0, 0.5, 1.0):
    g = eval_all(CosexpFamily(2, "polar"), y)
    f = eval_all(CosexpFamily(2, "planar"), y)
    print(f"y={y:3.1f}  g20={g[0]:.6f} cosh={math.cosh(y):.6f}  f21={f[1]:.6f} sin={math.sin(y):.6f}")

# A short table for n = 4.
fam = CosexpFamily(4, "polar")
print("\n  y     " + "  ".join(f"g4{k}".rjust(10) for k in range(4)))
for y in np.linspace(-2, 2, 5):
    print(f"{y:5.1f} " + "  ".join(f"{v:10.5f}" for v in eval_all(fam, y)))

# The family sums to e^y, and the sum of squares has no oscillating part.
y = 3.7
g = eval_all(fam, y)
print("\nsum g4k(3.7) - e^3.7:", g.sum() - math.exp(y))
print("sum of squares vs mean of exp(2y cos):", (g**2).sum(), np.mean(np.exp(2 * y * np.cos(fam.nodes()))))

# The closed form is the working path; the series is summed exactly and is
# only used as a check.  Near y = 20 the planar series terms reach 1e7 while
# the value stays small, so a plain float sum would lose digits.
planar = CosexpFamily(4, "planar")
print("\nf40(20): closed", eval_all(planar, 20.0)[0], " exact series", eval_series(planar, 0, 20.0))
