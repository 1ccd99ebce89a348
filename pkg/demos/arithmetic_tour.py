"""A first look at polar and planar numbers.

Run with ``python demos/arithmetic_tour.py``.
"""

import numpy as np

from ncomplex import NComplex, NonInvertible, canonical_basis, determinant, exp, inverse, log, to_spectrum
from ncomplex.matrix_rep import represent

# Four-dimensional polar numbers multiply like cyclic convolutions.
u = NComplex([1.0, 2.0, 0.0, -1.0], "polar")
v = NComplex([0.5, 0.0, 1.0, 0.0], "polar")
print("u     =", u.to_literal())
print("v     =", v.to_literal())
print("u * v =", (u * v).to_literal())

# The same product through the multiplication matrices.
print("matrix product agrees:", np.allclose(represent(u * v), represent(u) @ represent(v)))

# In spectral coordinates the product is taken slot by slot, which is why
# a number is invertible exactly when none of its slots vanish.
s = to_spectrum(u)
print("\nspectrum of u: v+ =", s.v_plus, " v- =", s.v_minus, " pairs =", s.pairs.tolist())
print("determinant:", determinant(u))

# v- is zero, so u sits on a nodal hypersurface and has no inverse.
try:
    inverse(u)
except NonInvertible as exc:
    print("inverse(u) refused:", exc)
print("v * v^-1 =", (v * inverse(v)).to_literal())

# Idempotents split the algebra into independent pieces.
basis = canonical_basis(4, "polar")
print("\ne+ * e+ = e+ :", (basis.e_plus * basis.e_plus).allclose(basis.e_plus))
print("e+ * e- = 0  :", (basis.e_plus * basis.e_minus).allclose(NComplex.zero(4, "polar")))

# Planar numbers of dimension 2 are the ordinary complex numbers.
z = NComplex([0.0, np.pi], "planar")
print("\nexp(i pi) as a planar 2-number:", exp(z).to_literal())

# Logarithm and exponential undo each other on the log domain.
w = NComplex([3.0, 0.4, -0.2, 0.1], "polar")
print("exp(log w) - w:", np.max(np.abs((exp(log(w)) - w).x)))
