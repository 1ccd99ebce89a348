"""Loop integrals around a pole in four-dimensional polar numbers.

Run with ``python demos/residues_in_four_dimensions.py``.

A loop that circles the pole in the plane of the single spectral pair picks
up 2 pi times the unit of that plane.  A loop that misses it in projection
gives zero, and analytic integrands integrate to zero around any loop.
"""

import math

import numpy as np

from ncomplex import NComplex, canonical_basis
from ncomplex.contour import Quadrature, circle_path, integrate, residue_check
from ncomplex.functions import Exp
from ncomplex.spectral import from_slots, to_slots

quad = Quadrature(tol=1e-10, max_segments=4096)
center = NComplex([0.1, 0.2, -0.1, 0.05], "polar")
loop = circle_path(center, 1.0, planes=(1,), segments=64)


def pole_at(pair_offset):
    # move the pole off the loop's real slots too, otherwise the loop would
    # run along a singular hypersurface
    slots = to_slots(center) + np.array([0.8, 0.8, pair_offset])
    return from_slots(slots, 4, "polar")


for label, offset in (("inside", 0.3), ("outside", 3.0)):
    cert = residue_check(None, pole_at(offset), loop, quad)
    print(f"{label:8s} winding={cert.winding}  integral={np.round(cert.integral.x, 10)}  error={cert.max_abs_error:.1e}")

print("2 pi e~1 =", np.round((canonical_basis(4, "polar").e_tilde[0] * (2 * math.pi)).x, 10))

# exp has no poles, so its loop integral vanishes.
print("\nloop integral of exp:", np.max(np.abs(integrate(Exp(), loop, quad).x)))

# With exp as numerator the residue is scaled by exp(u0).
cert = residue_check(Exp(), pole_at(0.3), loop, quad)
print("exp(u0)-weighted residue error:", f"{cert.max_abs_error:.1e}", "segments used:", cert.segments)
