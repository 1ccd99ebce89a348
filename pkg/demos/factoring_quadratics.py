"""The many factorizations of u^2 - 1 and u^2 + 1.

Run with ``python demos/factoring_quadratics.py``.

Each spectral slot of a polynomial is an ordinary scalar polynomial.  Its
roots can be handed to the linear factors in any order, and every choice
gives a different factorization in the algebra.
"""

from ncomplex import NComplex
from ncomplex.polyfactor import NPolynomial, count_factorizations, expand, factorizations


def quadratic(variant, n, c0):
    return NPolynomial(variant, n, (NComplex.zero(n, variant), NComplex.identity(n, variant) * c0))


for variant, n, c0 in (("polar", 4, -1.0), ("polar", 5, -1.0), ("planar", 6, 1.0)):
    P = quadratic(variant, n, c0)
    sign = "-" if c0 < 0 else "+"
    print(f"{variant} n={n}: u^2 {sign} 1 has {count_factorizations(P)} factorizations")

P = quadratic("polar", 4, -1.0)
for f in factorizations(P):
    a, b = f.linear_roots
    print(f"  (u - {a.to_literal()}) (u - {b.to_literal()})")
    assert expand(f, "polar", 4).coefficients[1].allclose(P.coefficients[1])

# In polar algebras a real slot can have complex roots.  Those must stay
# together in a quadratic factor with real coefficients.
mixed = next(factorizations(quadratic("polar", 4, 1.0)))
print("\npolar u^2 + 1: quadratic factors", len(mixed.quadratic_factors), "linear", len(mixed.linear_roots))
