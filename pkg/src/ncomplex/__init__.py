"""Polar and planar n-complex numbers.

Commutative n-dimensional number systems with ``h_j h_k = h_{(j+k) mod n}``
(polar) or the same rule with a sign flip on wrap-around (planar), together
with their spectral decomposition, special functions, power series, contour
integrals and polynomial factorization.
"""

from .core import (
    DEFAULT_TOLERANCES,
    NComplex,
    Tolerances,
    Variant,
    add,
    determinant,
    inverse,
    modulus,
    mul,
    odd_planar_as_polar,
)
from .elementary import exp, exponential_form, log, pow, trigonometric_form
from .errors import (
    AmplitudeUndefined,
    DegenerateAngle,
    DimensionMismatch,
    DomainError,
    InsufficientData,
    NComplexError,
    NonInvertible,
    NotConverged,
    OnCurve,
    Overflow,
    SingularPath,
)
from .spectral import Spectrum, canonical_basis, from_spectrum, geometric_form, to_spectrum

__all__ = [
    "DEFAULT_TOLERANCES",
    "AmplitudeUndefined",
    "DegenerateAngle",
    "DimensionMismatch",
    "DomainError",
    "InsufficientData",
    "NComplex",
    "NComplexError",
    "NonInvertible",
    "NotConverged",
    "OnCurve",
    "Overflow",
    "SingularPath",
    "Spectrum",
    "Tolerances",
    "Variant",
    "add",
    "canonical_basis",
    "determinant",
    "exp",
    "exponential_form",
    "from_spectrum",
    "geometric_form",
    "inverse",
    "log",
    "modulus",
    "mul",
    "odd_planar_as_polar",
    "pow",
    "to_spectrum",
    "trigonometric_form",
]

__version__ = "0.1.0"
