"""Functions of an n-complex variable with batched evaluation.

Contour quadrature and finite-difference stencils evaluate a function at
thousands of points, so each function here also works on a stack of component
vectors of shape ``(N, n)``.  Plain callables can be wrapped with
:func:`as_function`.
"""

from __future__ import annotations

import numpy as np

from .core import NComplex, Variant, mul_components
from .elementary import exp_components
from .spectral import components_to_slots, slots_to_components


class NFunction:
    """Base class.  Subclasses implement :meth:`batch`."""

    singularities: tuple = ()

    def batch(self, xs: np.ndarray, variant: Variant) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, u: NComplex) -> NComplex:
        return NComplex(self.batch(u.x[None, :], u.variant)[0], u.variant)


class Constant(NFunction):
    def __init__(self, value: NComplex):
        self.value = value

    def batch(self, xs, variant):
        return np.broadcast_to(self.value.x, xs.shape).copy()


class Identity(NFunction):
    def batch(self, xs, variant):
        return np.array(xs, dtype=float)


class Power(NFunction):
    """``u**m`` for a non-negative integer ``m`` by repeated multiplication."""

    def __init__(self, m: int):
        if m < 0 or int(m) != m:
            raise ValueError("Power needs a non-negative integer exponent")
        self.m = int(m)

    def batch(self, xs, variant):
        out = np.zeros_like(xs, dtype=float)
        out[..., 0] = 1.0
        for _ in range(self.m):
            out = mul_components(variant, out, xs)
        return out


class Exp(NFunction):
    def batch(self, xs, variant):
        return exp_components(xs, variant)


class Pole(NFunction):
    """``numerator(u) / (u - center)**order``."""

    def __init__(self, center: NComplex, order: int = 1, numerator: NFunction | None = None):
        self.center = center
        self.order = int(order)
        self.numerator = numerator
        self.singularities = ((center, self.order),)

    def batch(self, xs, variant):
        n = xs.shape[-1]
        slots = components_to_slots(xs - self.center.x, variant)
        out = slots_to_components(slots ** (-self.order), n, variant)
        if self.numerator is not None:
            out = mul_components(variant, self.numerator.batch(xs, variant), out)
        return out


class NegateComponent(NFunction):
    """The identity with one component sign-flipped; not analytic."""

    def __init__(self, index: int = 1):
        self.index = index

    def batch(self, xs, variant):
        out = np.array(xs, dtype=float)
        out[..., self.index] *= -1.0
        return out


class _Wrapped(NFunction):
    def __init__(self, fn):
        self.fn = fn

    def batch(self, xs, variant):
        xs = np.atleast_2d(xs)
        return np.array([self.fn(NComplex(row, variant)).x for row in xs])

    def __call__(self, u):
        return self.fn(u)


def as_function(fn) -> NFunction:
    if isinstance(fn, NFunction):
        return fn
    return _Wrapped(fn)
