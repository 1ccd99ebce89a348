"""Power series in an n-complex variable and analyticity checks.

A series ``sum a_l u^l`` splits into one scalar power series per spectral
slot, with coefficients given by the spectral coordinates of the ``a_l``.  Its
domain of convergence is therefore a cylinder: ``|v_+| < c_+``,
``|v_-| < c_-`` and ``rho_k < c_k``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import NComplex, Variant, check_dimension, mul_components
from .errors import DimensionMismatch, InsufficientData
from .functions import NFunction, as_function
from .spectral import components_to_slots, slot_layout, slots_to_components, to_slots

# a slot counts as absent from a coefficient when it is this small relative to
# the largest slot of the same coefficient
ZERO_SLOT = 1e-12
# log-log slope of the ratio sequence above which ratios are taken to diverge
DIVERGENT_SLOPE = 0.4


@dataclass(frozen=True)
class NPowerSeries:
    variant: Variant
    n: int
    coefficients: tuple[NComplex, ...]

    def __post_init__(self):
        variant = Variant.coerce(self.variant)
        object.__setattr__(self, "variant", variant)
        check_dimension(self.n, variant)
        coeffs = tuple(
            c if isinstance(c, NComplex) else NComplex(c, variant) for c in self.coefficients
        )
        for c in coeffs:
            if c.n != self.n or c.variant is not variant:
                raise DimensionMismatch("all coefficients must share n and variant")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_json(cls, data) -> "NPowerSeries":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["variant"], int(data["n"]), tuple(data["coefficients"]))

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "n": self.n,
            "coefficients": [[float(v) for v in c.x] for c in self.coefficients],
        }

    def coefficient_spectra(self) -> np.ndarray:
        """Slot vectors ``(A_l+, A_l-, A_lk + i A~_lk)`` stacked by ``l``."""
        xs = np.array([c.x for c in self.coefficients]).reshape(-1, self.n)
        return components_to_slots(xs, self.variant)


def evaluate(series: NPowerSeries, u: NComplex, terms: int | None = None) -> NComplex:
    """Partial sum of the first ``terms`` terms, computed slot by slot."""
    if u.n != series.n or u.variant is not series.variant:
        raise DimensionMismatch("argument does not match the series algebra")
    spectra = series.coefficient_spectra()
    if terms is not None:
        spectra = spectra[:terms]
    z = to_slots(u)
    total = np.zeros_like(z)
    for coeff in spectra[::-1]:
        total = total * z + coeff
    return NComplex(slots_to_components(total, u.n, u.variant), u.variant)


def evaluate_horner(series: NPowerSeries, u: NComplex, terms: int | None = None) -> NComplex:
    """Same partial sum by Horner's rule using the component product."""
    coeffs = series.coefficients if terms is None else series.coefficients[:terms]
    acc = np.zeros(series.n)
    for c in coeffs[::-1]:
        acc = mul_components(series.variant, acc, u.x) + c.x
    return NComplex(acc, series.variant)


class SeriesFunction(NFunction):
    """A truncated series viewed as a function."""

    def __init__(self, series: NPowerSeries, terms: int | None = None):
        self.series = series
        self.terms = terms

    def batch(self, xs, variant):
        spectra = self.series.coefficient_spectra()
        if self.terms is not None:
            spectra = spectra[: self.terms]
        z = components_to_slots(xs, variant)
        total = np.zeros_like(z)
        for coeff in spectra[::-1]:
            total = total * z + coeff
        return slots_to_components(total, xs.shape[-1], variant)


@dataclass(frozen=True)
class ConvergenceCylinder:
    c_plus: float | None
    c_minus: float | None
    c: tuple[float, ...]

    def contains(self, u: NComplex) -> bool:
        slots = to_slots(u)
        return bool(np.all(np.abs(slots) < np.array(self.radii())))

    def radii(self) -> list[float]:
        return [r for r in (self.c_plus, self.c_minus) if r is not None] + list(self.c)

    def to_json(self) -> dict:
        def enc(r):
            return None if r is None else (r if math.isfinite(r) else "inf")

        return {"c_plus": enc(self.c_plus), "c_minus": enc(self.c_minus), "c": [enc(r) for r in self.c]}


def ratio_limit(magnitudes: np.ndarray, window: int = 8) -> float:
    """Windowed estimate of ``lim |a_l| / |a_{l+1}|``.

    Geometric mean of the last ``window`` ratios.  Returns ``inf`` when the
    tail is identically zero or when the ratios grow like a power of ``l``
    (entire functions such as ``exp``).
    """
    mags = np.asarray(magnitudes, dtype=float)
    if mags.size < 2:
        raise InsufficientData("need at least two coefficients")
    start = max(0, mags.size - window - 1)
    tail = mags[start:]
    ls = np.arange(start, mags.size)
    num, den, index = tail[:-1], tail[1:], ls[:-1]
    ok = (num > 0) & (den > 0)
    if not np.any(ok):
        return math.inf
    ratios = num[ok] / den[ok]
    index = index[ok]
    if ratios.size >= 3:
        slope = np.polyfit(np.log(index + 1.0), np.log(ratios), 1)[0]
        if slope > DIVERGENT_SLOPE:
            return math.inf
    return float(np.exp(np.mean(np.log(ratios))))


def convergence_radii(series: NPowerSeries, window: int = 8) -> ConvergenceCylinder:
    if len(series.coefficients) < 2:
        raise InsufficientData("need at least two coefficients")
    mags = np.abs(series.coefficient_spectra())
    biggest = mags.max(axis=1, keepdims=True)
    mags = np.where(mags <= ZERO_SLOT * biggest, 0.0, mags)
    radii = [ratio_limit(mags[:, s], window) for s in range(mags.shape[1])]
    layout = slot_layout(series.n, series.variant)
    reals = dict(zip(layout.real, radii))
    return ConvergenceCylinder(
        reals.get("v_plus"), reals.get("v_minus"), tuple(radii[len(layout.real):])
    )


def crude_radius(series: NPowerSeries, window: int = 8) -> float:
    """Radius of the ball ``|u| < c`` guaranteed by the product-norm bound.

    ``c = lim |a_l| / (s |a_{l+1}|)`` with ``s = sqrt(n)`` (polar) or
    ``sqrt(n/2)`` (planar).
    """
    norms = np.array([np.linalg.norm(c.x) for c in series.coefficients])
    s = math.sqrt(series.n if series.variant is Variant.POLAR else series.n / 2)
    return ratio_limit(norms, window) / s


def product_bound(variant, n: int) -> float:
    """Constant ``s`` in ``|u v| <= s |u| |v|``."""
    return math.sqrt(n if Variant.coerce(variant) is Variant.POLAR else n / 2)


@dataclass(frozen=True)
class RiemannReport:
    """Residuals of the first- and second-order derivative relations.

    Residuals are divided by ``scale``, the largest of 1, ``|f(u0)|`` and
    the largest estimated partial derivative.
    """

    first_order: float
    second_order: float
    scale: float
    jacobian: np.ndarray
    threshold: float = 1e-6

    @property
    def residual(self) -> float:
        return max(self.first_order, self.second_order)

    @property
    def analytic(self) -> bool:
        return self.residual < self.threshold

    def to_json(self) -> dict:
        return {
            "first_order": self.first_order,
            "second_order": self.second_order,
            "scale": self.scale,
            "analytic": self.analytic,
        }


def check_riemann_relations(
    f, u0: NComplex, h: float | None = None, *, threshold: float = 1e-6
) -> RiemannReport:
    """Central-difference test of the generalized Cauchy-Riemann relations.

    Writing ``f = sum_k h_k P_k``, an analytic ``f`` has
    ``dP_{(k+l) mod n}/dx_l = s dP_k/dx_0`` and
    ``d2P_k/dx_a dx_b = s' d2P_k/dx_0 dx_{(a+b) mod n}``, with the signs
    ``s, s'`` equal to 1 for polar numbers and to -1 for planar numbers when
    the index sum wraps past ``n``.
    """
    f = as_function(f)
    n, variant = u0.n, u0.variant
    if h is None:
        h = 1e-4 * max(1.0, float(np.linalg.norm(u0.x)))
    planar = variant is Variant.PLANAR
    eye = np.eye(n) * h

    points = [u0.x]
    for l in range(n):
        points += [u0.x + eye[l], u0.x - eye[l]]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for a, b in pairs:
        points += [
            u0.x + eye[a] + eye[b],
            u0.x + eye[a] - eye[b],
            u0.x - eye[a] + eye[b],
            u0.x - eye[a] - eye[b],
        ]
    values = f.batch(np.array(points), variant)
    f0 = values[0]

    # jac[k, l] = dP_k / dx_l ; hess[k, a, b] = d2 P_k / dx_a dx_b
    jac = np.empty((n, n))
    hess = np.empty((n, n, n))
    for l in range(n):
        plus, minus = values[1 + 2 * l], values[2 + 2 * l]
        jac[:, l] = (plus - minus) / (2 * h)
        hess[:, l, l] = (plus - 2 * f0 + minus) / h**2
    base = 1 + 2 * n
    for i, (a, b) in enumerate(pairs):
        pp, pm, mp, mm = values[base + 4 * i: base + 4 * i + 4]
        hess[:, a, b] = hess[:, b, a] = (pp - pm - mp + mm) / (4 * h * h)

    scale = max(1.0, float(np.max(np.abs(f0))), float(np.max(np.abs(jac))), float(np.max(np.abs(hess))))
    first = 0.0
    for k in range(n):
        for l in range(n):
            sign = -1.0 if (planar and k + l >= n) else 1.0
            first = max(first, abs(jac[(k + l) % n, l] - sign * jac[k, 0]))
    second = 0.0
    for a in range(n):
        for b in range(n):
            sign = -1.0 if (planar and a + b >= n) else 1.0
            diff = hess[:, a, b] - sign * hess[:, 0, (a + b) % n]
            second = max(second, float(np.max(np.abs(diff))))
    return RiemannReport(first / scale, second / scale, scale, jac, threshold)
