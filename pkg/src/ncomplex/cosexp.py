"""Cosexponential functions.

``g_nk`` (polar) and ``f_nk`` (planar) are the components of ``exp(h_1 y)``:

    g_nk(y) = sum_p y^(k+pn) / (k+pn)!
    f_nk(y) = sum_p (-1)^p y^(k+pn) / (k+pn)!

For ``n = 2`` they reduce to ``cosh, sinh`` and ``cos, sin``.  The closed
trigonometric-exponential sums are the evaluation path; the power series is
kept as an independent oracle and is summed exactly in integer arithmetic so
that the alternating planar series does not lose digits to cancellation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, NComplex, Tolerances, Variant
from .errors import DomainError, NotConverged, Overflow

Y_LIMIT = 700.0
MAX_TERMS = 10**6


@dataclass(frozen=True)
class CosexpFamily:
    n: int
    variant: Variant = Variant.POLAR

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.coerce(self.variant))
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")

    @property
    def symbol(self) -> str:
        return "g" if self.variant is Variant.POLAR else "f"

    def _check_index(self, k: int) -> None:
        if not 0 <= k < self.n:
            raise DomainError(f"index k={k} outside [0, {self.n - 1}]")

    def nodes(self) -> np.ndarray:
        """Angles of the exponentials in the closed form."""
        if self.variant is Variant.POLAR:
            return 2.0 * math.pi * np.arange(self.n) / self.n
        return math.pi * (2 * np.arange(1, self.n + 1) - 1) / self.n

    def envelope(self, y: float) -> float:
        """``(1/n) sum_l exp(y cos a_l)``, an upper bound for ``|g_nk(y)|``."""
        return float(np.mean(np.exp(y * np.cos(self.nodes()))))


def _guard(y: float) -> float:
    y = float(y)
    if not math.isfinite(y) or abs(y) > Y_LIMIT:
        raise Overflow(f"|y| must not exceed {Y_LIMIT}, got {y!r}")
    return y


def eval_series(
    fam: CosexpFamily, k: int, y: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Sum the defining power series.

    Terms are included until one falls below ``tol.series_eps`` times
    ``max(1, |partial sum|)``.  The retained terms are then added exactly as
    rationals (``y`` is a dyadic fraction), so the only rounding is the final
    conversion to float.
    """
    fam._check_index(k)
    y = _guard(y)
    if y == 0.0:
        return 1.0 if k == 0 else 0.0
    n = fam.n
    alternating = fam.variant is Variant.PLANAR

    # choose the truncation point with float estimates
    log_y = math.log(abs(y))
    partial = 0.0
    p = 0
    while True:
        e = k + p * n
        log_term = e * log_y - math.lgamma(e + 1)
        term = math.exp(log_term) if log_term < 700 else math.inf
        sign = -1.0 if (alternating and p % 2) else 1.0
        if y < 0 and e % 2:
            sign = -sign
        if term < math.inf:
            partial += sign * term
        # past the peak the terms only shrink
        if e > abs(y) and term < tol.series_eps * max(1.0, abs(partial)):
            break
        p += 1
        if p > MAX_TERMS:
            raise NotConverged(f"series for {fam.symbol}_{n}{k}({y}) exceeded {MAX_TERMS} terms")
    last = p

    # exact sum: y = num/den, put everything over den^N N!
    num, den = y.as_integer_ratio()
    big_n = k + last * n
    numerator = 0
    ratio = 1  # N! / e!
    for q in range(last, -1, -1):
        e = k + q * n
        if q < last:
            for j in range(e + 1, e + n + 1):
                ratio *= j
        term = num**e * den ** (big_n - e) * ratio
        numerator += -term if (alternating and q % 2) else term
    denominator = den**big_n * math.factorial(big_n)
    return numerator / denominator


def eval_closed(fam: CosexpFamily, k: int, y: float) -> float:
    """Finite trigonometric-exponential sum over ``n`` nodes."""
    fam._check_index(k)
    y = _guard(y)
    a = fam.nodes()
    return float(np.mean(np.exp(y * np.cos(a)) * np.cos(y * np.sin(a) - k * a)))


def eval_all(fam: CosexpFamily, y: float) -> np.ndarray:
    """All ``n`` functions of the family at ``y``, via the closed form."""
    y = _guard(y)
    a = fam.nodes()
    k = np.arange(fam.n)[:, None]
    return np.mean(np.exp(y * np.cos(a)) * np.cos(y * np.sin(a) - k * a), axis=1)


def polar_complex(n: int, k: int, z: complex) -> complex:
    """``g_nk`` continued to a complex argument."""
    total = 0j
    for l in range(n):
        w = cmath.exp(2j * math.pi * l / n)
        total += cmath.exp(z * w) / w**k
    return total / n


def planar_via_polar(n: int, k: int, y: float) -> float:
    """``f_nk(y)`` from ``exp(-i pi k / n) g_nk(exp(i pi / n) y)``."""
    value = cmath.exp(-1j * math.pi * k / n) * polar_complex(n, k, cmath.exp(1j * math.pi / n) * y)
    return value.real


def exp_basis(variant, n: int, k: int, y: float) -> NComplex:
    """``exp(h_k y)`` assembled from cosexponentials.

    Polar: ``sum_p h_{kp mod n} g_np(y)``.  Planar: the same placement with
    sign ``(-1)^floor(kp/n)``, using ``g`` for even ``k`` and ``f`` for odd
    ``k`` (because ``h_k^n`` is ``+1`` or ``-1`` accordingly).
    """
    variant = Variant.coerce(variant)
    if not 0 <= k < n:
        raise DomainError(f"basis index k={k} outside [0, {n - 1}]")
    if variant is Variant.PLANAR and k % 2:
        values = eval_all(CosexpFamily(n, Variant.PLANAR), y)
    else:
        values = eval_all(CosexpFamily(n, Variant.POLAR), y)
    x = np.zeros(n)
    for p in range(n):
        wraps, index = divmod(k * p, n)
        sign = -1.0 if (variant is Variant.PLANAR and wraps % 2) else 1.0
        x[index] += sign * values[p]
    return NComplex(x, variant)


def cosexp_vector(fam: CosexpFamily, y: float) -> NComplex:
    """``g_n0(y) + h_1 g_n1(y) + ...``, i.e. ``exp(h_1 y)``."""
    return NComplex(eval_all(fam, y), fam.variant)
