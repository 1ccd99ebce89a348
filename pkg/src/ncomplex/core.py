"""Polar and planar n-complex numbers and their ring operations.

A number ``u = x_0 + h_1 x_1 + ... + h_{n-1} x_{n-1}`` is stored as the real
component vector ``x``.  The two algebras share the index rule
``h_j h_k = +/- h_{(j+k) mod n}``; they differ only in the sign, which is
always ``+`` for the polar numbers and ``-`` for the planar numbers whenever
``j + k >= n``.
"""

from __future__ import annotations

import enum
import functools
import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError


class Variant(str, enum.Enum):
    POLAR = "polar"
    PLANAR = "planar"

    @classmethod
    def coerce(cls, value) -> "Variant":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown variant {value!r}") from None


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared across the package.

    node_eps
        A spectral coordinate counts as vanishing when its magnitude is at
        most ``node_eps * max(d, 1)``.
    cmp_eps
        Comparison tolerance used by self-checks.
    series_eps
        Term-magnitude cutoff for truncated series.
    factor_tol
        Root residual tolerance for polynomial factorization, relative to the
        largest coefficient modulus.
    """

    node_eps: float = 1e-10
    cmp_eps: float = 1e-10
    series_eps: float = 1e-17
    factor_tol: float = 1e-9

    def __post_init__(self):
        for name in ("node_eps", "cmp_eps", "series_eps", "factor_tol"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive, got {value!r}")
        if self.node_eps > 1e-6 or self.cmp_eps > 1e-6:
            raise DomainError("node_eps and cmp_eps must not exceed 1e-6")


DEFAULT_TOLERANCES = Tolerances()


def check_dimension(n: int, variant: Variant) -> None:
    if int(n) != n or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n!r}")
    if variant is Variant.PLANAR and n % 2:
        raise DomainError(
            "planar numbers need an even dimension; use odd_planar_as_polar for odd n"
        )


def basis_product(variant, n: int, j: int, k: int) -> tuple[int, int]:
    """Return ``(sign, l)`` such that ``h_j h_k = sign * h_l``."""
    variant = Variant.coerce(variant)
    if not (0 <= j < n and 0 <= k < n):
        raise DomainError(f"basis indices must lie in [0, {n - 1}]")
    wraps, l = divmod(j + k, n)
    if variant is Variant.PLANAR and wraps:
        return -1, l
    return 1, l


@functools.lru_cache(maxsize=None)
def _product_tables(variant: Variant, n: int) -> tuple[np.ndarray, np.ndarray]:
    # component k of u*v is sum_l sign[k, l] * x_l * y_{index[k, l]}
    k = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    index = (k - l) % n
    sign = np.ones((n, n))
    if variant is Variant.PLANAR:
        sign[l > k] = -1.0
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


def mul_components(variant, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Multiply component arrays of shape ``(..., n)`` under either rule.

    Works for any n, including odd planar, so it can serve the odd-dimension
    equivalence map.
    """
    variant = Variant.coerce(variant)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.shape[-1]
    index, sign = _product_tables(variant, n)
    return np.einsum("kl,...l,...kl->...k", sign, x, y[..., index])


_LITERAL = re.compile(
    r"^\s*(?P<variant>polar|planar)\s*:\s*n\s*=\s*(?P<n>\d+)\s*:\s*\[(?P<body>[^\]]*)\]\s*$",
    re.IGNORECASE,
)


def _format_float(value: float) -> str:
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    if text == "-0":
        text = "0"
    return text


class NComplex:
    """An immutable n-complex number of polar or planar type.

    Parameters
    ----------
    x : sequence of float
        Components ``x_0 .. x_{n-1}``; ``n`` is ``len(x)``.
    variant : Variant or str
        ``"polar"`` (default) or ``"planar"``.
    """

    __slots__ = ("_x", "_variant")

    def __init__(self, x, variant=Variant.POLAR):
        variant = Variant.coerce(variant)
        arr = np.array(x, dtype=float)
        if arr.ndim != 1:
            raise DomainError("components must form a flat sequence")
        check_dimension(arr.shape[0], variant)
        if not np.all(np.isfinite(arr)):
            raise DomainError("components must be finite")
        arr.setflags(write=False)
        self._x = arr
        self._variant = variant

    # construction helpers

    @classmethod
    def identity(cls, n: int, variant=Variant.POLAR) -> "NComplex":
        return cls.basis(n, 0, variant)

    @classmethod
    def zero(cls, n: int, variant=Variant.POLAR) -> "NComplex":
        return cls(np.zeros(n), variant)

    @classmethod
    def basis(cls, n: int, k: int, variant=Variant.POLAR) -> "NComplex":
        x = np.zeros(n)
        x[k] = 1.0
        return cls(x, variant)

    @classmethod
    def from_literal(cls, text: str) -> "NComplex":
        """Parse ``polar:n=4:[1,0,2,-3]``."""
        match = _LITERAL.match(text)
        if match is None:
            raise DomainError(f"malformed n-complex literal: {text!r}")
        body = match.group("body").strip()
        try:
            x = [float(part) for part in body.split(",")] if body else []
        except ValueError:
            raise DomainError(f"malformed component in literal: {text!r}") from None
        n = int(match.group("n"))
        if len(x) != n:
            raise DimensionMismatch(f"literal declares n={n} but has {len(x)} components")
        return cls(x, match.group("variant"))

    @classmethod
    def from_json(cls, data) -> "NComplex":
        if isinstance(data, str):
            data = json.loads(data)
        x = data["x"]
        if "n" in data and int(data["n"]) != len(x):
            raise DimensionMismatch(f"declared n={data['n']} but {len(x)} components given")
        return cls(x, data.get("variant", "polar"))

    def to_literal(self) -> str:
        body = ",".join(_format_float(v) for v in self._x)
        return f"{self._variant.value}:n={self.n}:[{body}]"

    def to_json(self) -> dict:
        return {"variant": self._variant.value, "n": self.n, "x": [float(v) for v in self._x]}

    # accessors

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def n(self) -> int:
        return self._x.shape[0]

    @property
    def variant(self) -> Variant:
        return self._variant

    def _like(self, x) -> "NComplex":
        return NComplex(x, self._variant)

    def _check_compatible(self, other: "NComplex") -> None:
        if not isinstance(other, NComplex):
            raise TypeError(f"expected NComplex, got {type(other).__name__}")
        if other.n != self.n or other.variant is not self._variant:
            raise DimensionMismatch(
                f"{self._variant.value} n={self.n} vs {other.variant.value} n={other.n}"
            )

    # arithmetic

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return self + other * NComplex.identity(self.n, self._variant)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self._x)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self + (-other)
        self._check_compatible(other)
        return self._like(self._x - other.x)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._like(self._x * float(other))
        if isinstance(other, NComplex):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._like(self._x / float(other))
        return NotImplemented

    def __abs__(self) -> float:
        return modulus(self)

    def __eq__(self, other):
        if not isinstance(other, NComplex):
            return NotImplemented
        return (
            other.variant is self._variant
            and other.n == self.n
            and bool(np.all(other.x == self._x))
        )

    def __hash__(self):
        return hash((self._variant, self._x.tobytes()))

    def __repr__(self):
        return f"NComplex({self.to_literal()!r})"

    def allclose(self, other: "NComplex", tol: float = 1e-12) -> bool:
        """Norm-relative closeness: ``|u - v| <= tol * max(|v|, 1)``."""
        self._check_compatible(other)
        scale = max(float(np.linalg.norm(other.x)), 1.0)
        return float(np.linalg.norm(self._x - other.x)) <= tol * scale

    def inverse(self, tol: Tolerances = DEFAULT_TOLERANCES) -> "NComplex":
        return inverse(self, tol)


def add(u: NComplex, v: NComplex) -> NComplex:
    u._check_compatible(v)
    return NComplex(u.x + v.x, u.variant)


def mul(u: NComplex, v: NComplex) -> NComplex:
    u._check_compatible(v)
    return NComplex(mul_components(u.variant, u.x, v.x), u.variant)


def modulus(u: NComplex) -> float:
    return float(np.linalg.norm(u.x))


def determinant(u: NComplex) -> float:
    """Determinant of the multiplication map, from the spectral coordinates."""
    from .spectral import to_spectrum

    return to_spectrum(u).determinant()


def inverse(u: NComplex, tol: Tolerances = DEFAULT_TOLERANCES) -> NComplex:
    """Multiplicative inverse, computed by inverting each spectral coordinate.

    Raises
    ------
    NonInvertible
        If ``u`` lies (within ``tol.node_eps``) on a nodal hypersurface.
    """
    from .spectral import from_slots, nodal_coordinates, to_slots

    vanishing = nodal_coordinates(u, tol)
    if vanishing:
        from .errors import NonInvertible

        raise NonInvertible(vanishing)
    return from_slots(1.0 / to_slots(u), u.n, u.variant)


def odd_planar_as_polar(x, n: int | None = None) -> NComplex:
    """Relabel an odd-dimension planar-rule number as a polar number.

    With ``x`` the components under the planar product rule, the result ``x'``
    satisfies ``x_{2l} = x'_l`` and ``x_{2m-1} = -x'_{(n-1)/2+m}``; the map
    turns planar-rule products into polar products.
    """
    x = np.asarray(x, dtype=float)
    if n is None:
        n = x.shape[0]
    if x.shape != (n,):
        raise DimensionMismatch(f"expected {n} components, got {x.shape[0]}")
    if n % 2 == 0:
        raise DomainError("the planar-to-polar equivalence exists only for odd n")
    half = (n - 1) // 2
    xp = np.empty(n)
    for l in range(half + 1):
        xp[l] = x[2 * l]
    for m in range(1, half + 1):
        xp[half + m] = -x[2 * m - 1]
    return NComplex(xp, Variant.POLAR)
