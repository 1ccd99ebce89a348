"""Spectral coordinates, idempotent bases and geometric variables.

The spectral coordinates of ``u`` are cosine/sine sums of its components:

polar
    ``v_+ = sum x_p``, ``v_- = sum (-1)^p x_p`` (even n only), and for
    ``k = 1 .. floor((n-1)/2)`` the pair
    ``(v_k, v~_k) = (sum x_p cos(2 pi k p / n), sum x_p sin(2 pi k p / n))``.
planar
    only pairs, ``k = 1 .. n/2``, at frequencies ``pi (2k-1) / n``.

Multiplication acts slot by slot: the real slots multiply as reals and each
pair multiplies as the complex number ``v_k + i v~_k``.  Internally the slots
are held in one complex vector (real slots have zero imaginary part), which is
what every other module manipulates.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_TOLERANCES, NComplex, Tolerances, Variant, check_dimension
from .errors import AmplitudeUndefined, DegenerateAngle, DomainError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SlotLayout:
    n: int
    variant: Variant
    real: tuple[str, ...]  # names of the real slots, in order
    frequencies: tuple[float, ...]  # angular frequency of each pair slot

    @property
    def n_pairs(self) -> int:
        return len(self.frequencies)

    @property
    def size(self) -> int:
        return len(self.real) + self.n_pairs

    def names(self) -> list[str]:
        return list(self.real) + [f"rho_{k}" for k in range(1, self.n_pairs + 1)]


@functools.lru_cache(maxsize=None)
def slot_layout(n: int, variant) -> SlotLayout:
    variant = Variant.coerce(variant)
    check_dimension(n, variant)
    if variant is Variant.POLAR:
        real = ("v_plus", "v_minus") if n % 2 == 0 else ("v_plus",)
        freqs = tuple(TWO_PI * k / n for k in range(1, (n - 1) // 2 + 1))
    else:
        real = ()
        freqs = tuple(math.pi * (2 * k - 1) / n for k in range(1, n // 2 + 1))
    return SlotLayout(n, variant, real, freqs)


def _unit_circle(num: np.ndarray, den: int) -> np.ndarray:
    """``exp(i pi num / den)``, exact at multiples of a quarter turn."""
    z = np.exp(1j * np.pi * num / den)
    quarter = (2 * num) % den == 0
    exact = np.array([1, 1j, -1, -1j])[((2 * num) // den) % 4]
    return np.where(quarter, exact, z)


@functools.lru_cache(maxsize=None)
def _transforms(n: int, variant: Variant) -> tuple[np.ndarray, np.ndarray]:
    layout = slot_layout(n, variant)
    p = np.arange(n)
    rows, back = [], []
    for name in layout.real:
        w = np.ones(n) if name == "v_plus" else (-1.0) ** p
        rows.append(w.astype(complex))
        back.append(w.astype(complex) / n)
    for k in range(1, layout.n_pairs + 1):
        # frequency pi * step / n, with the angle reduced exactly in integers
        step = 2 * k if variant is Variant.POLAR else 2 * k - 1
        w = _unit_circle((step * p) % (2 * n), n)
        rows.append(w)
        back.append(2.0 / n * np.conj(w))
    forward = np.array(rows).reshape(layout.size, n)
    backward = np.array(back).reshape(layout.size, n)
    forward.setflags(write=False)
    backward.setflags(write=False)
    return forward, backward


def components_to_slots(x: np.ndarray, variant) -> np.ndarray:
    """Spectral slot vector(s) of component array(s) of shape ``(..., n)``."""
    x = np.asarray(x, dtype=float)
    forward, _ = _transforms(x.shape[-1], Variant.coerce(variant))
    return x @ forward.T


def slots_to_components(slots: np.ndarray, n: int, variant) -> np.ndarray:
    _, backward = _transforms(n, Variant.coerce(variant))
    return np.real(np.asarray(slots) @ backward)


def to_slots(u: NComplex) -> np.ndarray:
    return components_to_slots(u.x, u.variant)


def from_slots(slots: np.ndarray, n: int, variant) -> NComplex:
    return NComplex(slots_to_components(slots, n, variant), variant)


def nodal_coordinates(u: NComplex, tol: Tolerances = DEFAULT_TOLERANCES) -> list[str]:
    """Names of the spectral coordinates of ``u`` that vanish (relative test)."""
    layout = slot_layout(u.n, u.variant)
    threshold = tol.node_eps * max(float(np.linalg.norm(u.x)), 1.0)
    mags = np.abs(to_slots(u))
    return [name for name, m in zip(layout.names(), mags) if m <= threshold]


@dataclass(frozen=True)
class Spectrum:
    """Spectral coordinates ``(v_+, v_-, {(v_k, v~_k)})`` of a number."""

    n: int
    variant: Variant
    v_plus: float | None
    v_minus: float | None
    pairs: np.ndarray = field(repr=False)  # shape (K, 2)

    @classmethod
    def from_slot_vector(cls, slots: np.ndarray, n: int, variant) -> "Spectrum":
        layout = slot_layout(n, variant)
        reals = dict(zip(layout.real, np.real(slots[: len(layout.real)])))
        z = np.asarray(slots[len(layout.real):])
        pairs = np.column_stack([z.real, z.imag]) if z.size else np.zeros((0, 2))
        pairs.setflags(write=False)
        v_plus = reals.get("v_plus")
        v_minus = reals.get("v_minus")
        return cls(
            n,
            layout.variant,
            None if v_plus is None else float(v_plus),
            None if v_minus is None else float(v_minus),
            pairs,
        )

    def slot_vector(self) -> np.ndarray:
        layout = slot_layout(self.n, self.variant)
        reals = [getattr(self, name) for name in layout.real]
        z = self.pairs[:, 0] + 1j * self.pairs[:, 1]
        return np.concatenate([np.asarray(reals, dtype=complex), z])

    @property
    def rho(self) -> np.ndarray:
        """Pair radii ``rho_k``."""
        return np.hypot(self.pairs[:, 0], self.pairs[:, 1])

    def determinant(self) -> float:
        nu = float(np.prod(self.rho**2))
        if self.v_plus is not None:
            nu *= self.v_plus
        if self.v_minus is not None:
            nu *= self.v_minus
        return nu

    def unitary_coordinates(self) -> dict:
        """The rotated coordinates ``xi_+, xi_-, xi_k, eta_k``.

        The map from the components to these coordinates is orthogonal, so
        their squared sum equals the squared modulus.
        """
        root_n = math.sqrt(self.n)
        scale = math.sqrt(2.0 / self.n)
        return {
            "xi_plus": None if self.v_plus is None else self.v_plus / root_n,
            "xi_minus": None if self.v_minus is None else self.v_minus / root_n,
            "xi": self.pairs[:, 0] * scale,
            "eta": self.pairs[:, 1] * scale,
        }

    def to_json(self) -> dict:
        return {
            "v_plus": self.v_plus,
            "v_minus": self.v_minus,
            "pairs": [[float(a), float(b)] for a, b in self.pairs],
        }


def to_spectrum(u: NComplex) -> Spectrum:
    return Spectrum.from_slot_vector(to_slots(u), u.n, u.variant)


def from_spectrum(s: Spectrum) -> NComplex:
    return from_slots(s.slot_vector(), s.n, s.variant)


@dataclass(frozen=True)
class CanonicalBasis:
    """Idempotent basis ``e_+, e_-, e_k, e~_k`` in the ambient algebra."""

    e_plus: NComplex | None
    e_minus: NComplex | None
    e: tuple[NComplex, ...]
    e_tilde: tuple[NComplex, ...]

    def unit(self) -> NComplex:
        """Sum of the idempotents; equals the identity."""
        total = None
        for part in (self.e_plus, self.e_minus, *self.e):
            if part is not None:
                total = part if total is None else total + part
        return total


def canonical_basis(n: int, variant=Variant.POLAR) -> CanonicalBasis:
    variant = Variant.coerce(variant)
    layout = slot_layout(n, variant)

    def unit_slot(i: int, value: complex = 1.0) -> NComplex:
        slots = np.zeros(layout.size, dtype=complex)
        slots[i] = value
        return from_slots(slots, n, variant)

    n_real = len(layout.real)
    reals = {name: unit_slot(i) for i, name in enumerate(layout.real)}
    e = tuple(unit_slot(n_real + k) for k in range(layout.n_pairs))
    e_tilde = tuple(unit_slot(n_real + k, 1j) for k in range(layout.n_pairs))
    return CanonicalBasis(reals.get("v_plus"), reals.get("v_minus"), e, e_tilde)


@dataclass(frozen=True)
class GeometricForm:
    """Modulus, amplitude and angular variables of a number.

    ``rho`` is ``None`` when the amplitude is undefined (polar with
    determinant <= 0).  ``psi[j]`` holds the planar angle with
    ``tan = rho_1 / rho_{j+2}``.  ``theta_plus``/``theta_minus`` are ``None``
    where the polar angle does not exist (planar numbers, odd n for
    ``theta_minus``, or polar n = 2 where there is no pair).
    """

    d: float
    rho: float | None
    rho_k: tuple[float, ...]
    phi: tuple[float, ...]
    psi: tuple[float, ...]
    theta_plus: float | None
    theta_minus: float | None
    F_n: int

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "rho": self.rho,
            "rho_k": list(self.rho_k),
            "phi": list(self.phi),
            "psi": list(self.psi),
            "theta_plus": self.theta_plus,
            "theta_minus": self.theta_minus,
            "F_n": self.F_n,
        }


def azimuth(z) -> np.ndarray:
    """Phase reduced into ``[0, 2 pi)``."""
    phi = np.mod(np.angle(z), TWO_PI)
    # mod can round a tiny negative angle up to exactly 2 pi
    return np.where(phi >= TWO_PI, 0.0, phi)


def geometric_form(
    u: NComplex,
    tol: Tolerances = DEFAULT_TOLERANCES,
    *,
    require_amplitude: bool = False,
) -> GeometricForm:
    """Angular description of ``u``.

    Raises
    ------
    DegenerateAngle
        If some ``rho_k`` vanishes, leaving ``phi_k`` undefined.
    AmplitudeUndefined
        If ``require_amplitude`` and the amplitude does not exist.
    """
    s = to_spectrum(u)
    d = float(np.linalg.norm(u.x))
    rho_k = s.rho
    threshold = tol.node_eps * max(d, 1.0)
    for k, r in enumerate(rho_k, start=1):
        if r <= threshold:
            raise DegenerateAngle(f"phi_{k}")

    nu = s.determinant()
    if u.variant is Variant.PLANAR or nu > 0:
        rho = abs(nu) ** (1.0 / u.n)
    else:
        rho = None
        if require_amplitude:
            raise AmplitudeUndefined(f"determinant {nu!r} is not positive")

    z = s.pairs[:, 0] + 1j * s.pairs[:, 1]
    phi = tuple(float(a) for a in azimuth(z))
    psi = tuple(float(math.atan2(rho_k[0], r)) for r in rho_k[1:])
    theta_plus = theta_minus = None
    if u.variant is Variant.POLAR and rho_k.size:
        lift = math.sqrt(2.0) * rho_k[0]
        theta_plus = math.atan2(lift, s.v_plus)
        if s.v_minus is not None:
            theta_minus = math.atan2(lift, s.v_minus)
    F_n = 1 if (u.variant is Variant.POLAR and u.n % 2 == 0) else 0
    return GeometricForm(
        d=d,
        rho=rho,
        rho_k=tuple(float(r) for r in rho_k),
        phi=phi,
        psi=psi,
        theta_plus=theta_plus,
        theta_minus=theta_minus,
        F_n=F_n,
    )


def spectral_of(n: int, variant, *, v_plus=None, v_minus=None, pairs=()) -> NComplex:
    """Build a number directly from spectral coordinates.

    ``pairs`` may hold complex numbers or ``(v, v~)`` tuples; missing slots are
    zero.
    """
    layout = slot_layout(n, Variant.coerce(variant))
    slots = np.zeros(layout.size, dtype=complex)
    for i, name in enumerate(layout.real):
        value = {"v_plus": v_plus, "v_minus": v_minus}[name]
        if value is not None:
            slots[i] = value
    if len(pairs) > layout.n_pairs:
        raise DomainError(f"at most {layout.n_pairs} pairs for this algebra")
    for k, z in enumerate(pairs):
        if not isinstance(z, (complex, float, int, np.number)):
            z = complex(z[0], z[1])
        slots[len(layout.real) + k] = z
    return from_slots(slots, n, layout.variant)
