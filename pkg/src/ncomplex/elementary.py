"""exp, log and real powers; exponential and trigonometric forms.

All three functions act slot by slot on the spectral coordinates: real slots
see the real function, pair slots the complex one.  The principal azimuth is
taken in ``[0, 2 pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, NComplex, Tolerances, Variant
from .errors import DegenerateAngle, DomainError, NonInvertible, Overflow
from .spectral import (
    TWO_PI,
    azimuth,
    canonical_basis,
    components_to_slots,
    from_slots,
    geometric_form,
    nodal_coordinates,
    slot_layout,
    slots_to_components,
    to_slots,
)

EXP_LIMIT = 700.0


def exp_slots(slots: np.ndarray) -> np.ndarray:
    if np.any(np.real(slots) > EXP_LIMIT):
        raise Overflow("spectral coordinate too large for exp")
    return np.exp(slots)


def exp_components(x: np.ndarray, variant) -> np.ndarray:
    """Vectorized ``exp`` on component arrays of shape ``(..., n)``."""
    x = np.asarray(x, dtype=float)
    return slots_to_components(exp_slots(components_to_slots(x, variant)), x.shape[-1], variant)


def exp(u: NComplex) -> NComplex:
    return from_slots(exp_slots(to_slots(u)), u.n, u.variant)


def _log_domain(u: NComplex, tol: Tolerances) -> np.ndarray:
    layout = slot_layout(u.n, u.variant)
    slots = to_slots(u)
    threshold = tol.node_eps * max(float(np.linalg.norm(u.x)), 1.0)
    problems = []
    for name, v in zip(layout.real, slots.real):
        if v <= threshold:
            problems.append(f"{name} > 0 (got {v:.6g})")
    for k, z in enumerate(slots[len(layout.real):], start=1):
        if abs(z) <= threshold:
            problems.append(f"rho_{k} != 0")
    if problems:
        raise DomainError("logarithm undefined: requires " + ", ".join(problems))
    return slots


def _principal_log(slots: np.ndarray, n_real: int) -> np.ndarray:
    out = np.empty_like(slots)
    out[:n_real] = np.log(slots[:n_real].real)
    z = slots[n_real:]
    out[n_real:] = np.log(np.abs(z)) + 1j * azimuth(z)
    return out


def log(u: NComplex, tol: Tolerances = DEFAULT_TOLERANCES) -> NComplex:
    """Principal logarithm.

    Raises
    ------
    DomainError
        If ``v_+ <= 0`` or ``v_- <= 0`` (polar) or some ``rho_k`` vanishes.
    """
    slots = _log_domain(u, tol)
    n_real = len(slot_layout(u.n, u.variant).real)
    return from_slots(_principal_log(slots, n_real), u.n, u.variant)


def pow(u: NComplex, m: float, tol: Tolerances = DEFAULT_TOLERANCES) -> NComplex:
    """Real power ``u**m``.

    Integer exponents are valid everywhere (negative ones need an invertible
    ``u``); other exponents take the principal branch and need ``u`` in the
    log domain.
    """
    m = float(m)
    layout = slot_layout(u.n, u.variant)
    if m.is_integer():
        e = int(m)
        if e < 0:
            vanishing = nodal_coordinates(u, tol)
            if vanishing:
                raise NonInvertible(vanishing)
            slots = 1.0 / to_slots(u)
            e = -e
        else:
            slots = to_slots(u)
        return from_slots(slots**e, u.n, u.variant)
    slots = _log_domain(u, tol)
    n_real = len(layout.real)
    out = np.empty_like(slots)
    out[:n_real] = slots[:n_real].real ** m
    z = slots[n_real:]
    out[n_real:] = np.abs(z) ** m * np.exp(1j * m * azimuth(z))
    return from_slots(out, u.n, u.variant)


@dataclass(frozen=True)
class ExponentialForm:
    """``u = rho * exp(sum_p h_p c_p + sum_k e~_k phi_k)``.

    ``h_coefficients[p]`` is ``c_p``; index 0 is always 0 because the scalar
    part is carried by ``rho``.
    """

    n: int
    variant: Variant
    rho: float
    h_coefficients: np.ndarray
    phi: tuple[float, ...]

    def exponent(self) -> NComplex:
        basis = canonical_basis(self.n, self.variant)
        total = NComplex(self.h_coefficients, self.variant)
        for e_tilde, phi in zip(basis.e_tilde, self.phi):
            total = total + e_tilde * phi
        return total

    def reassemble(self) -> NComplex:
        return exp(self.exponent()) * self.rho


def _require_pairs(u: NComplex, what: str) -> None:
    if slot_layout(u.n, u.variant).n_pairs == 0:
        raise DomainError(f"the {what} needs at least one azimuthal pair (n >= 3)")


def exponential_form(u: NComplex, tol: Tolerances = DEFAULT_TOLERANCES) -> ExponentialForm:
    """Amplitude, log-tangent coefficients and azimuths of ``u``."""
    _require_pairs(u, "exponential form")
    _log_domain(u, tol)
    g = geometric_form(u, tol, require_amplitude=True)
    layout = slot_layout(u.n, u.variant)
    n = u.n
    p = np.arange(n)
    c = np.zeros(n)
    for theta, alternating in ((g.theta_plus, False), (g.theta_minus, True)):
        if theta is None:
            continue
        t = math.tan(theta)
        if not 0.0 < t < math.inf:
            raise DegenerateAngle("theta_minus" if alternating else "theta_plus")
        weight = (-1.0) ** p if alternating else np.ones(n)
        c += weight * math.log(math.sqrt(2.0) / t) / n
    for j, psi in enumerate(g.psi):
        t = math.tan(psi)
        if not 0.0 < t < math.inf:
            raise DegenerateAngle(f"psi_{j + 1}")
        freq = layout.frequencies[j + 1]
        c -= 2.0 / n * np.cos(freq * p) * math.log(t)
    c[0] = 0.0
    c.setflags(write=False)
    return ExponentialForm(n, u.variant, g.rho, c, g.phi)


@dataclass(frozen=True)
class TrigonometricForm:
    scalar: float
    direction: NComplex
    phase: NComplex

    def reassemble(self) -> NComplex:
        return (self.direction * exp(self.phase)) * self.scalar


def trigonometric_form(u: NComplex, tol: Tolerances = DEFAULT_TOLERANCES) -> TrigonometricForm:
    """Split ``u`` into a scalar, an ``e``-basis direction and a unit phase.

    The direction is ``e_+ sqrt2/tan(theta_+) + F e_- sqrt2/tan(theta_-) + e_1
    + sum e_k / tan(psi_{k-1})`` and the scalar is ``d sqrt(n/2)`` over the
    root of the matching sum of squared reciprocal tangents.
    """
    _require_pairs(u, "trigonometric form")
    g = geometric_form(u, tol)
    basis = canonical_basis(u.n, u.variant)
    direction = basis.e[0]
    norm = 1.0
    for e_k, psi in zip(basis.e[1:], g.psi):
        inv = 1.0 / math.tan(psi)
        direction = direction + e_k * inv
        norm += inv * inv
    for e_r, theta in ((basis.e_plus, g.theta_plus), (basis.e_minus, g.theta_minus)):
        if theta is None or e_r is None:
            continue
        inv = 1.0 / math.tan(theta)
        direction = direction + e_r * (math.sqrt(2.0) * inv)
        norm += inv * inv
    scalar = g.d * math.sqrt(u.n / 2.0) / math.sqrt(norm)
    phase = NComplex.zero(u.n, u.variant)
    for e_tilde, phi in zip(basis.e_tilde, g.phi):
        phase = phase + e_tilde * phi
    return TrigonometricForm(scalar, direction, phase)


def exp_phase_shift(u: NComplex, k: int, turns: int = 1) -> NComplex:
    """``u + 2 pi turns e~_k``; ``exp`` is invariant under this shift."""
    basis = canonical_basis(u.n, u.variant)
    return u + basis.e_tilde[k] * (TWO_PI * turns)
