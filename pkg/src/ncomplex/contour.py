"""Path integrals along polygonal loops, winding numbers and residues.

Around a pole ``u0`` the form ``du / (u - u0)`` splits into differentials of
single-valued variables (amplitude and log-tangents of the polar and planar
angles) plus ``sum_k e~_k d phi_k``.  Only the azimuths can accumulate around
a loop, so

    loop integral of f(u) du / (u - u0) = 2 pi f(u0) sum_k e~_k w_k

where ``w_k`` is the winding number of the loop around ``u0`` after both are
projected onto the plane of the ``k``-th spectral pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_TOLERANCES, NComplex, Tolerances, Variant, mul_components
from .errors import DimensionMismatch, DomainError, NonInvertible, NotConverged, OnCurve, SingularPath
from .functions import Constant, NFunction, Pole, as_function
from .spectral import (
    TWO_PI,
    canonical_basis,
    components_to_slots,
    from_slots,
    nodal_coordinates,
    slot_layout,
    to_slots,
)


@dataclass(frozen=True)
class PiecewisePath:
    variant: Variant
    n: int
    vertices: tuple[NComplex, ...]
    closed: bool = True

    def __post_init__(self):
        variant = Variant.coerce(self.variant)
        object.__setattr__(self, "variant", variant)
        verts = tuple(v if isinstance(v, NComplex) else NComplex(v, variant) for v in self.vertices)
        if len(verts) < 2:
            raise DomainError("a path needs at least two vertices")
        for v in verts:
            if v.n != self.n or v.variant is not variant:
                raise DimensionMismatch("all vertices must share n and variant")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_json(cls, data, variant=None, n=None) -> "PiecewisePath":
        vertices = data["vertices"]
        variant = data.get("variant", variant or "polar")
        n = int(data.get("n", n or len(vertices[0])))
        return cls(variant, n, tuple(vertices), bool(data.get("closed", True)))

    def points(self) -> np.ndarray:
        return np.array([v.x for v in self.vertices])

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        pts = self.points()
        if self.closed:
            return pts, np.roll(pts, -1, axis=0)
        return pts[:-1], pts[1:]


@dataclass(frozen=True)
class Quadrature:
    """Refinement control for :func:`integrate`.

    Each level doubles the number of midpoint-rule subdivisions per edge;
    successive Romberg-extrapolated estimates must agree to ``tol``.
    """

    tol: float = 1e-10
    min_subdivisions: int = 1
    max_levels: int = 14
    max_segments: int | None = None


def midpoint_sum(f, path: PiecewisePath, subdivisions: int) -> NComplex:
    """Composite midpoint rule with ``subdivisions`` pieces per edge."""
    value, _ = _midpoint(as_function(f), path, subdivisions, None)
    return NComplex(value, path.variant)


def _check_singular(f: NFunction, xs: np.ndarray, variant, tol: Tolerances) -> None:
    for center, _order in getattr(f, "singularities", ()):
        diff = xs - center.x
        slots = np.abs(components_to_slots(diff, variant))
        scale = np.maximum(np.linalg.norm(diff, axis=-1), 1.0)
        if np.any(slots <= tol.node_eps * scale[:, None]):
            raise SingularPath(
                f"path meets a singular hypersurface through {center.to_literal()}"
            )


def _midpoint(f: NFunction, path: PiecewisePath, s: int, tol: Tolerances | None):
    start, end = path.edges()
    t = (np.arange(s) + 0.5) / s
    step = (end - start) / s  # du on every piece of an edge
    xs = (start[:, None, :] + t[None, :, None] * (end - start)[:, None, :]).reshape(-1, path.n)
    if tol is not None:
        _check_singular(f, xs, path.variant, tol)
    values = f.batch(xs, path.variant).reshape(start.shape[0], s, path.n)
    products = mul_components(path.variant, values, step[:, None, :])
    return products.sum(axis=(0, 1)), start.shape[0] * s


@dataclass(frozen=True)
class Integral:
    value: NComplex
    segments: int
    change: float


def integrate_detailed(
    f, path: PiecewisePath, quad: Quadrature = Quadrature(), tol: Tolerances = DEFAULT_TOLERANCES
) -> Integral:
    f = as_function(f)
    # Romberg table over midpoint sums; their error expands in even powers of h
    row: list[np.ndarray] = []
    previous_est = None
    s = quad.min_subdivisions
    for _level in range(quad.max_levels + 1):
        raw, segments = _midpoint(f, path, s, tol)
        if quad.max_segments is not None and segments > quad.max_segments:
            break
        new_row = [raw]
        for j, old in enumerate(row, start=1):
            factor = 4.0**j
            new_row.append((factor * new_row[-1] - old) / (factor - 1.0))
        row = new_row
        est = row[-1]
        if previous_est is not None:
            change = float(np.linalg.norm(est - previous_est))
            if change < quad.tol:
                return Integral(NComplex(est, path.variant), segments, change)
        previous_est = est
        s *= 2
    estimate = None if previous_est is None else NComplex(previous_est, path.variant)
    raise NotConverged("quadrature did not reach the requested tolerance", estimate)


def integrate(
    f, path: PiecewisePath, quad: Quadrature = Quadrature(), tol: Tolerances = DEFAULT_TOLERANCES
) -> NComplex:
    """Integral of ``f(u) du`` along ``path``.

    Raises
    ------
    SingularPath
        If a sample point lies on a singular hypersurface of ``f`` (only for
        functions that declare ``singularities``, such as :class:`Pole`).
    NotConverged
        If the refinement limits are hit first.
    """
    return integrate_detailed(f, path, quad, tol).value


def project(u, k: int) -> np.ndarray:
    """Coordinates ``(xi_k, eta_k)`` of a number or component array."""
    if isinstance(u, NComplex):
        x, variant = u.x, u.variant
    else:
        x, variant = u
    layout = slot_layout(np.shape(x)[-1], variant)
    if not 1 <= k <= layout.n_pairs:
        raise DomainError(f"plane index k={k} outside [1, {layout.n_pairs}]")
    z = components_to_slots(x, variant)[..., len(layout.real) + k - 1]
    z = z * math.sqrt(2.0 / layout.n)
    return np.stack([np.real(z), np.imag(z)], axis=-1)


def winding_number(
    path: PiecewisePath, center: NComplex, k: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> int:
    """Winding of the loop around ``center`` in the ``(xi_k, eta_k)`` plane."""
    if not path.closed:
        raise DomainError("winding numbers need a closed path")
    pts = project((path.points(), path.variant), k) - project(center, k)
    nxt = np.roll(pts, -1, axis=0)
    seg = nxt - pts
    scale = max(1.0, float(np.max(np.abs(pts))))
    # distance from the origin to each projected segment
    length2 = np.sum(seg * seg, axis=1)
    t = np.clip(-np.sum(pts * seg, axis=1) / np.where(length2 > 0, length2, 1.0), 0.0, 1.0)
    nearest = pts + t[:, None] * seg
    if np.min(np.hypot(nearest[:, 0], nearest[:, 1])) <= tol.node_eps * scale:
        raise OnCurve(f"projected center lies on the projected loop in plane {k}")
    cross = pts[:, 0] * nxt[:, 1] - pts[:, 1] * nxt[:, 0]
    dot = np.sum(pts * nxt, axis=1)
    return int(round(float(np.sum(np.arctan2(cross, dot))) / TWO_PI))


@dataclass(frozen=True)
class ResidueCertificate:
    integral: NComplex
    predicted: NComplex
    winding: tuple[int, ...]
    max_abs_error: float
    segments: int = 0
    flagged: bool = False  # some winding outside {0, 1}

    def to_json(self) -> dict:
        return {
            "integral": self.integral.to_json(),
            "predicted": self.predicted.to_json(),
            "winding": list(self.winding),
            "max_abs_error": self.max_abs_error,
            "segments": self.segments,
            "flagged": self.flagged,
        }


def residue_check(
    f,
    u0: NComplex,
    path: PiecewisePath,
    quad: Quadrature = Quadrature(),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ResidueCertificate:
    """Compare the loop integral of ``f(u)/(u - u0)`` with the residue formula.

    ``f=None`` means the constant 1.
    """
    if f is None:
        f = Constant(NComplex.identity(u0.n, u0.variant))
    f = as_function(f)
    result = integrate_detailed(Pole(u0, 1, numerator=f), path, quad, tol)
    layout = slot_layout(u0.n, u0.variant)
    winding = tuple(winding_number(path, u0, k, tol) for k in range(1, layout.n_pairs + 1))
    basis = canonical_basis(u0.n, u0.variant)
    cyclic = NComplex.zero(u0.n, u0.variant)
    for e_tilde, w in zip(basis.e_tilde, winding):
        cyclic = cyclic + e_tilde * (TWO_PI * w)
    predicted = f(u0) * cyclic
    error = float(np.max(np.abs(result.value.x - predicted.x)))
    flagged = any(w not in (0, 1) for w in winding)
    return ResidueCertificate(result.value, predicted, winding, error, result.segments, flagged)


@dataclass(frozen=True)
class DlogDecomposition:
    """``du / (u - u0)`` split into single-valued and cyclic parts.

    The differentials of the geometric variables are exposed as
    ``d_ln_rho``, ``d_ln_cot_theta_plus`` (``d ln(sqrt2 / tan theta_+)``),
    ``d_ln_cot_theta_minus``, ``d_ln_tan_psi`` and ``d_phi``.
    """

    total: NComplex
    single_valued: NComplex
    cyclic: NComplex
    d_ln_rho: float
    d_ln_cot_theta_plus: float | None
    d_ln_cot_theta_minus: float | None
    d_ln_tan_psi: tuple[float, ...]
    d_phi: tuple[float, ...]

    def reconstruct_single_valued(self) -> NComplex:
        """Rebuild the single-valued part from the geometric differentials."""
        n, variant = self.total.n, self.total.variant
        layout = slot_layout(n, variant)
        p = np.arange(n)
        x = np.zeros(n)
        if self.d_ln_cot_theta_plus is not None:
            x += self.d_ln_cot_theta_plus / n
        if self.d_ln_cot_theta_minus is not None:
            x += (-1.0) ** p * self.d_ln_cot_theta_minus / n
        for j, d in enumerate(self.d_ln_tan_psi):
            x -= 2.0 / n * np.cos(layout.frequencies[j + 1] * p) * d
        x[0] = self.d_ln_rho
        return NComplex(x, variant)


def dlog_decomposition(
    u: NComplex, u0: NComplex, du: NComplex, tol: Tolerances = DEFAULT_TOLERANCES
) -> DlogDecomposition:
    """Exact first-order split of ``du / (u - u0)``.

    Each slot of the quotient is ``dz / z``: its real part is the
    differential of a logarithm of a modulus, its imaginary part (pair slots
    only) is ``d phi_k``.
    """
    w = u - u0
    vanishing = nodal_coordinates(w, tol)
    if vanishing:
        raise NonInvertible(vanishing)
    layout = slot_layout(w.n, w.variant)
    n_real = len(layout.real)
    r = to_slots(du) / to_slots(w)
    single = r.real.astype(complex)
    cyclic = np.zeros_like(r)
    cyclic[n_real:] = 1j * r[n_real:].imag
    reals = dict(zip(layout.real, r[:n_real].real))
    radial = r[n_real:].real  # d ln rho_k
    d_ln_rho = (float(np.sum(r[:n_real].real)) + 2.0 * float(np.sum(radial))) / w.n
    cot_plus = cot_minus = None
    psi: tuple[float, ...] = ()
    if radial.size:
        if "v_plus" in reals:
            cot_plus = float(reals["v_plus"] - radial[0])
        if "v_minus" in reals:
            cot_minus = float(reals["v_minus"] - radial[0])
        psi = tuple(float(radial[0] - radial[k]) for k in range(1, radial.size))
    return DlogDecomposition(
        total=from_slots(r, w.n, w.variant),
        single_valued=from_slots(single, w.n, w.variant),
        cyclic=from_slots(cyclic, w.n, w.variant),
        d_ln_rho=d_ln_rho,
        d_ln_cot_theta_plus=cot_plus,
        d_ln_cot_theta_minus=cot_minus,
        d_ln_tan_psi=psi,
        d_phi=tuple(float(v) for v in r[n_real:].imag),
    )


def circle_path(
    center: NComplex, radius: float, planes=(1,), segments: int = 64, radii=None
) -> PiecewisePath:
    """Polygon tracing a circle of ``radius`` in each listed pair plane.

    The circles are traversed simultaneously and counter-clockwise in the
    ``(xi_k, eta_k)`` coordinates; ``radii`` overrides the radius per plane.
    """
    layout = slot_layout(center.n, center.variant)
    base = to_slots(center)
    radii = radii or [radius] * len(planes)
    theta = TWO_PI * np.arange(segments) / segments
    scale = math.sqrt(layout.n / 2.0)  # xi -> v
    vertices = []
    for a in theta:
        slots = base.copy()
        for k, r in zip(planes, radii):
            slots[len(layout.real) + k - 1] += r * scale * complex(math.cos(a), math.sin(a))
        vertices.append(from_slots(slots, center.n, center.variant))
    return PiecewisePath(center.variant, center.n, tuple(vertices), True)
