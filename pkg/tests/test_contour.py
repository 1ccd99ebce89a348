import math

import numpy as np
import pytest

from ncomplex import DomainError, NComplex, NonInvertible, OnCurve, SingularPath, Variant, canonical_basis
from ncomplex.contour import (
    PiecewisePath,
    Quadrature,
    circle_path,
    dlog_decomposition,
    integrate,
    midpoint_sum,
    project,
    residue_check,
    winding_number,
)
from ncomplex.functions import Constant, Exp, Identity, Pole, Power
from ncomplex.spectral import from_slots, geometric_form, slot_layout, to_slots

from conftest import random_number

QUAD = Quadrature(tol=1e-10, max_segments=4096)
PAIRED = [(Variant.POLAR, 3), (Variant.POLAR, 4), (Variant.POLAR, 6), (Variant.PLANAR, 2), (Variant.PLANAR, 4)]


def offset_pole(center, shifts=None, real=0.8):
    """Pole displaced from ``center`` in every slot.

    ``shifts`` maps a plane index to a displacement measured in the circle's
    own radius units; planes not listed move by 1.  Real slots move by
    ``real`` so the pole is off every hypersurface a circle can touch.
    """
    n, variant = center.n, center.variant
    layout = slot_layout(n, variant)
    slots = to_slots(center).astype(complex)
    nr = len(layout.real)
    slots[:nr] += real
    scale = math.sqrt(n / 2.0)
    for k in range(1, layout.n_pairs + 1):
        slots[nr + k - 1] += (shifts or {}).get(k, 1.0) * scale * np.exp(0.7j)
    return from_slots(slots, n, variant)


def hexagon(rng, n, variant, scale=1.0):
    return PiecewisePath(variant, n, tuple(random_number(rng, n, variant, scale) for _ in range(6)))


def test_constant_around_closed_loop_vanishes(rng):
    path = hexagon(rng, 4, Variant.POLAR)
    one = Constant(NComplex.identity(4, Variant.POLAR))
    assert np.max(np.abs(integrate(one, path).x)) < 1e-12


@pytest.mark.parametrize("variant,n", PAIRED)
def test_identity_around_closed_loop_vanishes(rng, variant, n):
    assert np.max(np.abs(integrate(Identity(), hexagon(rng, n, variant)).x)) < 1e-10


def test_open_path_of_one_gives_displacement(rng):
    a, b = random_number(rng, 5, "polar"), random_number(rng, 5, "polar")
    path = PiecewisePath("polar", 5, (a, b), closed=False)
    got = integrate(Constant(NComplex.identity(5, "polar")), path)
    np.testing.assert_allclose(got.x, (b - a).x, atol=1e-13)


@pytest.mark.parametrize("variant,n", PAIRED)
def test_open_paths_are_path_independent(rng, variant, n):
    a, b = random_number(rng, n, variant), random_number(rng, n, variant)
    detour = tuple(random_number(rng, n, variant) for _ in range(3))
    direct = integrate(Exp(), PiecewisePath(variant, n, (a, b), closed=False))
    winding = integrate(Exp(), PiecewisePath(variant, n, (a, *detour, b), closed=False))
    np.testing.assert_allclose(winding.x, direct.x, atol=1e-9)
    # closed-form antiderivative of exp
    from ncomplex import exp

    np.testing.assert_allclose(direct.x, (exp(b) - exp(a)).x, atol=1e-9)


def test_unit_circle_winds_once():
    path = circle_path(NComplex.zero(4, "polar"), 1.0, planes=(1,), segments=64)
    assert winding_number(path, NComplex.zero(4, "polar"), 1) == 1


def test_center_outside_gives_zero_winding():
    path = circle_path(NComplex.zero(4, "polar"), 1.0, planes=(1,))
    far = NComplex([0, 3, 0, 0], "polar")
    assert winding_number(path, far, 1) == 0


def test_loop_confined_to_one_plane_does_not_wind_in_another():
    path = circle_path(NComplex.zero(6, "polar"), 1.0, planes=(1,))
    basis = canonical_basis(6, "polar")
    off = basis.e[1] * 0.5  # offset only in plane 2
    assert winding_number(path, off, 2) == 0


def test_center_on_projected_loop_raises():
    path = circle_path(NComplex.zero(4, "polar"), 1.0, planes=(1,), segments=16)
    on = NComplex(path.vertices[0].x, "polar")
    with pytest.raises(OnCurve):
        winding_number(path, on, 1)


def test_winding_needs_closed_path():
    path = PiecewisePath("polar", 3, ([0, 0, 0], [1, 0, 0]), closed=False)
    with pytest.raises(DomainError):
        winding_number(path, NComplex.zero(3, "polar"), 1)


def test_projection_index_validated():
    with pytest.raises(DomainError):
        project(NComplex.zero(4, "polar"), 2)


def test_planar_two_residue_is_two_pi_i():
    center = NComplex.zero(2, "planar")
    cert = residue_check(None, center, circle_path(center, 1.0), QUAD)
    np.testing.assert_allclose(cert.integral.x, [0.0, 2 * math.pi], atol=1e-9)
    assert cert.winding == (1,)
    assert not cert.flagged


def test_polar_four_inside_matches_first_plane_unit():
    center = NComplex([0.1, 0.2, -0.1, 0.05], "polar")
    path = circle_path(center, 1.0, planes=(1,))
    cert = residue_check(None, offset_pole(center, {1: 0.3}), path, QUAD)
    expected = canonical_basis(4, "polar").e_tilde[0] * (2 * math.pi)
    np.testing.assert_allclose(cert.integral.x, expected.x, atol=1e-6)
    assert cert.max_abs_error < 1e-6
    assert cert.segments <= 4096


def test_pole_outside_gives_zero():
    c = NComplex.zero(4, "polar")
    u0 = offset_pole(c, {1: 2.0})
    cert = residue_check(None, u0, circle_path(c, 1.0), QUAD)
    assert cert.winding == (0,)
    assert np.max(np.abs(cert.integral.x)) < 1e-9


@pytest.mark.parametrize("variant,n", [(Variant.POLAR, 6), (Variant.PLANAR, 4), (Variant.POLAR, 5)])
def test_residue_with_exp_numerator(rng, variant, n):
    center = random_number(rng, n, variant, 0.3)
    layout = slot_layout(n, variant)
    path = circle_path(center, 1.0, planes=tuple(range(1, layout.n_pairs + 1)))
    u0 = offset_pole(center, {k: 0.25 for k in range(1, layout.n_pairs + 1)})
    cert = residue_check(Exp(), u0, path, QUAD)
    assert cert.winding == (1,) * layout.n_pairs
    assert cert.max_abs_error < 1e-8


def test_double_winding_is_flagged():
    center = NComplex.zero(4, "polar")
    once = circle_path(center, 1.0, segments=64)
    twice = PiecewisePath("polar", 4, once.vertices + once.vertices)
    cert = residue_check(None, offset_pole(center, {1: 0.0}), twice, QUAD)
    assert cert.winding == (2,)
    assert cert.flagged
    assert cert.max_abs_error < 1e-8


@pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
def test_loop_deformation_leaves_integral_unchanged(radius):
    c = NComplex([0.2, -0.1, 0.3, 0.0, 0.1, 0.05], "polar")
    u0 = offset_pole(c, {1: 0.2, 2: 0.2})
    ref = residue_check(Exp(), u0, circle_path(c, 1.0, planes=(1, 2)), QUAD).integral
    got = residue_check(Exp(), u0, circle_path(c, radius, planes=(1, 2), radii=(radius, 1.3)), QUAD).integral
    np.testing.assert_allclose(got.x, ref.x, atol=1e-8)


def test_path_crossing_singular_hypersurface_raises():
    u0 = NComplex.zero(4, "polar")
    # the segment through the origin crosses every singular hypersurface of u0
    path = PiecewisePath("polar", 4, ([-1, -1, 0, 0], [1, 1, 0, 0], [1, -1, 2, 0]))
    with pytest.raises(SingularPath):
        integrate(Pole(u0), path, Quadrature(min_subdivisions=1))


def test_second_order_pole_has_zero_loop_integral():
    c = NComplex([0.1, 0.0, 0.2, -0.1], "planar")
    u0 = offset_pole(c, {1: 0.4, 2: 0.4})
    path = circle_path(c, 1.0, planes=(1, 2))
    got = integrate(Pole(u0, 2), path, QUAD)
    assert np.max(np.abs(got.x)) < 1e-8


def test_midpoint_rule_is_second_order():
    c = NComplex([0.1, 0.2, -0.1, 0.05], "polar")
    u0 = offset_pole(c, {1: 0.3})
    path = circle_path(c, 1.0, planes=(1,), segments=16)
    f = Pole(u0, numerator=Exp())
    ref = integrate(f, path, Quadrature(tol=1e-13))
    errors = [np.linalg.norm((midpoint_sum(f, path, s) - ref).x) for s in (4, 8, 16)]
    for coarse, fine in zip(errors, errors[1:]):
        assert 3.0 <= coarse / fine <= 5.0


def test_power_integrals_on_random_loops(rng):
    for m in range(4):
        path = hexagon(rng, 6, "planar")
        assert np.max(np.abs(integrate(Power(m), path).x)) < 1e-10


# logarithmic differential


def test_radial_step_is_pure_modulus_change(rng):
    u0 = random_number(rng, 6, "polar")
    u = u0 + random_number(rng, 6, "polar")
    eps = 1e-3
    dec = dlog_decomposition(u, u0, (u - u0) * eps)
    np.testing.assert_allclose(dec.total.x, NComplex.identity(6, "polar").x * eps, atol=1e-15)
    np.testing.assert_allclose(dec.d_phi, 0.0, atol=1e-15)
    assert dec.d_ln_rho == pytest.approx(eps)
    np.testing.assert_allclose(dec.cyclic.x, 0.0, atol=1e-15)


def test_rotation_in_first_plane_moves_only_phi_one(rng):
    u0 = random_number(rng, 6, "polar")
    u = u0 + random_number(rng, 6, "polar")
    eps = 1e-3
    e1 = canonical_basis(6, "polar").e_tilde[0]
    dec = dlog_decomposition(u, u0, e1 * (u - u0) * eps)
    assert dec.d_phi[0] == pytest.approx(eps, abs=1e-15)
    assert dec.d_phi[1] == pytest.approx(0.0, abs=1e-15)
    assert dec.d_ln_rho == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("variant,n", [(Variant.POLAR, 4), (Variant.POLAR, 5), (Variant.PLANAR, 4), (Variant.POLAR, 8)])
def test_parts_sum_to_total(rng, variant, n):
    u0, u, du = (random_number(rng, n, variant) for _ in range(3))
    dec = dlog_decomposition(u, u0, du)
    np.testing.assert_allclose((dec.single_valued + dec.cyclic).x, dec.total.x, atol=1e-12)
    np.testing.assert_allclose(dec.reconstruct_single_valued().x, dec.single_valued.x, atol=1e-10)
    np.testing.assert_allclose((dec.total * (u - u0)).x, du.x, atol=1e-10)


@pytest.mark.parametrize("variant,n", [(Variant.POLAR, 4), (Variant.POLAR, 6), (Variant.PLANAR, 6)])
def test_differentials_match_finite_differences_of_geometric_form(rng, variant, n):
    from ncomplex import determinant

    u0 = NComplex.zero(n, variant)
    w = random_number(rng, n, variant)
    if variant is Variant.POLAR:
        w = w + NComplex.identity(n, variant) * 3.0  # keep v_+ away from zero
    dw = random_number(rng, n, variant)
    h = 1e-6
    plus, minus = w + dw * h, w - dw * h
    gp, gm = geometric_form(plus), geometric_form(minus)
    dec = dlog_decomposition(w, u0, dw)

    d_ln_rho = (math.log(abs(determinant(plus))) - math.log(abs(determinant(minus)))) / (2 * n * h)
    assert dec.d_ln_rho == pytest.approx(d_ln_rho, rel=1e-6, abs=1e-8)
    for k, got in enumerate(dec.d_phi):
        delta = math.remainder(gp.phi[k] - gm.phi[k], 2 * math.pi)
        assert got == pytest.approx(delta / (2 * h), rel=1e-6, abs=1e-8)
    for j, got in enumerate(dec.d_ln_tan_psi):
        fd = (math.log(math.tan(gp.psi[j])) - math.log(math.tan(gm.psi[j]))) / (2 * h)
        assert got == pytest.approx(fd, rel=1e-6, abs=1e-8)
    if dec.d_ln_cot_theta_plus is not None:
        fd = (
            math.log(math.sqrt(2) / math.tan(gp.theta_plus))
            - math.log(math.sqrt(2) / math.tan(gm.theta_plus))
        ) / (2 * h)
        assert dec.d_ln_cot_theta_plus == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_single_valued_parts_accumulate_to_zero_around_a_loop():
    c = NComplex([0.1, -0.2, 0.3, 0.1, 0.0, 0.2], "polar")
    u0 = offset_pole(c, {1: 0.3, 2: 0.3})
    path = circle_path(c, 1.0, planes=(1, 2), segments=2048)
    pts = path.points()
    nxt = np.roll(pts, -1, axis=0)
    single = np.zeros(6)
    cyclic = np.zeros(6)
    for a, b in zip(pts, nxt):
        mid = NComplex((a + b) / 2, "polar")
        dec = dlog_decomposition(mid, u0, NComplex(b - a, "polar"))
        single += dec.single_valued.x
        cyclic += dec.cyclic.x
    assert np.max(np.abs(single)) < 1e-5
    basis = canonical_basis(6, "polar")
    expected = (basis.e_tilde[0] + basis.e_tilde[1]) * (2 * math.pi)
    np.testing.assert_allclose(cyclic, expected.x, atol=1e-5)


def test_dlog_at_the_pole_raises():
    u0 = NComplex([1.0, 0, 0, 0], "polar")
    with pytest.raises(NonInvertible):
        dlog_decomposition(u0, u0, NComplex.identity(4, "polar"))
