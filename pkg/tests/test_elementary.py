import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ncomplex import (
    DegenerateAngle,
    DomainError,
    NComplex,
    NonInvertible,
    Overflow,
    Variant,
    canonical_basis,
    exp,
    exponential_form,
    log,
    pow,
    trigonometric_form,
)
from ncomplex.cosexp import exp_basis
from ncomplex.elementary import exp_phase_shift
from ncomplex.matrix_rep import matrix_exp, represent
from ncomplex.spectral import from_slots, nodal_coordinates, slot_layout, spectral_of

from conftest import ALGEBRAS, numbers, random_number, rel_err

PAIRED = [(v, n) for v, n in ALGEBRAS if slot_layout(n, v).n_pairs]


def log_domain_number(rng, n, variant):
    layout = slot_layout(n, variant)
    k = len(layout.real)
    slots = np.empty(layout.size, complex)
    slots[:k] = rng.uniform(0.3, 3, k)
    slots[k:] = rng.uniform(0.3, 3, layout.n_pairs) * np.exp(1j * rng.uniform(0, 2 * np.pi, layout.n_pairs))
    return from_slots(slots, n, variant)


def series_exp(u, terms=80):
    total = NComplex.identity(u.n, u.variant)
    term = total
    for k in range(1, terms):
        term = term * u / k
        total = total + term
    return total


def test_exp_examples(rng):
    for variant, n in ALGEBRAS:
        assert exp(NComplex.zero(n, variant)).allclose(NComplex.identity(n, variant), 1e-15)
        u, v = random_number(rng, n, variant), random_number(rng, n, variant)
        assert rel_err(exp(u + v).x, (exp(u) * exp(v)).x) < 1e-12
        assert rel_err(exp(u).x, series_exp(u).x) < 1e-12
        assert rel_err(represent(exp(u)), matrix_exp(represent(u))) < 1e-10
        y = rng.uniform(-3, 3)
        assert rel_err(exp(NComplex.basis(n, 1, variant) * y).x, exp_basis(variant, n, 1, y).x) < 1e-12


def test_exp_overflow_guard():
    with pytest.raises(Overflow):
        exp(NComplex([800.0, 0.0]))


def test_log_examples():
    assert log(NComplex.identity(6)).allclose(NComplex.zero(6), 1e-15)
    assert log(NComplex([0, 1], "planar")).allclose(NComplex([0, math.pi / 2], "planar"), 1e-15)
    with pytest.raises(DomainError, match="v_plus"):
        log(NComplex([-2, 0]))
    with pytest.raises(DomainError, match="rho_1"):
        log(NComplex([1, 1, 1, 1], "polar"))
    # odd polar needs only v_+ > 0
    log(NComplex([1, -0.3, 0.5]))


def test_exp_log_round_trip(rng):
    for variant, n in ALGEBRAS:
        for _ in range(20):
            u = log_domain_number(rng, n, variant)
            assert rel_err(exp(log(u)).x, u.x) < 1e-10


def test_log_exp_near_zero(rng):
    from ncomplex.spectral import to_slots

    for variant, n in ALGEBRAS:
        u = random_number(rng, n, variant, scale=0.1)
        expected = u
        pairs = to_slots(u)[len(slot_layout(n, variant).real):]
        for k, z in enumerate(pairs):
            if z.imag < 0:  # principal azimuth lies in [0, 2 pi)
                expected = exp_phase_shift(expected, k, 1)
        assert rel_err(log(exp(u)).x, expected.x) < 1e-12


def test_multivaluedness_witness(rng):
    for variant, n in PAIRED:
        u = log_domain_number(rng, n, variant)
        for k in range(slot_layout(n, variant).n_pairs):
            shifted = log(u) + canonical_basis(n, variant).e_tilde[k] * (2 * math.pi)
            assert rel_err(exp(shifted).x, u.x) < 1e-10


def test_pow_examples(rng):
    for variant, n in ALGEBRAS:
        u = random_number(rng, n, variant)
        assert pow(u, 1).allclose(u, 1e-13)
        assert pow(u, 0).allclose(NComplex.identity(n, variant), 1e-13)
        assert rel_err(pow(u, 3).x, (u * u * u).x) < 1e-12
        assert rel_err(pow(u, -2).x, (u.inverse() * u.inverse()).x) < 1e-10
    b = canonical_basis(4, "planar")
    w = b.e_tilde[0] + b.e_tilde[1]
    assert pow(w, 2).allclose(-NComplex.identity(4, "planar"), 1e-14)


def test_pow_integer_on_nodal_points():
    u = NComplex([1, 1, 1, 1])
    assert nodal_coordinates(u)
    assert rel_err(pow(u, 4).x, (u * u * u * u).x) < 1e-14
    with pytest.raises(NonInvertible):
        pow(u, -1)
    with pytest.raises(DomainError):
        pow(u, 0.5)


def test_pow_exponent_law(rng):
    for variant, n in ALGEBRAS:
        u = log_domain_number(rng, n, variant)
        a, b = rng.uniform(-2, 2, 2)
        assert rel_err((pow(u, a) * pow(u, b)).x, pow(u, a + b).x) < 1e-10
        # square root squared
        assert rel_err((pow(u, 0.5) * pow(u, 0.5)).x, u.x) < 1e-10


@given(numbers(), st.integers(0, 6))
def test_pow_integer_matches_repeated_product(u, m):
    ref = NComplex.identity(u.n, u.variant)
    for _ in range(m):
        ref = ref * u
    scale = max(1.0, float(np.max(np.abs(ref.x))))
    assert np.max(np.abs(pow(u, m).x - ref.x)) <= 1e-11 * scale


def test_exponential_form_examples():
    g = exponential_form(NComplex.identity(4) * 2.5)
    assert g.rho == pytest.approx(2.5)
    assert np.allclose(g.h_coefficients, 0, atol=1e-15)
    assert np.allclose(g.phi, 0)
    r, phi = 1.7, 2.1
    f = exponential_form(NComplex([r * math.cos(phi), r * math.sin(phi)], "planar"))
    assert f.rho == pytest.approx(r) and f.phi == (pytest.approx(phi),)
    assert np.allclose(f.h_coefficients, 0)
    with pytest.raises(DomainError):
        exponential_form(NComplex([2.0, 0.5]))  # polar n = 2 has no azimuth


def test_exponential_form_coefficients_formula(rng):
    # coefficient of h_p rebuilt from the angles, polar n = 6
    from ncomplex import geometric_form

    u = log_domain_number(rng, 6, "polar")
    g = geometric_form(u)
    p = np.arange(6)
    c = np.log(math.sqrt(2) / math.tan(g.theta_plus)) / 6 + (-1.0) ** p * np.log(
        math.sqrt(2) / math.tan(g.theta_minus)
    ) / 6
    c -= 2 / 6 * np.cos(2 * math.pi * 2 * p / 6) * math.log(math.tan(g.psi[0]))
    c[0] = 0.0
    assert np.allclose(exponential_form(u).h_coefficients, c, atol=1e-13)


def test_exponential_form_reassembles(rng):
    for variant, n in PAIRED:
        for _ in range(10):
            u = log_domain_number(rng, n, variant)
            assert rel_err(exponential_form(u).reassemble().x, u.x) < 1e-10


def test_vanishing_pair_radius():
    u = spectral_of(6, "planar", pairs=[1.0, 0.5, 0.0])
    # inside the log domain every log-tangent is finite, so this is a domain error
    with pytest.raises(DomainError, match="rho_3"):
        exponential_form(u)
    with pytest.raises(DegenerateAngle):
        trigonometric_form(u)


def test_trigonometric_form(rng):
    for variant, n in PAIRED:
        u = random_number(rng, n, variant)
        t = trigonometric_form(u)
        assert rel_err(t.reassemble().x, u.x) < 1e-10
        t2 = trigonometric_form(u * 3.0)
        assert t2.scalar == pytest.approx(3 * t.scalar)
        assert t2.direction.allclose(t.direction, 1e-12) and t2.phase.allclose(t.phase, 1e-12)
    z = NComplex([0.6, -0.8], "planar")
    t = trigonometric_form(z)
    assert t.scalar == pytest.approx(1.0)
    assert t.direction.allclose(canonical_basis(2, "planar").e[0], 1e-15)


def test_trigonometric_form_accepts_negative_determinant():
    u = NComplex([1, 2, 0.3, -0.1])
    assert rel_err(trigonometric_form(u).reassemble().x, u.x) < 1e-10
