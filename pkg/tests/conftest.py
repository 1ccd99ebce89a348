import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ncomplex import NComplex, Variant

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ALGEBRAS = [
    (Variant.POLAR, n) for n in (2, 3, 4, 5, 6, 8)
] + [(Variant.PLANAR, n) for n in (2, 4, 6, 8)]

component = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def numbers(draw, variant=None, n=None, count=1):
    """One or more numbers sharing an algebra drawn from ALGEBRAS."""
    if variant is None or n is None:
        variant, n = draw(st.sampled_from(ALGEBRAS))
    vals = [NComplex(draw(st.lists(component, min_size=n, max_size=n)), variant) for _ in range(count)]
    return vals[0] if count == 1 else tuple(vals)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def rel_err(a, b):
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def random_number(rng, n, variant, scale=1.0):
    return NComplex(rng.normal(scale=scale, size=n), variant)
