"""Property-based tests with Hypothesis."""
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from scipy import special

from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.state import QuantumState
from rydberg.services import asympt, hydrogenic
from rydberg.services.specfun import gegenbauer, laguerre_zeros, spherical_harmonic_sq_cos

CFG = QuadratureConfig(rel_tol=1e-9)


@st.composite
def states(draw, max_n=12):
    n = draw(st.integers(min_value=1, max_value=max_n))
    l = draw(st.integers(min_value=0, max_value=n - 1))
    m = draw(st.integers(min_value=-l, max_value=l))
    return QuantumState(n=n, l=l, m=m)


orders = st.floats(min_value=0.2, max_value=6.0).filter(lambda p: abs(p - 1.0) > 1e-3)
separated_orders = st.floats(min_value=0.2, max_value=6.0).filter(lambda p: abs(p - 1.0) > 0.05)


@given(
    k=st.integers(min_value=0, max_value=12),
    lam=st.floats(min_value=0.5, max_value=10.0),
    x=st.floats(min_value=-1.0, max_value=1.0),
)
def test_gegenbauer_matches_scipy(k, lam, x):
    expected = special.eval_gegenbauer(k, lam, x)
    # |C_k^λ| peaks at x = ±1
    peak = special.eval_gegenbauer(k, lam, 1.0)
    assert gegenbauer(k, lam, x) == pytest.approx(expected, rel=1e-9, abs=1e-12 * peak)


@given(k=st.integers(min_value=1, max_value=60), alpha=st.floats(min_value=-0.9, max_value=20.0))
def test_laguerre_zeros_interlace(k, alpha):
    lower, upper = laguerre_zeros(k, alpha), laguerre_zeros(k + 1, alpha)
    assert np.all(upper[:-1] < lower)
    assert np.all(lower < upper[1:])


@given(l=st.integers(min_value=0, max_value=15), u=st.floats(min_value=-1.0, max_value=1.0))
def test_harmonics_sum_over_m(l, u):
    total = sum(spherical_harmonic_sq_cos(l, m, u) for m in range(-l, l + 1))
    assert total == pytest.approx((2 * l + 1) / (4 * math.pi), rel=1e-11)


@settings(max_examples=15, suppress_health_check=[HealthCheck.too_slow])
@given(l=st.integers(min_value=0, max_value=12), data=st.data())
def test_harmonics_normalised(l, data):
    m = data.draw(st.integers(min_value=-l, max_value=l))
    assert hydrogenic.angular_moment(l, m, 1.0, CFG).value == pytest.approx(1.0, rel=1e-8)


@settings(max_examples=15, suppress_health_check=[HealthCheck.too_slow])
@given(state=states())
def test_radial_density_normalised(state):
    assert hydrogenic.radial_moment(state, 1.0, CFG).value == pytest.approx(1.0, rel=1e-8)


@given(
    p=st.floats(min_value=0.05, max_value=1.95),
    beta=st.floats(min_value=0.0, max_value=4.0),
)
def test_cosine_constant_matches_gamma(p, beta):
    g = math.gamma
    expected = (2 ** (beta + 1) * math.pi ** (-p - 0.5) * g(beta + 1 - p / 2) * g(1 - p / 2) * g(p + 0.5)
                / (g(beta + 2 - p) * g(1 + p)))
    assert asympt.cosine_constant(p, beta) == pytest.approx(expected, rel=1e-11)


@settings(max_examples=15, suppress_health_check=[HealthCheck.too_slow])
@given(
    n=st.integers(min_value=3, max_value=400),
    p=st.sampled_from([0.3, 0.75, 1.5, 2.0, 3.0, 4.5]),
    Z=st.floats(min_value=0.5, max_value=100.0),
)
def test_asymptotic_charge_scaling(n, p, Z):
    cfg = QuadratureConfig(rel_tol=1e-6)
    hydrogen = asympt.renyi_total_asymptotic(QuantumState(n=n, l=0), p, cfg).value
    ion = asympt.renyi_total_asymptotic(QuantumState(n=n, l=0, Z=Z), p, cfg).value
    assert ion - hydrogen == pytest.approx(-3 * math.log(Z), abs=1e-9)


@settings(max_examples=10, suppress_health_check=[HealthCheck.too_slow])
@given(state=states(max_n=8), p=orders)
def test_tsallis_renyi_identity(state, p):
    renyi = hydrogenic.renyi_total(state, p, CFG).value
    tsallis = hydrogenic.tsallis_total(state, p, CFG).value
    assert tsallis == pytest.approx(hydrogenic.tsallis_from_renyi(renyi, p), rel=1e-9, abs=1e-10)


@settings(max_examples=10, suppress_health_check=[HealthCheck.too_slow])
@given(state=states(max_n=8), ps=st.lists(separated_orders, min_size=2, max_size=2, unique=True))
def test_renyi_nonincreasing_in_order(state, ps):
    low, high = sorted(ps)
    r_low = hydrogenic.renyi_total(state, low, CFG).value
    r_high = hydrogenic.renyi_total(state, high, CFG).value
    assert r_high <= r_low + 1e-6

