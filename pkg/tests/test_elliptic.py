import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special
from scipy.integrate import quad, solve_ivp

from lameqhj.elliptic import EllipticDomainError, complete_K, jacobi

# K(0.5) from adaptive quadrature of 1/sqrt(1 - m sin^2)
K_HALF = 1.8540746773013719


def quad_K(m):
    val, _ = quad(lambda th: 1.0 / math.sqrt(1.0 - m * math.sin(th) ** 2), 0.0, math.pi / 2,
                  epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def test_K_circular_limit():
    assert complete_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)


def test_K_half_matches_quadrature():
    assert quad_K(0.5) == pytest.approx(K_HALF, abs=1e-13)
    assert complete_K(0.5) == pytest.approx(K_HALF, abs=1e-14)


@pytest.mark.parametrize("m", [0.01, 0.2, 0.7, 0.9, 0.99])
def test_K_against_quadrature(m):
    assert complete_K(m) == pytest.approx(quad_K(m), rel=1e-12)


def test_K_increasing():
    ms = np.linspace(0.0, 0.995, 200)
    ks = [complete_K(m) for m in ms]
    assert np.all(np.diff(ks) > 0)
    assert complete_K(0.9) > complete_K(0.5)


@pytest.mark.parametrize("m", [-0.1, 1.0, 1.5, float("nan")])
def test_K_domain(m):
    with pytest.raises(EllipticDomainError):
        complete_K(m)


@pytest.mark.parametrize("m", [0.0, 0.3, 0.9])
def test_origin(m):
    v = jacobi(0.0, m)
    assert (v.sn, v.cn, v.dn) == (0.0, 1.0, 1.0)


def test_circular_limit():
    x = np.linspace(-20, 20, 101)
    v = jacobi(x, 0.0)
    np.testing.assert_allclose(v.sn, np.sin(x), atol=1e-14)
    np.testing.assert_allclose(v.cn, np.cos(x), atol=1e-14)
    np.testing.assert_allclose(v.dn, 1.0)


def test_quarter_period_values_from_ode():
    m = 0.5
    sol = solve_ivp(lambda x, y: [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]],
                    [0.0, quad_K(m)], [0.0, 1.0, 1.0], rtol=1e-13, atol=1e-14, method="DOP853")
    ode_end = sol.y[:, -1]
    v = jacobi(complete_K(m), m)
    np.testing.assert_allclose([v.sn, v.cn, v.dn], ode_end, atol=1e-10)
    np.testing.assert_allclose([v.sn, v.cn, v.dn], [1.0, 0.0, math.sqrt(0.5)], atol=1e-14)


def test_matches_scipy_ellipj():
    rng = np.random.default_rng(7)
    x = rng.uniform(-30, 30, 500)
    for m in (0.05, 0.5, 0.95):
        v = jacobi(x, m)
        sn, cn, dn, _ = special.ellipj(x, m)
        np.testing.assert_allclose(v.sn, sn, atol=1e-12)
        np.testing.assert_allclose(v.cn, cn, atol=1e-12)
        np.testing.assert_allclose(v.dn, dn, atol=1e-12)


def test_rejects_bad_input():
    with pytest.raises(EllipticDomainError):
        jacobi(1.0, 1.0)
    with pytest.raises(EllipticDomainError):
        jacobi(float("inf"), 0.5)
    with pytest.raises(EllipticDomainError):
        jacobi(np.array([0.0, np.nan]), 0.5)


finite_x = st.floats(min_value=-200, max_value=200, allow_nan=False)
param_m = st.floats(min_value=0.0, max_value=0.99)


@given(x=finite_x, m=param_m)
@settings(max_examples=300, deadline=None)
def test_identities(x, m):
    v = jacobi(x, m)
    assert abs(v.sn**2 + v.cn**2 - 1) < 1e-12
    assert abs(v.dn**2 + m * v.sn**2 - 1) < 1e-12


@given(x=st.floats(min_value=-50, max_value=50, allow_nan=False), m=param_m)
@settings(max_examples=200, deadline=None)
def test_derivatives(x, m):
    h = 1e-5
    lo, mid, hi = jacobi(x - h, m), jacobi(x, m), jacobi(x + h, m)
    assert abs((hi.sn - lo.sn) / (2 * h) - mid.cn * mid.dn) < 1e-6
    assert abs((hi.cn - lo.cn) / (2 * h) + mid.sn * mid.dn) < 1e-6
    assert abs((hi.dn - lo.dn) / (2 * h) + m * mid.sn * mid.cn) < 1e-6


@given(x=st.floats(min_value=-20, max_value=20, allow_nan=False), m=param_m)
@settings(max_examples=200, deadline=None)
def test_periods_and_half_shift(x, m):
    K = complete_K(m)
    v = jacobi(x, m)
    assert abs(jacobi(x + 4 * K, m).sn - v.sn) < 1e-10
    assert abs(jacobi(x + 2 * K, m).dn - v.dn) < 1e-10
    assert abs(jacobi(x + K, m).sn - v.cn / v.dn) < 1e-10


def test_large_argument_reduction():
    m = 0.7
    K = complete_K(m)
    x = 0.3 + 4 * K * 1000
    assert jacobi(x, m).sn == pytest.approx(jacobi(0.3, m).sn, abs=1e-10)


def test_scalar_and_array_forms_agree():
    x = np.array([0.1, 1.3, -2.2])
    arr = jacobi(x, 0.4)
    for i, xi in enumerate(x):
        sc = jacobi(float(xi), 0.4)
        assert sc.sn == arr.sn[i] and sc.cn == arr.cn[i] and sc.dn == arr.dn[i]
