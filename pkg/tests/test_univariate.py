import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from nsdq.specfun import cos_int, sin_int
from nsdq.univariate import Endpoint1D, endpoint_contribution, nsd_interval


def _quad_oracle(f, g, a, b, omega, tol=1e-13):
    re = quad(lambda x: (f(x) * cmath.exp(1j * omega * g(x))).real, a, b,
              epsabs=tol, epsrel=tol, limit=2000)[0]
    im = quad(lambda x: (f(x) * cmath.exp(1j * omega * g(x))).imag, a, b,
              epsabs=tol, epsrel=tol, limit=2000)[0]
    return complex(re, im)


def test_linear_endpoint_at_origin():
    one = lambda z: 1.0
    ident = lambda z: z
    for omega in (3.0, 40.0):
        got = endpoint_contribution(one, ident, Endpoint1D(0.0), omega, 1, dg=lambda z: 1.0)
        assert abs(got - 1j / omega) <= 1e-14 * abs(1j / omega)


def test_linear_endpoint_with_phase():
    one = lambda z: 1.0
    ident = lambda z: z
    omega = 25.0
    got = endpoint_contribution(one, ident, Endpoint1D(1.0), omega, 1, dg=lambda z: 1.0)
    expect = 1j * cmath.exp(1j * omega) / omega
    assert abs(got - expect) <= 1e-14 * abs(expect)


def test_quadratic_endpoint_fresnel():
    # int_0^inf exp(i w x^2) dx = (1/2) sqrt(pi/w) exp(i pi/4)
    omega = 20.0
    got = endpoint_contribution(
        lambda z: 1.0, lambda z: z * z, Endpoint1D(0.0, alpha_local=2), omega, 8,
        dg=lambda z: 2.0 * z,
    )
    expect = 0.5 * math.sqrt(math.pi / omega) * cmath.exp(1j * math.pi / 4)
    assert abs(got - expect) <= 1e-6


def test_interval_linear_exact():
    omega = 17.0
    got = nsd_interval(lambda z: 1.0, lambda z: z, 0.0, 1.0, omega, 1, dg=lambda z: 1.0)
    expect = (cmath.exp(1j * omega) - 1.0) / (1j * omega)
    assert abs(got - expect) <= 1e-14 * abs(expect)


def test_interval_cosine_amplitude():
    omega = 100.0
    got = nsd_interval(np.cos, lambda z: z, 0.0, 1.0, omega, 6, dg=lambda z: 1.0)
    oracle = _quad_oracle(math.cos, lambda x: x, 0.0, 1.0, omega)
    assert abs(got - oracle) <= 1e-10


def test_interval_quadratic_phase():
    omega = 50.0
    got = nsd_interval(lambda z: 1.0, lambda z: z * z, 0.0, 1.0, omega, 8,
                       dg=lambda z: 2.0 * z, alpha_a=2)
    oracle = _quad_oracle(lambda x: 1.0, lambda x: x * x, 0.0, 1.0, omega)
    assert abs(got - oracle) <= 1e-7


def _closed_form_inverse_linear(omega):
    # int_0^1 exp(i w x)/(1+x) dx via the cosine/sine integrals
    return cmath.exp(-1j * omega) * complex(
        cos_int(2 * omega) - cos_int(omega), sin_int(2 * omega) - sin_int(omega)
    )


@pytest.mark.parametrize("m, bound", [(1, -0.5), (2, -2.5), (3, -4.5)])
def test_asymptotic_order(m, bound):
    # log-log slope of the error against the closed form must beat the
    # descent-rule order bound -(2m - 1) + 0.5
    f = lambda z: 1.0 / (1.0 + z)
    omegas = np.arange(50.0, 801.0, 50.0)
    pts = []
    for omega in omegas:
        got = nsd_interval(f, lambda z: z, 0.0, 1.0, omega, m, dg=lambda z: 1.0)
        err = abs(got - _closed_form_inverse_linear(omega))
        if err > 1e-15:
            pts.append((math.log(omega), math.log(err)))
    assert len(pts) >= 3, f"m={m}: too few points above the floor"
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    slope = np.linalg.lstsq(np.vstack([x, np.ones_like(x)]).T, y, rcond=None)[0][0]
    assert slope <= bound, f"m={m}: slope {slope} above {bound}"


@given(
    ar=st.floats(-2, 2), ai=st.floats(-2, 2),
    br=st.floats(-2, 2), bi=st.floats(-2, 2),
)
@settings(max_examples=20, deadline=None)
def test_linearity_in_amplitude(ar, ai, br, bi):
    alpha = complex(ar, ai)
    beta = complex(br, bi)
    omega, m = 30.0, 4
    f1 = lambda z: np.cos(z)
    f2 = lambda z: 1.0 / (1.0 + z)
    combo = lambda z: alpha * f1(z) + beta * f2(z)
    dg = lambda z: 1.0
    lhs = nsd_interval(combo, lambda z: z, 0.0, 1.0, omega, m, dg=dg)
    rhs = alpha * nsd_interval(f1, lambda z: z, 0.0, 1.0, omega, m, dg=dg) \
        + beta * nsd_interval(f2, lambda z: z, 0.0, 1.0, omega, m, dg=dg)
    assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(lhs))


def test_phase_shift_covariance():
    omega, m, c = 40.0, 4, 0.7
    f = lambda z: np.cos(z)
    base = nsd_interval(f, lambda z: z, 0.0, 1.0, omega, m, dg=lambda z: 1.0)
    shifted = nsd_interval(f, lambda z: z + c, 0.0, 1.0, omega, m, dg=lambda z: 1.0)
    assert abs(shifted - cmath.exp(1j * omega * c) * base) <= 1e-13 * abs(base)


def test_endpoint_validation():
    with pytest.raises(ValueError, match="alpha_local"):
        Endpoint1D(0.0, alpha_local=0)
    with pytest.raises(ValueError, match="unit modulus"):
        Endpoint1D(0.0, phase=2.0 + 0.0j)
    with pytest.raises(ValueError, match="side"):
        Endpoint1D(0.0, side=0)
    with pytest.raises(ValueError, match="omega"):
        endpoint_contribution(lambda z: 1.0, lambda z: z, Endpoint1D(0.0), -1.0, 2)
