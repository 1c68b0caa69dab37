from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from gfourier import config
from gfourier.specfun import (bessel_half_closed, bessel_j, bessel_j_sequence, bessel_scaled,
                              bessel_scaled_sequence, gamma_gegenbauer, gegenbauer,
                              gegenbauer_sequence, laguerre, weighted_gegenbauer_sequence)


def close(got, want, rel=1e-12, floor=2e-14):
    got, want = np.asarray(got), np.asarray(want)
    same = got == want  # covers the shared infinity of J_{-1/2} at 0
    with np.errstate(invalid="ignore"):
        near = np.abs(got - want) <= rel * np.abs(want) + floor
    return bool(np.all(same | near))


ORDERS = [-0.5, 0, 0.5, 1, 1.5, 2, 3.5, 5, 8, 12.5, 20]
ARGS = np.array([0.0, 1e-8, 0.01, 0.3, 0.999, 1.0, 1.001, 2.5, 7.0, 13.3, 25.0, 40.0])


# --- examples ------------------------------------------------------------------

def test_bessel_examples():
    assert bessel_j(0.5, math.pi / 2) == pytest.approx(2 / math.pi, rel=1e-14)
    assert bessel_scaled(1, 0.0) == pytest.approx(0.5, rel=1e-15)
    assert bessel_scaled(0.5, 0.0) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)
    assert bessel_j(0, 0.0) == pytest.approx(1.0)
    assert bessel_j(3, 0.0) == 0.0


def test_laguerre_examples():
    assert laguerre(2, 1, 0.0) == pytest.approx(3.0)
    assert laguerre(1, 0, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert laguerre(0, 2.5, 7.0) == 1.0


def test_negative_argument_rejected():
    with pytest.raises(ValueError):
        bessel_j(1, -0.5)
    with pytest.raises(ValueError):
        bessel_scaled(0.5, np.array([1.0, -1.0]))
    with pytest.raises(ValueError):
        bessel_j(1.0 / 3.0, 1.0)


def test_scalar_and_array_shapes():
    assert np.ndim(bessel_j(2, 1.5)) == 0
    assert bessel_j(2, np.ones((3, 2))).shape == (3, 2)
    assert bessel_scaled_sequence(0.5, 4, np.ones(5)).shape == (4, 5)


# --- scipy oracles ------------------------------------------------------------

@pytest.mark.parametrize("nu", ORDERS)
def test_bessel_matches_scipy(nu):
    assert close(bessel_j(nu, ARGS), special.jv(nu, ARGS))


@pytest.mark.parametrize("nu0", [0, -0.5, 0.5, 3])
def test_bessel_sequence_matches_scipy(nu0):
    seq = bessel_j_sequence(nu0, 30, ARGS)
    for n in range(30):
        assert close(seq[n], special.jv(nu0 + n, ARGS)), n


@pytest.mark.parametrize("nu", ORDERS)
def test_scaled_bessel_matches_scipy(nu):
    t = ARGS[ARGS > 0]
    assert close(bessel_scaled(nu, t), special.jv(nu, t) / t ** nu)


def test_scaled_bessel_sequence_matches_scipy():
    t = ARGS[ARGS > 0]
    seq = bessel_scaled_sequence(1.5, 10, t)
    for n in range(10):
        assert close(seq[n], special.jv(1.5 + n, t) / t ** 1.5), n


def test_half_integer_closed_forms():
    t = ARGS[ARGS > 0]
    assert close(bessel_half_closed(0.5, t), bessel_j(0.5, t))
    assert close(bessel_half_closed(-0.5, t), bessel_j(-0.5, t))
    with pytest.raises(ValueError):
        bessel_half_closed(1.5, t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 25), st.booleans(), st.floats(0.0, 60.0))
def test_bessel_property_vs_scipy(n, half, t):
    nu = n + (0.5 if half else 0.0)
    assert close(bessel_j(nu, t), special.jv(nu, t), rel=1e-11, floor=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10), st.booleans(), st.floats(1e-3, 30.0))
def test_bessel_derivative_recurrence(n, half, t):
    # d/dt [J_nu(t)/t^nu] = -t J_{nu+1}(t)/t^{nu+1}
    nu = n + (0.5 if half else 0.0)
    h = 1e-5 * max(1.0, t)
    lo = max(t - h, 0.0)
    deriv = (bessel_scaled(nu, t + h) - bessel_scaled(nu, lo)) / (t + h - lo)
    want = -t * bessel_scaled(nu + 1, t)
    assert deriv == pytest.approx(want, rel=1e-6, abs=1e-9)


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5, 2.0, 3.5])
def test_gegenbauer_matches_scipy(lam):
    w = np.linspace(-1, 1, 21)
    seq = gegenbauer_sequence(15, lam, w)
    for k in range(15):
        want = special.eval_gegenbauer(k, lam, w)
        assert close(seq[k], want, floor=1e-12), k
        assert close(gegenbauer(k, lam, w), want, floor=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.sampled_from([0.5, 1.0, 1.5, 2.5]), st.floats(-0.95, 0.95))
def test_gegenbauer_derivative_identity(k, lam, w):
    # d/dw C_k^lam = 2 lam C_{k-1}^{lam+1}
    h = 1e-6
    deriv = (gegenbauer(k, lam, w + h) - gegenbauer(k, lam, w - h)) / (2 * h)
    assert deriv == pytest.approx(2 * lam * gegenbauer(k - 1, lam + 1, w), rel=1e-6, abs=1e-6)


def test_gamma_gegenbauer_planar_limit():
    w = np.linspace(-1, 1, 11)
    for k in range(1, 20):
        assert close(gamma_gegenbauer(k, 0, w), 2.0 / k * np.cos(k * np.arccos(w)), floor=1e-13)
        # continuity at lam -> 0
        assert close(gamma_gegenbauer(k, 1e-9, w), gamma_gegenbauer(k, 0, w), rel=1e-7, floor=1e-7)
    with pytest.raises(ValueError):
        gamma_gegenbauer(0, 0, w)


@pytest.mark.parametrize("lam", [0.0, 0.5, 2.0])
def test_weighted_gegenbauer(lam):
    w = np.linspace(-1, 1, 9)
    seq = weighted_gegenbauer_sequence(10, lam, w)
    assert close(seq[0], math.gamma(lam + 1) * np.ones_like(w))
    for n in range(1, 10):
        assert close(seq[n], (n + lam) * gamma_gegenbauer(n, lam, w), floor=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.5, 7.0])
def test_laguerre_matches_scipy(alpha):
    r = np.linspace(0, 30, 31)
    for j in range(12):
        want = special.eval_genlaguerre(j, alpha, r)
        assert close(laguerre(j, alpha, r), want, rel=1e-11, floor=1e-9), j


# --- tolerance configuration ----------------------------------------------------

def test_tolerances_from_environment():
    tol = config.from_environment({"GFOURIER_TOL_KERNEL": "1e-9"})
    assert tol.kernel == 1e-9 and tol.specfun == config.Tolerances().specfun
    with pytest.raises(ValueError):
        config.from_environment({"GFOURIER_TOL_QUADRATURE": "tight"})
