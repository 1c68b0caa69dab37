from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gfourier.cliffalg import wedge_vectors_array
from gfourier.exactnum import FSpec, Mod4Phase, cos_sin_family_spec
from gfourier.kernels import (CLIFFORD, HARMONIC, KernelSpec, bessel_sum, closed_kernel,
                              closed_kernel_cos_sin, make_spec, nested_difference_form,
                              recursion_check, required_family, series_kernel,
                              series_tail_estimate, spectrum, spectrum_row)

I = 1j


def pairs(m, n, seed, zmax=15.0):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, m))
    y = rng.normal(size=(n, m))
    z = np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
    factor = np.sqrt(rng.uniform(0, zmax, size=n) / z)
    return x * factor[:, None], y * factor[:, None]


def planar_t(x, y):
    s = np.sum(x * y, axis=1)
    z = np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
    return s, np.sqrt(np.maximum(z * z - s * s, 0.0))


# --- spectrum ----------------------------------------------------------------------

def test_spectrum_examples():
    assert spectrum(make_spec(4, HARMONIC, (0, 2, 0, 0)), 0, 0) == Mod4Phase(2)
    assert spectrum(make_spec(2, CLIFFORD), 2, 0) == Mod4Phase(2)
    row = spectrum_row(make_spec(2, HARMONIC), 5)
    assert [str(p) for p in row] == ["1", "i", "-1", "-i", "1"]


def test_family_requirement():
    assert required_family(2, HARMONIC) == "E" and required_family(3, HARMONIC) == "D"
    assert required_family(2, CLIFFORD) == "D" and required_family(3, CLIFFORD) == "E"
    with pytest.raises(ValueError):
        KernelSpec(2, HARMONIC, FSpec.four_tuple("D"))
    with pytest.raises(ValueError):
        make_spec(1, HARMONIC)
    with pytest.raises(ValueError):
        spectrum(make_spec(2, HARMONIC), -1, 0)


@given(st.sampled_from([HARMONIC, CLIFFORD]), st.integers(2, 7),
       st.tuples(*[st.integers(0, 3)] * 4), st.integers(0, 30), st.integers(0, 30))
def test_spectrum_periodicity_property(setting, m, four, j, k):
    spec = make_spec(m, setting, four)
    mu = spectrum(spec, j, k)
    step = 2 if setting == HARMONIC else 4
    assert spectrum(spec, j + step, k) == mu
    assert spectrum(spec, j, k + 4) == mu
    assert mu ** 4 == Mod4Phase(0)


# --- series kernel against elementary oracles ----------------------------------------

@pytest.mark.parametrize("setting, m", [(HARMONIC, 2), (HARMONIC, 3), (HARMONIC, 5),
                                        (CLIFFORD, 2), (CLIFFORD, 3), (CLIFFORD, 4)])
def test_trivial_symbol_is_plane_wave(setting, m):
    spec = make_spec(m, setting)
    x, y = pairs(m, 40, seed=m)
    want = np.exp(I * np.sum(x * y, axis=1))
    got = series_kernel(spec, x, y)
    if setting == CLIFFORD:
        assert np.max(np.abs(got[:, 1:])) < 1e-10
        got = got[:, 0]
    assert np.max(np.abs(got - want)) < 1e-10


def test_plane_wave_at_pi():
    spec = make_spec(2, HARMONIC)
    val = series_kernel(spec, np.array([math.pi, 0.0]), np.array([1.0, 0.0]))
    assert val == pytest.approx(-1.0, abs=1e-12)


@pytest.mark.parametrize("setting, m, four", [(HARMONIC, 2, (1, 2, 3, 0)), (HARMONIC, 3, (2, 1, 0, 3)),
                                              (CLIFFORD, 3, (0, 1, 1, 0)), (CLIFFORD, 4, (3, 0, 2, 1))])
def test_origin_gives_ground_eigenvalue(setting, m, four):
    spec = make_spec(m, setting, four)
    x = np.random.default_rng(1).normal(size=(5, m))
    got = np.atleast_2d(series_kernel(spec, x, np.zeros((5, m))).T).T
    mu00 = spectrum(spec, 0, 0).to_complex()
    assert np.allclose(got[:, 0], mu00, atol=1e-14)


@pytest.mark.parametrize("a, b, c", [(0, 0, 2), (1, 3, 2), (2, 1, 1), (3, 2, 3), (0, 3, 0)])
def test_planar_harmonic_kernel_elementary(a, b, c):
    # m = 2: i^a [ (1+i^c)/2 cos s + i^{b+1} sin s + (1-i^c)/2 cos t ]
    spec = make_spec(2, HARMONIC, (a, b, c, 0))
    x, y = pairs(2, 50, seed=a + 4 * b + 16 * c, zmax=20)
    s, t = planar_t(x, y)
    ic = I ** c
    want = I ** a * ((1 + ic) / 2 * np.cos(s) + I ** (b + 1) * np.sin(s) + (1 - ic) / 2 * np.cos(t))
    assert np.max(np.abs(series_kernel(spec, x, y) - want)) < 1e-10
    assert np.max(np.abs(closed_kernel(spec, x, y) - want)) < 1e-12


def test_hartley_kernel_is_real():
    spec = make_spec(2, HARMONIC, (0, 3, 0, 0))
    x, y = pairs(2, 30, seed=9)
    s = np.sum(x * y, axis=1)
    got = series_kernel(spec, x, y)
    assert np.max(np.abs(got - (np.cos(s) + np.sin(s)))) < 1e-10


def test_planar_clifford_kernel_elementary():
    # m = 2, F = 2 D0110: K = cos t + i (x ^ y) sin(t)/t, tending to 1 + i (x ^ y)
    spec = make_spec(2, CLIFFORD, (0, 2, 0, 0))
    x, y = pairs(2, 40, seed=4)
    _, t = planar_t(x, y)
    wedge = wedge_vectors_array(x, y)[:, 3]
    want = np.zeros((40, 4), dtype=complex)
    want[:, 0] = np.cos(t)
    want[:, 3] = I * wedge * np.sinc(t / math.pi)
    assert np.max(np.abs(series_kernel(spec, x, y) - want)) < 1e-10
    assert np.max(np.abs(closed_kernel(spec, x, y) - want)) < 1e-12
    eps = 1e-5
    small = closed_kernel(spec, np.array([eps, 0.0]), np.array([0.0, eps]))
    assert small[0] == pytest.approx(1.0) and small[3] == pytest.approx(I * eps * eps)


@pytest.mark.parametrize("d", range(4))
def test_odd_dimension_family_kernel(d):
    spec = KernelSpec(3, HARMONIC, cos_sin_family_spec(d, 3))
    x, y = pairs(3, 40, seed=d)
    s = np.sum(x * y, axis=1)
    want = np.cos(s) + I ** (d + 1) * np.sin(s)
    assert np.max(np.abs(series_kernel(spec, x, y) - want)) < 1e-10
    assert np.max(np.abs(closed_kernel(spec, x, y) - want)) < 1e-12


def test_cos_sin_form():
    x, y = pairs(3, 10, seed=2)
    s = np.sum(x * y, axis=1)
    one, i = Mod4Phase(0), Mod4Phase(1)
    assert np.allclose(closed_kernel_cos_sin(one, i, x, y), np.exp(I * s))
    assert np.allclose(closed_kernel_cos_sin(one, one, x, y), np.cos(s) + np.sin(s))
    with pytest.raises(ValueError):
        closed_kernel_cos_sin(one, one, x, y, spec=make_spec(3, HARMONIC))


def test_closed_kernel_unknown_cases_raise():
    with pytest.raises(ValueError):
        closed_kernel(make_spec(3, HARMONIC, (0, 1, 0, 0)), np.ones(3), np.ones(3))
    with pytest.raises(ValueError):
        closed_kernel(make_spec(2, HARMONIC, (0, 0, 0, 1)), np.ones(2), np.ones(2))
    general = KernelSpec(2, HARMONIC, FSpec.general("E", [0, 1] + [0] * 20))
    with pytest.raises(ValueError):
        closed_kernel(general, np.ones(2), np.ones(2))


# --- symmetry, truncation, Bessel sums, recursion -----------------------------------

def _rotation(m, rng):
    q, r = np.linalg.qr(rng.normal(size=(m, m)))
    return q * np.sign(np.diag(r))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 5), st.tuples(*[st.integers(0, 3)] * 4), st.integers(0, 2 ** 32 - 1))
def test_harmonic_kernel_symmetries(m, four, seed):
    spec = make_spec(m, HARMONIC, four)
    rng = np.random.default_rng(seed)
    x, y = pairs(m, 6, seed=seed)
    Q = _rotation(m, rng)
    base = series_kernel(spec, x, y)
    assert np.allclose(series_kernel(spec, x @ Q.T, y @ Q.T), base, atol=1e-9)
    assert np.allclose(series_kernel(spec, y, x), base, atol=1e-9)
    c = rng.uniform(0.3, 2.0)
    assert np.allclose(series_kernel(spec, c * x, y / c), base, atol=1e-9)


def test_tail_estimate_bounds_truncation():
    spec = make_spec(4, HARMONIC, (1, 2, 3, 0))
    x, y = pairs(4, 20, seed=3, zmax=8.0)
    z = float(np.max(np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)))
    full = series_kernel(spec, x, y)
    for k_max in (10, 15, 20, 25):
        err = np.max(np.abs(series_kernel(spec, x, y, k_max) - full))
        assert err <= 2 * series_tail_estimate(spec, z, k_max) + 1e-15
    assert series_tail_estimate(spec, 0.0, 5) == 0.0


@pytest.mark.parametrize("n", range(5))
def test_bessel_sum_matches_nested_differences(n):
    for s, t in [(0.7, 1.3), (-1.2, 2.5), (2.0, 0.9)]:
        want = nested_difference_form(n, s, t, h=1e-2 if n > 2 else 1e-3)
        assert bessel_sum(n, np.array(s), np.array(t), -0.5) == pytest.approx(want, rel=1e-4, abs=1e-5)


@pytest.mark.parametrize("setting, m, four, which", [
    (HARMONIC, 2, (0, 0, 0, 0), "K"), (HARMONIC, 4, (1, 2, 3, 0), "K"),
    (CLIFFORD, 2, (0, 0, 0, 0), "A"), (CLIFFORD, 4, (2, 1, 0, 0), "A"),
    (CLIFFORD, 4, (2, 1, 0, 0), "B")])
def test_dimension_recursion(setting, m, four, which):
    spec = make_spec(m, setting, four)
    rng = np.random.default_rng(m)
    w = rng.uniform(-0.9, 0.9, 20)
    z = rng.uniform(0.2, 10.0, 20)
    assert recursion_check(spec, w, z, which=which) < 1e-6


def test_recursion_argument_checks():
    spec = make_spec(2, HARMONIC)
    with pytest.raises(ValueError):
        recursion_check(spec, [1.0], [1.0])
    with pytest.raises(ValueError):
        recursion_check(spec, [0.0], [0.0])
    with pytest.raises(ValueError):
        recursion_check(make_spec(2, CLIFFORD), [0.1], [1.0], which="B")
