"""Integral kernels of the generalized Fourier transforms.

Every kernel depends on x and y only through z = |x||y| and w = <x,y>/z
(plus the bivector x ^ y in the Clifford setting).  Series kernels sum the
Bessel-Gegenbauer expansion up to a truncation order; closed kernels
evaluate finite Bessel sums.  Phases are exact :class:`Mod4Phase` values
and only become complex numbers when multiplied into float data.

Points are arrays of shape (n, m) or (m,); results are (n,) complex arrays
for harmonic kernels and (n, 2^m) dense multivector arrays for Clifford
kernels (scalar entries are returned for single points).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable

import numpy as np

from . import specfun
from .cliffalg import Multivector, wedge_vectors_array
from .exactnum import QI, EVEN_SQUARES, HALF_INTEGER_SQUARES, FSpec, F_eval, Mod4Phase

HARMONIC = "harmonic"
CLIFFORD = "clifford"


@dataclass(frozen=True)
class KernelSpec:
    """Dimension, setting and symbol function of a transform."""

    m: int
    setting: str
    F: FSpec
    k_max: int | None = None
    overrides: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("dimension must be at least 2")
        if self.setting not in (HARMONIC, CLIFFORD):
            raise ValueError(f"setting must be {HARMONIC!r} or {CLIFFORD!r}")
        want = required_family(self.m, self.setting)
        if self.F.family != want:
            raise ValueError(
                f"{self.setting} setting in m={self.m} needs the {want} family, "
                f"got {self.F.family}")

    @property
    def lam(self) -> Fraction:
        return Fraction(self.m - 2, 2)

    def with_m(self, m: int) -> "KernelSpec":
        return KernelSpec(m, self.setting, self.F, self.k_max, self.overrides)

    def with_override(self, j: int, k: int, phase: Mod4Phase) -> "KernelSpec":
        """Copy whose spectrum entry (j, k) is replaced (mutation testing)."""
        return KernelSpec(self.m, self.setting, self.F, self.k_max,
                          self.overrides + (((j, k), phase),))


def required_family(m: int, setting: str) -> str:
    even = m % 2 == 0
    if setting == HARMONIC:
        return EVEN_SQUARES if even else HALF_INTEGER_SQUARES
    return HALF_INTEGER_SQUARES if even else EVEN_SQUARES


def make_spec(m: int, setting: str, four=(0, 0, 0, 0), k_max: int | None = None) -> KernelSpec:
    """KernelSpec with a four-tuple F in the family the setting requires."""
    return KernelSpec(m, setting, FSpec.four_tuple(required_family(m, setting), *four), k_max)


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

@lru_cache(maxsize=65536)
def _F_at_twice(F: FSpec, twice_arg: int) -> int:
    """F at the argument twice_arg / 2 (arguments are integers or half-integers)."""
    return F_eval(F, Fraction(twice_arg, 2))


def spectrum(spec: KernelSpec, j: int, k: int) -> Mod4Phase:
    """Eigenvalue mu_{j,k} on phi_{j,k} (harmonic) or psi_{j,k} (Clifford)."""
    if j < 0 or k < 0:
        raise ValueError("indices must be non-negative")
    for key, phase in spec.overrides:
        if key == (j, k):
            return phase
    if spec.setting == HARMONIC:
        # argument k + lam
        return Mod4Phase(_F_at_twice(spec.F, 2 * k + spec.m - 2) + 2 * j + k)
    # argument k + lam + 1/2
    return Mod4Phase(_F_at_twice(spec.F, 2 * k + spec.m - 1) + j + k)


def spectrum_row(spec: KernelSpec, count: int) -> list[Mod4Phase]:
    """mu_{0,k} for k < count."""
    return [spectrum(spec, 0, k) for k in range(count)]


def _phase_array(phases) -> np.ndarray:
    return np.array([p.to_complex() for p in phases], dtype=complex)


def certify_cos_sin(spec: KernelSpec, count: int = 8) -> bool:
    """Check mu_{j,k+2} = -mu_{j,k} and mu_{j+1,k} = -mu_{j,k} on small indices."""
    for j in range(2):
        for k in range(count):
            mu = spectrum(spec, j, k)
            if spectrum(spec, j, k + 2) != -mu or spectrum(spec, j + 1, k) != -mu:
                return False
    return True


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

@dataclass
class GeomVars:
    z: np.ndarray
    w: np.ndarray
    s: np.ndarray
    t: np.ndarray
    wedge: np.ndarray | None = None


def _points(x, y) -> tuple[np.ndarray, np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    single = x.ndim == 1 and y.ndim == 1
    x2 = np.atleast_2d(x)
    y2 = np.atleast_2d(y)
    x2, y2 = np.broadcast_arrays(x2, y2)
    return x2, y2, single


def geom_vars(x, y, with_wedge: bool = False) -> GeomVars:
    x, y, _ = _points(x, y)
    s = np.sum(x * y, axis=1)
    z = np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        w = np.where(z > 0, s / np.where(z > 0, z, 1.0), 1.0)
    w = np.clip(w, -1.0, 1.0)
    t = z * np.sqrt(np.maximum(0.0, 1.0 - w * w))
    wedge = wedge_vectors_array(x, y) if with_wedge else None
    return GeomVars(z=z, w=w, s=s, t=t, wedge=wedge)


def auto_k_max(z) -> int:
    """Truncation order ceil(e z) + 40."""
    zmax = float(np.max(np.abs(z))) if np.size(z) else 0.0
    return int(math.ceil(math.e * zmax)) + 40


def _k_max(spec: KernelSpec, z) -> int:
    return spec.k_max if spec.k_max is not None else auto_k_max(z)


def _unwrap(values: np.ndarray, single: bool):
    return values[0] if single else values


# ---------------------------------------------------------------------------
# series kernels as functions of (w, z)
# ---------------------------------------------------------------------------

def harmonic_series_wz(spec: KernelSpec, w, z, k_max: int | None = None) -> np.ndarray:
    """2^lam sum_k (k+lam) Gamma(lam) C_k^lam(w) mu_{0,k} z^-lam J_{k+lam}(z)."""
    w = np.clip(np.asarray(w, dtype=float), -1.0, 1.0)
    z = np.asarray(z, dtype=float)
    lam = float(spec.lam)
    count = (k_max if k_max is not None else _k_max(spec, z)) + 1
    mu = _phase_array(spectrum_row(spec, count))
    weights = specfun.weighted_gegenbauer_sequence(count, lam, w)
    bess = specfun.bessel_scaled_sequence(lam, count, z)
    return 2.0 ** lam * np.einsum("k,k...,k...->...", mu, weights, bess)


def _gamma_gegenbauer_rows(count: int, lam: float, w: np.ndarray) -> np.ndarray:
    """Gamma(lam) C_k^lam(w) for 1 <= k < count; row 0 is unused (set 0)."""
    weighted = specfun.weighted_gegenbauer_sequence(count, lam, w)
    k = np.arange(count, dtype=float).reshape((count,) + (1,) * w.ndim)
    out = np.zeros_like(weighted)
    out[1:] = weighted[1:] / (k[1:] + lam)
    return out


def clifford_series_wz(spec: KernelSpec, w, z, k_max: int | None = None
                       ) -> tuple[np.ndarray, np.ndarray]:
    """Scalar part A and bivector coefficient B of K = A + (x ^ y) B."""
    w = np.clip(np.asarray(w, dtype=float), -1.0, 1.0)
    z = np.asarray(z, dtype=float)
    lam = float(spec.lam)
    count = (k_max if k_max is not None else _k_max(spec, z)) + 1
    mu = _phase_array(spectrum_row(spec, count))
    mu_prev = np.concatenate([[0.0], mu[:-1]])
    k = np.arange(count, dtype=float)
    a_coef = 0.5 * (1j * k * mu_prev + (k + 2 * lam) * mu)
    gg = _gamma_gegenbauer_rows(count, lam, w)
    gg[0] = math.gamma(lam + 1.0)
    # the k = 0 weight Gamma(lam) C_0 (k + 2 lam)/2 collapses to Gamma(lam+1)
    a_coef[0] = mu[0]
    bess = specfun.bessel_scaled_sequence(lam, count, z)
    A = 2.0 ** lam * np.einsum("k,k...,k...->...", a_coef, gg, bess)
    # B: k >= 1 terms with z^{-lam-1} J_{k+lam}(z) C_{k-1}^{lam+1}(w)
    b_coef = 0.5 * (1j * mu_prev[1:] - mu[1:])
    geg = specfun.gegenbauer_sequence(count - 1, lam + 1.0, w)
    bess1 = specfun.bessel_scaled_sequence(lam + 1.0, count - 1, z)
    B = 2.0 ** (lam + 1) * math.gamma(lam + 1.0) * np.einsum("k,k...,k...->...", b_coef, geg, bess1)
    return A, B


def extended_mu_minus_one(spec: KernelSpec) -> Mod4Phase:
    """mu_{0,-1} from the spectrum formula continued to k = -1.

    F is even, so F(lam - 1/2) = F(|lam - 1/2|) stays on the lattice.  The
    kernel K never sees this value, but the split into A_m and B_m does, and
    the dimension recursion for those components holds with exactly this
    continuation.
    """
    arg = abs(spec.lam - Fraction(1, 2))
    return Mod4Phase(F_eval(spec.F, arg) - 1)


def clifford_am_bm_wz(spec: KernelSpec, w, z, k_max: int | None = None
                      ) -> tuple[np.ndarray, np.ndarray | None]:
    """The components A_m and B_m with K = A_m - lam B_m + (x^y) z^-1 d_w B_m.

    mu_{0,-1} is taken from :func:`extended_mu_minus_one`.

    B_m contains Gamma(lam) C_0^lam and is therefore undefined for m = 2
    (returned as None).
    """
    w = np.clip(np.asarray(w, dtype=float), -1.0, 1.0)
    z = np.asarray(z, dtype=float)
    lam = float(spec.lam)
    count = (k_max if k_max is not None else _k_max(spec, z)) + 1
    mu = _phase_array(spectrum_row(spec, count))
    mu_prev = np.concatenate([[extended_mu_minus_one(spec).to_complex()], mu[:-1]])
    weights = specfun.weighted_gegenbauer_sequence(count, lam, w)
    bess = specfun.bessel_scaled_sequence(lam, count, z)
    A = 2.0 ** lam * np.einsum("k,k...,k...->...", 0.5 * (1j * mu_prev + mu), weights, bess)
    if lam == 0:
        return A, None
    k = np.arange(count, dtype=float).reshape((count,) + (1,) * w.ndim)
    plain = weights / (k + lam)
    B = 2.0 ** lam * np.einsum("k,k...,k...->...", 0.5 * (1j * mu_prev - mu), plain, bess)
    return A, B


# ---------------------------------------------------------------------------
# public point-based kernels
# ---------------------------------------------------------------------------

def series_kernel_harmonic(spec: KernelSpec, x, y, k_max: int | None = None):
    if spec.setting != HARMONIC:
        raise ValueError("series_kernel_harmonic needs a harmonic spec")
    _, _, single = _points(x, y)
    g = geom_vars(x, y)
    return _unwrap(harmonic_series_wz(spec, g.w, g.z, k_max), single)


def _assemble_clifford(m: int, scalar: np.ndarray, bicoef: np.ndarray,
                       wedge: np.ndarray) -> np.ndarray:
    out = wedge.astype(complex) * bicoef[:, None]
    out[:, 0] += scalar
    return out


def series_kernel_clifford(spec: KernelSpec, x, y, k_max: int | None = None):
    if spec.setting != CLIFFORD:
        raise ValueError("series_kernel_clifford needs a clifford spec")
    _, _, single = _points(x, y)
    g = geom_vars(x, y, with_wedge=True)
    A, B = clifford_series_wz(spec, g.w, g.z, k_max)
    return _unwrap(_assemble_clifford(spec.m, A, B, g.wedge), single)


def series_kernel(spec: KernelSpec, x, y, k_max: int | None = None):
    if spec.setting == HARMONIC:
        return series_kernel_harmonic(spec, x, y, k_max)
    return series_kernel_clifford(spec, x, y, k_max)


def series_tail_estimate(spec: KernelSpec, z: float, k_max: int | None = None) -> float:
    """Bound on the first omitted term of the series at |x||y| = z.

    Uses |J_nu(z)| <= (z/2)^nu / Gamma(nu+1) and |C_k^lam| <= C_k^lam(1).
    """
    lam = float(spec.lam)
    k = (k_max if k_max is not None else auto_k_max(z)) + 1
    nu = k + lam
    if z == 0:
        return 0.0
    log_bessel = nu * math.log(z / 2.0) - math.lgamma(nu + 1.0) - lam * math.log(z)
    if lam == 0:
        log_weight = math.log(2.0)
    else:
        # (k+lam) Gamma(lam) C_k^lam(1) = (k+lam) Gamma(k+2lam) / (k! Gamma(2lam)) * Gamma(lam)
        log_weight = (math.log(k + lam) + math.lgamma(k + 2 * lam) - math.lgamma(k + 1.0)
                      - math.lgamma(2 * lam) + math.lgamma(lam))
    return 2.0 ** lam * math.exp(log_bessel + log_weight) * max(1.0, k)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def _require_even(m: int):
    if m % 2 or m < 2:
        raise ValueError(f"closed forms need even m >= 2, got m={m}")


def bessel_sum(n: int, s: np.ndarray, t: np.ndarray, shift: float) -> np.ndarray:
    """sqrt(pi/2) sum_l s^{n-2l} Gamma(n+1)/(2^l l! Gamma(n+1-2l)) J_nu(t)/t^nu
    with nu = n + shift - l.

    ``shift = -1/2`` is (d_s - (s/t) d_t)^n cos t and ``shift = +1/2`` is
    (d_s - (s/t) d_t)^n sin(t)/t.
    """
    out = np.zeros_like(np.asarray(s, dtype=float))
    for ell in range(n // 2 + 1):
        coef = math.factorial(n) / (2 ** ell * math.factorial(ell) * math.factorial(n - 2 * ell))
        out = out + coef * s ** (n - 2 * ell) * specfun.bessel_scaled(n + shift - ell, t)
    return math.sqrt(math.pi / 2.0) * out


def nested_difference_form(n: int, s: float, t: float, h: float = 1e-3,
                           seed: Callable | None = None) -> float:
    """(d_s - (s/t) d_t)^n applied to ``seed`` (default cos t) by nested
    central differences with step h; independent check of :func:`bessel_sum`."""
    if seed is None:
        seed = lambda s_, t_: math.cos(t_)  # noqa: E731
    if n == 0:
        return seed(s, t)

    def inner(s_, t_):
        return nested_difference_form(n - 1, s_, t_, h, seed)

    ds = (inner(s + h, t) - inner(s - h, t)) / (2 * h)
    dt = (inner(s, t + h) - inner(s, t - h)) / (2 * h)
    return ds - (s / t) * dt


def _qi(c: QI) -> complex:
    return complex(c)


def _half_one_plus(p: Mod4Phase) -> complex:
    return _qi((QI(1) + p.to_qi()) * QI(Fraction(1, 2)))


def _half_one_minus(p: Mod4Phase) -> complex:
    return _qi((QI(1) - p.to_qi()) * QI(Fraction(1, 2)))


def closed_kernel_harmonic_even(a: int, b: int, c: int, m: int, x, y):
    """Closed kernel of the harmonic transform with F = a + b E0101 + c E0010."""
    _require_even(m)
    _, _, single = _points(x, y)
    g = geom_vars(x, y)
    lam = (m - 2) // 2
    front = Mod4Phase(a - lam).to_complex()
    shift = lam * math.pi / 2.0
    val = (_half_one_plus(Mod4Phase(c)) * np.cos(g.s + shift)
           + Mod4Phase(b + 1).to_complex() * np.sin(g.s + shift)
           + _half_one_minus(Mod4Phase(c)) * bessel_sum(lam, g.s, g.t, -0.5))
    return _unwrap(front * val, single)


def closed_kernel_clifford_even(a: int, b: int, m: int, x, y):
    """Closed kernel of the Clifford transform with F = a + b D0110.

    K = i^a [ (1+i^b)/2 e^{is} + i^{-lam} (1-i^b)/2 ( Q_lam - lam i R_{lam-1}
    + (x ^ y) i R_lam ) ] where Q and R are the cos and sin(t)/t Bessel sums.
    The plane-wave part carries no i^{-lam}: the dimension recursion maps
    e^{is} to itself.
    """
    _require_even(m)
    _, _, single = _points(x, y)
    g = geom_vars(x, y, with_wedge=True)
    lam = (m - 2) // 2
    front = Mod4Phase(a).to_complex()
    inner = Mod4Phase(-lam).to_complex()
    lo = _half_one_minus(Mod4Phase(b))
    hi = _half_one_plus(Mod4Phase(b))
    rest = bessel_sum(lam, g.s, g.t, -0.5)
    if lam:
        rest = rest - lam * 1j * bessel_sum(lam - 1, g.s, g.t, 0.5)
    scalar = hi * np.exp(1j * g.s) + inner * lo * rest
    bicoef = inner * lo * 1j * bessel_sum(lam, g.s, g.t, 0.5)
    out = _assemble_clifford(m, front * scalar, front * bicoef, g.wedge)
    return _unwrap(out, single)


def closed_kernel_cos_sin(mu00: Mod4Phase, mu01: Mod4Phase, x, y,
                          spec: KernelSpec | None = None):
    """mu00 cos<x,y> + mu01 sin<x,y>.

    When ``spec`` is given its spectrum is checked against the hypothesis
    mu_{j,k+2} = -mu_{j,k}, mu_{j+1,k} = -mu_{j,k} and against the two phases.
    """
    if spec is not None:
        if not certify_cos_sin(spec):
            raise ValueError("spectrum does not satisfy the cos/sin hypothesis")
        if spectrum(spec, 0, 0) != mu00 or spectrum(spec, 0, 1) != mu01:
            raise ValueError("mu00 / mu01 disagree with the supplied spectrum")
    _, _, single = _points(x, y)
    g = geom_vars(x, y)
    val = mu00.to_complex() * np.cos(g.s) + mu01.to_complex() * np.sin(g.s)
    return _unwrap(val, single)


def closed_kernel(spec: KernelSpec, x, y):
    """Closed form matching ``spec`` when one is known, else ValueError."""
    four = spec.F.four
    if four is None:
        raise ValueError("closed forms need a four-tuple spec")
    a, b, c, d = four
    if spec.setting == HARMONIC and spec.m % 2 == 0 and d == 0:
        return closed_kernel_harmonic_even(a, b, c, spec.m, x, y)
    if spec.setting == CLIFFORD and spec.m % 2 == 0 and c == 0 and d == 0:
        return closed_kernel_clifford_even(a, b, spec.m, x, y)
    if spec.setting == HARMONIC and certify_cos_sin(spec):
        return closed_kernel_cos_sin(spectrum(spec, 0, 0), spectrum(spec, 0, 1), x, y, spec)
    raise ValueError(f"no closed form known for {spec.F.label()} ({spec.setting}, m={spec.m})")


# ---------------------------------------------------------------------------
# dimension recursion
# ---------------------------------------------------------------------------

def _component(spec: KernelSpec, which: str) -> Callable:
    if spec.setting == HARMONIC:
        if which != "K":
            raise ValueError("harmonic kernels only have the component 'K'")
        return lambda w, z, km: harmonic_series_wz(spec, w, z, km)
    if which == "A":
        return lambda w, z, km: clifford_am_bm_wz(spec, w, z, km)[0]
    if which == "B":
        if spec.m == 2:
            raise ValueError("B_m is undefined for m = 2")
        return lambda w, z, km: clifford_am_bm_wz(spec, w, z, km)[1]
    raise ValueError("clifford components are 'A' and 'B'")


def relative_error(a, b) -> float:
    """max |a - b| / max(1, |b|)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b)))) if a.size else 0.0


def recursion_check(spec: KernelSpec, w, z, h: float = 1e-5, which: str = "K") -> float:
    """Max relative residual of K_{m+2} = -i z^{-1} d_w K_m (central differences)."""
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(w) > 1 - h):
        raise ValueError("sample w must stay inside (-1 + h, 1 - h)")
    if np.any(z <= 0):
        raise ValueError("sample z must be positive")
    km = _k_max(spec, z)
    lower = _component(spec, which)
    upper = _component(spec.with_m(spec.m + 2), which)
    deriv = (lower(w + h, z, km) - lower(w - h, z, km)) / (2 * h)
    predicted = -1j * deriv / z
    actual = upper(w, z, km - 1)
    return relative_error(predicted, actual)


def to_multivector(row: np.ndarray, m: int) -> Multivector:
    return Multivector(m, {b: complex(c) for b, c in enumerate(row) if c != 0})
