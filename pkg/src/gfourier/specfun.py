"""Bessel J of integer and half-integer order, Gegenbauer and Laguerre
polynomials, and the singularity-free combinations the kernels need.

All functions accept scalar or array arguments for the continuous variable
and return numpy values of the same shape.
"""
from __future__ import annotations

import math

import numpy as np

SERIES_MAX = 1.0
_RESCALE = 1e200


def _as_array(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    return np.atleast_1d(arr), arr.ndim == 0


def _check_t(t: np.ndarray):
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise ValueError("Bessel argument must be non-negative")


def _base_of(nu: float) -> float:
    """Fractional offset of an order: 0 for integers, -1/2 for half-integers."""
    if float(nu).is_integer():
        return 0.0
    if float(2 * nu).is_integer():
        return -0.5
    raise ValueError(f"order {nu} is neither an integer nor a half-integer")


def _scaled_series(nu: float, t: np.ndarray) -> np.ndarray:
    """J_nu(t)/t^nu from the power series; accurate for t <= 1."""
    q = -(t * t) / 4.0
    term = np.full_like(t, 1.0 / (2.0 ** nu * math.gamma(nu + 1.0)))
    total = term.copy()
    for n in range(1, 40):
        term = term * q / (n * (n + nu))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _miller(base: float, top: int, t: np.ndarray) -> np.ndarray:
    """J_{base+n}(t) for n = 0..top by backward recurrence, t > 0.

    Integer families are normalized by J_0 + 2 sum J_{2k} = 1; half-integer
    families run down to order -1/2 and are fitted to the elementary
    J_{-1/2} and J_{1/2}.
    """
    n_t = t.size
    tmax = float(np.max(t))
    reach = max(top, int(math.ceil(tmax)))
    start = reach + 20 + int(math.sqrt(40.0 * (reach + 1)))
    start += start % 2
    out = np.zeros((top + 1, n_t))
    # index n corresponds to order base + n (base is 0 or -1/2)
    lowest = 0
    j_next = np.zeros(n_t)
    j_cur = np.full(n_t, 1e-30)
    even_sum = np.zeros(n_t)
    lows = {}
    for n in range(start, lowest - 1, -1):
        order = base + n
        if n <= top and n >= 0:
            out[n] = j_cur
        if n <= 1:
            lows[n] = j_cur.copy()
        if not base and n % 2 == 0:
            even_sum += j_cur if n == 0 else 2.0 * j_cur
        if n == lowest:
            break
        j_prev = (2.0 * order / t) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        big = np.abs(j_cur) > _RESCALE
        if np.any(big):
            s = np.where(big, 1.0 / _RESCALE, 1.0)
            j_cur *= s
            j_next *= s
            out *= s
            even_sum *= s
            for key in lows:
                lows[key] *= s
    if not base:
        scale = 1.0 / even_sum
    else:
        amp = np.sqrt(2.0 / (np.pi * t))
        exact_lo = amp * np.cos(t)   # J_{-1/2}
        exact_hi = amp * np.sin(t)   # J_{1/2}
        size = np.maximum(np.abs(lows[0]), np.abs(lows[1]))
        got_lo, got_hi = lows[0] / size, lows[1] / size
        scale = (exact_lo * got_lo + exact_hi * got_hi) / (got_lo ** 2 + got_hi ** 2) / size
    return out * scale


def bessel_j_sequence(nu0: float, count: int, t) -> np.ndarray:
    """Array of shape (count, *t.shape) holding J_{nu0+n}(t), n < count."""
    arr, scalar = _as_array(t)
    _check_t(arr)
    if nu0 < -0.5:
        raise ValueError("order must be >= -1/2")
    base = _base_of(nu0)
    first = int(round(nu0 - base))
    top = first + count - 1
    flat = arr.ravel()
    out = np.zeros((count, flat.size))
    small = flat <= SERIES_MAX
    if np.any(small):
        ts = flat[small]
        for n in range(count):
            nu = nu0 + n
            with np.errstate(divide="ignore"):
                powv = ts ** nu
            out[n, small] = _scaled_series(nu, ts) * powv
    large = ~small
    if np.any(large):
        seq = _miller(base, top, flat[large])
        out[:, large] = seq[first:first + count]
    if scalar:
        return out[:, 0]
    return out.reshape((count,) + np.shape(t))


def bessel_j(nu: float, t):
    """Bessel function J_nu(t) for integer or half-integer nu >= -1/2."""
    seq = bessel_j_sequence(nu, 1, t)
    return seq[0]


def bessel_half_closed(nu: float, t):
    """Elementary forms J_{1/2} = sqrt(2/(pi t)) sin t and J_{-1/2} = sqrt(2/(pi t)) cos t."""
    arr, scalar = _as_array(t)
    _check_t(arr)
    if nu == 0.5:
        trig = np.sin(arr)
    elif nu == -0.5:
        trig = np.cos(arr)
    else:
        raise ValueError("elementary forms exist here only for orders +-1/2")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sqrt(2.0 / (math.pi * arr)) * trig
    return out[0] if scalar else out.reshape(np.shape(t))


def bessel_scaled(nu: float, t):
    """J_nu(t) / t^nu, with the t -> 0 limit 1 / (2^nu Gamma(nu+1))."""
    arr, scalar = _as_array(t)
    _check_t(arr)
    out = np.empty_like(arr)
    small = arr <= SERIES_MAX
    if np.any(small):
        out[small] = _scaled_series(nu, arr[small])
    if np.any(~small):
        tl = arr[~small]
        out[~small] = bessel_j(nu, tl) / tl ** nu
    return out[0] if scalar else out.reshape(np.shape(t))


def bessel_scaled_sequence(nu0: float, count: int, t) -> np.ndarray:
    """J_{nu0+n}(t) / t^{nu0} for n < count (one common power of t)."""
    arr = np.asarray(t, dtype=float)
    seq = bessel_j_sequence(nu0, count, arr)
    out = np.empty_like(seq)
    small = arr <= SERIES_MAX
    big = ~small
    if np.any(big):
        out[:, big] = seq[:, big] / arr[big] ** nu0
    if np.any(small):
        ts = arr[small]
        # J_{nu0+n}/t^{nu0} = t^n * (J_{nu0+n}/t^{nu0+n})
        for n in range(count):
            out[n, small] = _scaled_series(nu0 + n, ts) * ts ** n
    return out


def gegenbauer(k: int, lam: float, w):
    """Gegenbauer polynomial C_k^lam(w) by the three-term recurrence."""
    return gegenbauer_sequence(k + 1, lam, w)[k]


def gegenbauer_sequence(count: int, lam: float, w) -> np.ndarray:
    """C_n^lam(w) for n < count, shape (count, *w.shape)."""
    w = np.asarray(w, dtype=float)
    out = np.zeros((max(count, 1),) + w.shape)
    out[0] = 1.0
    if count > 1:
        out[1] = 2.0 * lam * w
    for n in range(1, count - 1):
        out[n + 1] = (2.0 * w * (n + lam) * out[n] - (n + 2.0 * lam - 1.0) * out[n - 1]) / (n + 1)
    return out[:count]


def gamma_gegenbauer(k: int, lam: float, w):
    """Gamma(lam) C_k^lam(w), continued to lam = 0 as (2/k) cos(k theta).

    At lam = 0 the k = 0 value is infinite and rejected.
    """
    w = np.clip(np.asarray(w, dtype=float), -1.0, 1.0)
    if lam == 0:
        if k == 0:
            raise ValueError("Gamma(0) C_0^0 is infinite")
        return (2.0 / k) * np.cos(k * np.arccos(w))
    return math.gamma(lam) * gegenbauer(k, lam, w)


def weighted_gegenbauer_sequence(count: int, lam: float, w) -> np.ndarray:
    """(n + lam) Gamma(lam) C_n^lam(w) for n < count.

    This is finite for every lam >= 0: the n = 0 entry is Gamma(lam + 1)
    and at lam = 0 the others are 2 cos(n theta).
    """
    w = np.clip(np.asarray(w, dtype=float), -1.0, 1.0)
    if lam == 0:
        theta = np.arccos(w)
        n = np.arange(count).reshape((count,) + (1,) * w.ndim)
        out = 2.0 * np.cos(n * theta)
        out[0] = 1.0
        return out
    seq = gegenbauer_sequence(count, lam, w)
    n = np.arange(count).reshape((count,) + (1,) * w.ndim)
    return (n + lam) * math.gamma(lam) * seq


def laguerre(j: int, alpha: float, r):
    """Generalized Laguerre polynomial L_j^alpha(r)."""
    r = np.asarray(r, dtype=float)
    prev = np.ones_like(r)
    if j == 0:
        return prev if r.ndim else float(prev)
    cur = 1.0 + alpha - r
    for n in range(1, j):
        prev, cur = cur, ((2 * n + 1 + alpha - r) * cur - (n + alpha) * prev) / (n + 1)
    return cur if r.ndim else float(cur)


def log_gamma(x: float) -> float:
    return math.lgamma(x)


def gamma(x: float) -> float:
    return math.gamma(x)
