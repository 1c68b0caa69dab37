"""Exact operator calculus on Clifford-valued polynomials times e^{-|x|^2/2}.

A :class:`Poly` is a finite sum of terms ``c * i^u0 * sqrt2^u1 * x^alpha * e_A``
with rational ``c``.  The coefficient ring is therefore Q(i, sqrt 2), stored
as a ``unit`` bit pair next to each Fraction so that everything stays exact.
Clifford units multiply from the left of every term (``e_j * P``), which is
how the vector variable and the Dirac operator act.

A :class:`GaussPoly` is a Poly understood as multiplied by the Gaussian
G = e^{-|x|^2/2}.  Differential operators act on it through the modified
Leibniz rule d_i(P G) = (d_i P - x_i P) G, so the result is again a GaussPoly.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .cliffalg import blade_sign
from .exactnum import QI, QS2, Mod4Phase, binom_poly

UNIT_I = 1
UNIT_SQRT2 = 2

Key = tuple  # (exponents, blade, unit)


def _unit_product(u: int, v: int) -> tuple[int, int]:
    """Product of two units as (unit, integer factor)."""
    factor = 1
    if u & v & UNIT_I:
        factor = -factor
    if u & v & UNIT_SQRT2:
        factor *= 2
    return u ^ v, factor


def _coef_units(c) -> dict[int, Fraction]:
    """Split a scalar in Q(i, sqrt 2) into unit components."""
    if isinstance(c, (int, Fraction)):
        return {0: Fraction(c)} if c else {}
    if isinstance(c, QI):
        return QS2(c).units()
    if isinstance(c, Mod4Phase):
        return QS2(c.to_qi()).units()
    if isinstance(c, QS2):
        return c.units()
    raise TypeError(f"unsupported coefficient {c!r}")


class Poly:
    """Clifford-valued polynomial over Q(i, sqrt 2) in m variables."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict | None = None):
        self.m = m
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, m: int) -> "Poly":
        return cls(m)

    @classmethod
    def const(cls, m: int, c=1, blade: int = 0) -> "Poly":
        zero = (0,) * m
        return cls(m, {(zero, blade, u): v for u, v in _coef_units(c).items()})

    @classmethod
    def monomial(cls, m: int, exponents: Sequence[int], c=1, blade: int = 0) -> "Poly":
        exps = tuple(int(e) for e in exponents)
        if len(exps) != m:
            raise ValueError("exponent vector length must equal m")
        return cls(m, {(exps, blade, u): v for u, v in _coef_units(c).items()})

    @classmethod
    def coordinate(cls, m: int, i: int) -> "Poly":
        """The coordinate x_i, with 0-based i."""
        exps = [0] * m
        exps[i] = 1
        return cls.monomial(m, exps)

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        """sum_i c_i x_i."""
        m = len(coeffs)
        out = cls(m)
        for i, c in enumerate(coeffs):
            if c:
                out = out + cls.coordinate(m, i).scale(c)
        return out

    @classmethod
    def norm_sq(cls, m: int) -> "Poly":
        out = {}
        for i in range(m):
            exps = [0] * m
            exps[i] = 2
            out[(tuple(exps), 0, 0)] = Fraction(1)
        return cls(m, out)

    @classmethod
    def vector_variable(cls, m: int) -> "Poly":
        """x = sum_j e_j x_j."""
        out = {}
        for j in range(m):
            exps = [0] * m
            exps[j] = 1
            out[(tuple(exps), 1 << j, 0)] = Fraction(1)
        return cls(m, out)

    # ring operations ------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(self.m, out)

    def __neg__(self) -> "Poly":
        return Poly(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return Poly(self.m, out)

    def scale(self, c) -> "Poly":
        """Multiply by a scalar in Q(i, sqrt 2)."""
        parts = _coef_units(c)
        if list(parts) == [0]:
            f = parts[0]
            return Poly(self.m, {k: v * f for k, v in self.terms.items()})
        out: dict = {}
        for (exps, blade, unit), v in self.terms.items():
            for u, f in parts.items():
                nu, fac = _unit_product(unit, u)
                key = (exps, blade, nu)
                out[key] = out.get(key, 0) + v * f * fac
        return Poly(self.m, out)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for (ea, ba, ua), va in self.terms.items():
            for (eb, bb, ub), vb in other.terms.items():
                nu, fac = _unit_product(ua, ub)
                if blade_sign(ba, bb) < 0:
                    fac = -fac
                key = (tuple(x + y for x, y in zip(ea, eb)), ba ^ bb, nu)
                out[key] = out.get(key, 0) + va * vb * fac
        return Poly(self.m, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly(m={self.m}, {len(self.terms)} terms)"

    # structure ------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {sum(k[0]) for k in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_scalar(self) -> bool:
        return all(k[1] == 0 for k in self.terms)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.m, {k: v for k, v in self.terms.items() if sum(k[0]) == d})

    def homogeneous_parts(self) -> dict[int, "Poly"]:
        return {d: self.homogeneous_part(d) for d in sorted(self.degrees())}

    def conjugate(self) -> "Poly":
        """Complex conjugation (i -> -i) of all coefficients."""
        return Poly(self.m, {k: (-v if k[2] & UNIT_I else v) for k, v in self.terms.items()})

    # multiplications by coordinates ---------------------------------------
    def times_coordinate(self, i: int) -> "Poly":
        out = {}
        for (exps, blade, unit), v in self.terms.items():
            e = list(exps)
            e[i] += 1
            out[(tuple(e), blade, unit)] = v
        return Poly(self.m, out)

    def times_norm_sq(self) -> "Poly":
        out: dict = {}
        for (exps, blade, unit), v in self.terms.items():
            for i in range(self.m):
                e = list(exps)
                e[i] += 2
                key = (tuple(e), blade, unit)
                out[key] = out.get(key, 0) + v
        return Poly(self.m, out)

    def vector_mult(self) -> "Poly":
        """Left multiplication by the vector variable sum_j e_j x_j."""
        out: dict = {}
        for (exps, blade, unit), v in self.terms.items():
            for j in range(self.m):
                b = 1 << j
                e = list(exps)
                e[j] += 1
                key = (tuple(e), b ^ blade, unit)
                out[key] = out.get(key, 0) + (v if blade_sign(b, blade) > 0 else -v)
        return Poly(self.m, out)

    # derivatives ----------------------------------------------------------
    def partial(self, i: int) -> "Poly":
        out: dict = {}
        for (exps, blade, unit), v in self.terms.items():
            n = exps[i]
            if n:
                e = list(exps)
                e[i] = n - 1
                key = (tuple(e), blade, unit)
                out[key] = out.get(key, 0) + v * n
        return Poly(self.m, out)

    def laplacian(self) -> "Poly":
        out: dict = {}
        for (exps, blade, unit), v in self.terms.items():
            for i, n in enumerate(exps):
                if n >= 2:
                    e = list(exps)
                    e[i] = n - 2
                    key = (tuple(e), blade, unit)
                    out[key] = out.get(key, 0) + v * n * (n - 1)
        return Poly(self.m, out)

    def euler(self) -> "Poly":
        """Euler operator sum_i x_i d_i; scales degree-d terms by d."""
        return Poly(self.m, {k: v * sum(k[0]) for k, v in self.terms.items()})

    def dirac(self) -> "Poly":
        """Left Dirac operator sum_j e_j d_j."""
        out: dict = {}
        for (exps, blade, unit), v in self.terms.items():
            for j, n in enumerate(exps):
                if n:
                    b = 1 << j
                    e = list(exps)
                    e[j] = n - 1
                    key = (tuple(e), b ^ blade, unit)
                    c = v * n
                    out[key] = out.get(key, 0) + (c if blade_sign(b, blade) > 0 else -c)
        return Poly(self.m, out)

    # numerics -------------------------------------------------------------
    def evaluate(self, X: np.ndarray) -> np.ndarray:
        """Values at points X of shape (n, m) as a complex (n, 2^m) array."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        n = X.shape[0]
        out = np.zeros((n, 1 << self.m), dtype=complex)
        powers: dict = {}
        unit_val = {0: 1.0, 1: 1j, 2: math.sqrt(2), 3: 1j * math.sqrt(2)}
        for (exps, blade, unit), v in self.terms.items():
            if exps not in powers:
                val = np.ones(n)
                for i, e in enumerate(exps):
                    if e:
                        val = val * X[:, i] ** e
                powers[exps] = val
            out[:, blade] += float(v) * unit_val[unit] * powers[exps]
        return out

    # serialization --------------------------------------------------------
    def to_dict(self) -> dict:
        grouped: dict = {}
        for (exps, blade, unit), v in self.terms.items():
            entry = grouped.setdefault((exps, blade, unit >> 1), [Fraction(0), Fraction(0)])
            entry[unit & 1] += v
        terms = [
            {"exponents": list(exps), "blade": blade, "sqrt2": s,
             "re": str(re), "im": str(im)}
            for (exps, blade, s), (re, im) in sorted(grouped.items())
        ]
        return {"m": self.m, "terms": terms}

    @classmethod
    def from_dict(cls, data: dict) -> "Poly":
        m = int(data["m"])
        out: dict = {}
        for t in data["terms"]:
            exps = tuple(int(e) for e in t["exponents"])
            if len(exps) != m:
                raise ValueError("exponent vector length must equal m")
            blade = int(t.get("blade", 0))
            if not 0 <= blade < (1 << m):
                raise ValueError(f"blade {blade} out of range")
            s = int(t.get("sqrt2", 0))
            if s not in (0, 1):
                raise ValueError("sqrt2 power must be 0 or 1")
            for part, bit in (("re", 0), ("im", 1)):
                c = Fraction(t.get(part, "0"))
                if c:
                    key = (exps, blade, (s << 1) | bit)
                    out[key] = out.get(key, 0) + c
        return cls(m, out)


class GaussPoly:
    """Represents ``poly(x) * exp(-|x|^2 / 2)``."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        self.poly = poly

    @property
    def m(self) -> int:
        return self.poly.m

    @classmethod
    def gaussian(cls, m: int) -> "GaussPoly":
        return cls(Poly.const(m, 1))

    @classmethod
    def zero(cls, m: int) -> "GaussPoly":
        return cls(Poly.zero(m))

    def __add__(self, other: "GaussPoly") -> "GaussPoly":
        return GaussPoly(self.poly + other.poly)

    def __sub__(self, other: "GaussPoly") -> "GaussPoly":
        return GaussPoly(self.poly - other.poly)

    def __neg__(self) -> "GaussPoly":
        return GaussPoly(-self.poly)

    def scale(self, c) -> "GaussPoly":
        return GaussPoly(self.poly.scale(c))

    def __mul__(self, c):
        if isinstance(c, (Poly, GaussPoly)):
            raise TypeError("products of two GaussPolys leave the class")
        return self.scale(c)

    __rmul__ = __mul__

    def times_poly(self, p: Poly) -> "GaussPoly":
        """Left multiplication by a polynomial factor."""
        return GaussPoly(p * self.poly)

    def __eq__(self, other):
        if not isinstance(other, GaussPoly):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def __repr__(self):
        return f"GaussPoly(m={self.m}, {len(self.poly.terms)} terms)"

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        g = np.exp(-0.5 * np.sum(X * X, axis=1))
        return self.poly.evaluate(X) * g[:, None]

    def to_json(self) -> str:
        return json.dumps(self.poly.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GaussPoly":
        return cls(Poly.from_dict(json.loads(text)))


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
HALF_SQRT2 = QS2(0, HALF)


def _laplacian(f: GaussPoly) -> GaussPoly:
    p = f.poly
    return GaussPoly(p.laplacian() - p.euler().scale(2) - p.scale(p.m) + p.times_norm_sq())


def _norm_sq(f: GaussPoly) -> GaussPoly:
    return GaussPoly(f.poly.times_norm_sq())


def _euler(f: GaussPoly) -> GaussPoly:
    p = f.poly
    return GaussPoly(p.euler() - p.times_norm_sq())


def _dirac(f: GaussPoly) -> GaussPoly:
    p = f.poly
    return GaussPoly(p.dirac() - p.vector_mult())


def _vector_mult(f: GaussPoly) -> GaussPoly:
    return GaussPoly(f.poly.vector_mult())


def _h(f: GaussPoly) -> GaussPoly:
    p = f.poly
    return GaussPoly(p.laplacian().scale(-HALF) + p.euler() + p.scale(Fraction(p.m, 2)))


def _e(f: GaussPoly) -> GaussPoly:
    p = f.poly
    return GaussPoly(p.laplacian().scale(-QUARTER) + p.euler() + p.scale(Fraction(p.m, 2))
                     - p.times_norm_sq())


def _f(f: GaussPoly) -> GaussPoly:
    return GaussPoly(f.poly.laplacian().scale(QUARTER))


def _b_plus(f: GaussPoly) -> GaussPoly:
    p = f.poly
    return GaussPoly((p.vector_mult().scale(2) - p.dirac()).scale(HALF_SQRT2))


def _b_minus(f: GaussPoly) -> GaussPoly:
    return GaussPoly(f.poly.dirac().scale(-HALF_SQRT2))


def _casimir_omega(f: GaussPoly) -> GaussPoly:
    """(E + (m-2)/2)^2 - |x|^2 Laplacian."""
    lam = Fraction(f.m - 2, 2)
    g = _euler(f) + f.scale(lam)
    g = _euler(g) + g.scale(lam)
    return g - _norm_sq(_laplacian(f))


def _gamma(f: GaussPoly) -> GaussPoly:
    """Gamma operator -x D - E (angular Dirac operator)."""
    return -(_vector_mult(_dirac(f)) + _euler(f))


def _scasimir(f: GaussPoly) -> GaussPoly:
    bmbp = _b_minus(_b_plus(f))
    bpbm = _b_plus(_b_minus(f))
    return (bmbp - bpbm).scale(HALF) - f.scale(HALF)


def _casimir_c(f: GaussPoly) -> GaussPoly:
    bmbp = _b_minus(_b_plus(f))
    bpbm = _b_plus(_b_minus(f))
    out = f.scale(QUARTER) + (bmbp - bpbm).scale(HALF)
    out = out + _h(_h(f)) + (_e(_f(f)) + _f(_e(f))).scale(2)
    return out


OPERATORS: dict[str, Callable[[GaussPoly], GaussPoly]] = {
    "Laplacian": _laplacian,
    "NormSq": _norm_sq,
    "Euler": _euler,
    "Dirac": _dirac,
    "VectorMult": _vector_mult,
    "h": _h,
    "e": _e,
    "f": _f,
    "bPlus": _b_plus,
    "bMinus": _b_minus,
    "CasimirOmega": _casimir_omega,
    "CasimirC": _casimir_c,
    "Scasimir": _scasimir,
    "GammaOp": _gamma,
}


def apply_operator(tag: str, f: GaussPoly) -> GaussPoly:
    try:
        op = OPERATORS[tag]
    except KeyError:
        raise ValueError(f"unknown operator {tag!r}; choose from {sorted(OPERATORS)}") from None
    return op(f)


def apply_word(word: Iterable[str], f: GaussPoly) -> GaussPoly:
    """Apply a product of operators; the rightmost tag acts first."""
    for tag in reversed(list(word)):
        f = apply_operator(tag, f)
    return f


def commutator(a: str, b: str, f: GaussPoly) -> GaussPoly:
    return apply_word([a, b], f) - apply_word([b, a], f)


def anticommutator(a: str, b: str, f: GaussPoly) -> GaussPoly:
    return apply_word([a, b], f) + apply_word([b, a], f)


# ---------------------------------------------------------------------------
# harmonic and monogenic building blocks
# ---------------------------------------------------------------------------

def _rising(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def check_unit_direction(direction: Sequence) -> list[Fraction]:
    u = [Fraction(c) for c in direction]
    if sum(c * c for c in u) != 1:
        raise ValueError(f"direction {direction!r} is not an exact unit vector")
    return u


def zonal_harmonic(k: int, m: int, direction: Sequence) -> Poly:
    """Degree-k zonal harmonic about ``direction``.

    It equals |x|^k C_k^lambda(<x,u>/|x|) with lambda = (m-2)/2, rescaled so
    that the coefficient of <x,u>^k is 1 (this also covers m = 2, where the
    Gegenbauer polynomial itself degenerates).
    """
    if m < 2:
        raise ValueError("zonal harmonics need m >= 2")
    if k < 0:
        raise ValueError("degree must be non-negative")
    u = check_unit_direction(direction)
    if len(u) != m:
        raise ValueError("direction length must equal m")
    if k == 0:
        return Poly.const(m, 1)
    lam1 = Fraction(m, 2)  # lambda + 1
    lin2 = Poly.linear([2 * c for c in u])
    r2 = Poly.norm_sq(m)
    lin_pows = [Poly.const(m, 1)]
    for _ in range(k):
        lin_pows.append(lin_pows[-1] * lin2)
    r_pow = Poly.const(m, 1)
    out = Poly.zero(m)
    for j in range(k // 2 + 1):
        c = Fraction((-1) ** j) * _rising(lam1, k - j - 1) / (
            math.factorial(j) * math.factorial(k - 2 * j))
        out = out + (lin_pows[k - 2 * j] * r_pow).scale(c)
        r_pow = r_pow * r2
    lead = Fraction(2 ** k) * _rising(lam1, k - 1) / math.factorial(k)
    return out.scale(1 / lead)


def _require_homogeneous(p: Poly) -> int:
    degs = p.degrees()
    if len(degs) > 1:
        raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
    return degs.pop() if degs else 0


def harmonic_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Fischer decomposition p = sum_j |x|^{2j} H_{k-2j} of a homogeneous p.

    Returns ``(H, j)`` pairs for j = 0..floor(k/2); components may be zero.
    Each H comes from the closed projector H = sum_i c_i |x|^{2i} Lap^i p
    with c_0 = 1 and c_{i+1} = -c_i / (2 (i+1) (m + 2 deg - 2i - 4)); the
    remainder (p - H) / |x|^2 is read off the same sum without division.
    """
    k = _require_homogeneous(p)
    m = p.m
    r2 = Poly.norm_sq(m)
    out: list[tuple[Poly, int]] = []
    for j in range(k // 2 + 1):
        deg = k - 2 * j
        laps = [p]
        while laps[-1]:
            laps.append(laps[-1].laplacian())
        laps.pop()
        coeffs = [Fraction(1)]
        for i in range(len(laps) - 1):
            coeffs.append(-coeffs[-1] / (2 * (i + 1) * (m + 2 * deg - 2 * i - 4)))
        h = p
        rest = Poly.zero(m)
        r_pow = Poly.const(m, 1)  # |x|^{2(i-1)}
        for i in range(1, len(laps)):
            term = (r_pow * laps[i]).scale(coeffs[i])
            rest = rest - term
            h = h + r2 * term
            r_pow = r_pow * r2
        out.append((h, j))
        p = rest
    return out


def monogenic_project(h: Poly) -> tuple[Poly, Poly]:
    """Split a harmonic homogeneous H of degree k as H = M_k + x M_{k-1}.

    Uses M_{k-1} = -D H / (2k + m - 2), which is monogenic because D^2 = -Lap.
    """
    k = _require_homogeneous(h)
    if h.laplacian():
        raise ValueError("monogenic_project needs a harmonic polynomial")
    m = h.m
    dh = h.dirac()
    if not dh:
        return h, Poly.zero(m)
    lower = dh.scale(Fraction(-1, 2 * k + m - 2))
    upper = h - lower.vector_mult()
    return upper, lower


def monogenic_seed(k: int, m: int, direction: Sequence) -> Poly:
    """Spherical monogenic M_k: the monogenic part of the zonal harmonic."""
    return monogenic_project(zonal_harmonic(k, m, direction))[0]


def default_direction(m: int) -> list[Fraction]:
    return [Fraction(1)] + [Fraction(0)] * (m - 1)


def _laguerre_poly(p: int, alpha: Fraction, m: int) -> Poly:
    """L_p^alpha(|x|^2) as an exact polynomial in x."""
    r2 = Poly.norm_sq(m)
    out = Poly.zero(m)
    r_pow = Poly.const(m, 1)
    for i in range(p + 1):
        c = Fraction((-1) ** i) * binom_poly(p + alpha, p - i) / math.factorial(i)
        out = out + r_pow.scale(c)
        r_pow = r_pow * r2
    return out


def laguerre_radial(p: int, alpha, m: int) -> Poly:
    return _laguerre_poly(p, Fraction(alpha), m)


def hermite_phi(j: int, k: int, m: int, direction: Sequence | None = None,
                method: str = "laguerre") -> GaussPoly:
    """phi_{j,k} = 2^j j! L_j^{k+lambda}(|x|^2) H_k e^{-|x|^2/2}.

    ``method="raising"`` builds the same function as (2e)^j H_k G instead.
    """
    if direction is None:
        direction = default_direction(m)
    hk = zonal_harmonic(k, m, direction)
    if method == "raising":
        f = GaussPoly(hk)
        for _ in range(j):
            f = _e(f).scale(2)
        return f
    if method != "laguerre":
        raise ValueError("method must be 'laguerre' or 'raising'")
    alpha = Fraction(2 * k + m - 2, 2)
    lag = _laguerre_poly(j, alpha, m).scale(2 ** j * math.factorial(j))
    return GaussPoly(lag * hk)


def clifford_psi(j: int, k: int, m: int, direction: Sequence | None = None,
                 method: str = "laguerre") -> GaussPoly:
    """Clifford-Hermite function psi_{j,k} built on the seed M_k.

    Even j = 2p: 2^p p! L_p^{k+lambda}(r^2) M_k G.
    Odd j = 2p+1: 2^p p! sqrt2 L_p^{k+lambda+1}(r^2) x M_k G.
    ``method="raising"`` builds (b^+)^j M_k G instead.
    """
    if direction is None:
        direction = default_direction(m)
    mk = monogenic_seed(k, m, direction)
    if method == "raising":
        f = GaussPoly(mk)
        for _ in range(j):
            f = _b_plus(f)
        return f
    if method != "laguerre":
        raise ValueError("method must be 'laguerre' or 'raising'")
    p, odd = divmod(j, 2)
    alpha = Fraction(2 * k + m - 2, 2) + odd
    lag = _laguerre_poly(p, alpha, m).scale(2 ** p * math.factorial(p))
    if odd:
        return GaussPoly((lag * mk.vector_mult()).scale(QS2(0, 1)))
    return GaussPoly(lag * mk)


# ---------------------------------------------------------------------------
# inner product
# ---------------------------------------------------------------------------

def _double_factorial_odd(n: int) -> int:
    """(n-1)!! for even n >= 0."""
    out = 1
    for v in range(n - 1, 0, -2):
        out *= v
    return out


def gaussian_moment(exponents: Sequence[int]) -> Fraction:
    """int x^gamma e^{-|x|^2} dx divided by pi^{m/2}."""
    out = Fraction(1)
    for g in exponents:
        if g % 2:
            return Fraction(0)
        out *= Fraction(_double_factorial_odd(g), 2 ** (g // 2))
    return out


def inner_product(f: GaussPoly, g: GaussPoly) -> QS2:
    """[int bar(conj f) g dx]_0 as an exact multiple of pi^{m/2}.

    bar(e_A) e_A = 1 for every blade, so only equal blades pair up.
    """
    if f.m != g.m:
        raise ValueError(f"dimension mismatch: {f.m} vs {g.m}")
    by_blade: dict[int, list] = {}
    for (exps, blade, unit), v in g.poly.terms.items():
        by_blade.setdefault(blade, []).append((exps, unit, v))
    parts: dict[int, Fraction] = {}
    moments: dict = {}
    for (ea, blade, ua), va in f.poly.terms.items():
        if ua & UNIT_I:
            va = -va  # complex conjugate of i
        for eb, ub, vb in by_blade.get(blade, ()):
            key = tuple(x + y for x, y in zip(ea, eb))
            mom = moments.get(key)
            if mom is None:
                mom = moments[key] = gaussian_moment(key)
            if not mom:
                continue
            nu, fac = _unit_product(ua, ub)
            parts[nu] = parts.get(nu, 0) + va * vb * fac * mom
    return QS2.from_units(parts)


def norm_sq(f: GaussPoly) -> QS2:
    return inner_product(f, f)
