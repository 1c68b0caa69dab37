"""Applying a generalized Fourier transform to concrete functions.

The exact route expands a :class:`GaussPoly` in the phi (harmonic) or psi
(Clifford) eigenbasis and multiplies each component by its eigenvalue.  The
numerical routes (kernel quadrature and the radial Bochner integral) exist to
confirm that the kernel integral reproduces the exact operator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from . import kernels, specfun
from .cliffalg import array_product
from .exactnum import QI, QS2, Mod4Phase, binom_poly, compare_real
from .kernels import CLIFFORD, HARMONIC, KernelSpec, spectrum
from .opalg import (GaussPoly, Poly, apply_operator, harmonic_decompose,
                    inner_product, laguerre_radial, monogenic_project)

IMAG_UNIT = QI(0, 1)


# ---------------------------------------------------------------------------
# exact eigen-expansion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _laguerre_cached(p: int, alpha: Fraction, m: int) -> Poly:
    return laguerre_radial(p, alpha, m)


def power_in_laguerre(n: int, alpha: Fraction) -> list[Fraction]:
    """c_p with r^n = sum_{p<=n} c_p L_p^alpha(r), i.e. n! (-1)^p binom(n+alpha, n-p)."""
    return [math.factorial(n) * (-1) ** p * binom_poly(n + alpha, n - p) for p in range(n + 1)]


def _radial_transform(i: int, alpha: Fraction, phases: list[Mod4Phase], m: int) -> Poly:
    """Image of |x|^{2i} under L_p^alpha -> phases[p] L_p^alpha."""
    out = Poly.zero(m)
    for p, c in enumerate(power_in_laguerre(i, alpha)):
        if c:
            out = out + _laguerre_cached(p, alpha, m).scale(phases[p].to_qi() * QI(c))
    return out


def eigen_transform(spec: KernelSpec, f: GaussPoly) -> GaussPoly:
    """Exact image of ``f`` under the transform described by ``spec``."""
    if f.m != spec.m:
        raise ValueError(f"dimension mismatch: spec m={spec.m}, function m={f.m}")
    m = spec.m
    lam = spec.lam
    out = Poly.zero(m)
    for deg, part in f.poly.homogeneous_parts().items():
        for h, i in harmonic_decompose(part):
            if not h:
                continue
            k = deg - 2 * i
            if spec.setting == HARMONIC:
                phases = [spectrum(spec, p, k) for p in range(i + 1)]
                out = out + _radial_transform(i, k + lam, phases, m) * h
                continue
            upper, lower = monogenic_project(h)
            if upper:
                phases = [spectrum(spec, 2 * p, k) for p in range(i + 1)]
                out = out + _radial_transform(i, k + lam, phases, m) * upper
            if lower:
                phases = [spectrum(spec, 2 * p + 1, k - 1) for p in range(i + 1)]
                out = out + _radial_transform(i, k + lam, phases, m) * lower.vector_mult()
    check = f.poly.degree()
    if out.degree() > check:
        raise ArithmeticError("eigen-expansion raised the polynomial degree")
    return GaussPoly(out)


def transform_power(spec: KernelSpec, f: GaussPoly, n: int) -> GaussPoly:
    for _ in range(n):
        f = eigen_transform(spec, f)
    return f


# ---------------------------------------------------------------------------
# Helmholtz relations
# ---------------------------------------------------------------------------

def helmholtz_residual(spec: KernelSpec, f: GaussPoly) -> tuple[GaussPoly, GaussPoly]:
    """(T Lap f + |y|^2 T f, T |x|^2 f + Lap T f); both vanish for valid T."""
    tf = eigen_transform(spec, f)
    first = eigen_transform(spec, apply_operator("Laplacian", f)) + apply_operator("NormSq", tf)
    second = eigen_transform(spec, apply_operator("NormSq", f)) + apply_operator("Laplacian", tf)
    return first, second


def clifford_helmholtz_residual(spec: KernelSpec, f: GaussPoly) -> tuple[GaussPoly, GaussPoly]:
    """(T D f + i y T f, T x f + i D T f) for the Dirac operator D."""
    tf = eigen_transform(spec, f)
    first = (eigen_transform(spec, apply_operator("Dirac", f))
             + apply_operator("VectorMult", tf).scale(IMAG_UNIT))
    second = (eigen_transform(spec, apply_operator("VectorMult", f))
              + apply_operator("Dirac", tf).scale(IMAG_UNIT))
    return first, second


# ---------------------------------------------------------------------------
# uncertainty
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UncertaintyRecord:
    """Exact squared norms (coefficients of pi^{m/2}) entering the inequalities.

    Product form: ||x f||^2 ||x T f||^2 >= (m/2)^2 ||f||^4.
    Sum form:     ||x f||^2 + ||x T f||^2 >= m ||f||^2.
    """

    norm_f: QS2
    spread_f: QS2
    spread_tf: QS2
    m: int

    @property
    def lhs_product_sq(self) -> QS2:
        return self.spread_f * self.spread_tf

    @property
    def bound_sq(self) -> QS2:
        return QS2(Fraction(self.m * self.m, 4)) * self.norm_f * self.norm_f

    @property
    def sum_lhs(self) -> QS2:
        return self.spread_f + self.spread_tf

    @property
    def sum_bound(self) -> QS2:
        return QS2(self.m) * self.norm_f

    @property
    def lhs_product(self) -> float:
        return math.sqrt(float(self.lhs_product_sq))

    @property
    def bound(self) -> float:
        return math.sqrt(float(self.bound_sq))

    def product_holds(self) -> bool:
        return compare_real(self.lhs_product_sq, self.bound_sq) >= 0

    def sum_holds(self) -> bool:
        return compare_real(self.sum_lhs, self.sum_bound) >= 0

    def sum_equality(self) -> bool:
        return self.sum_lhs == self.sum_bound


def _spread(spec: KernelSpec, f: GaussPoly) -> QS2:
    if spec.setting == CLIFFORD:
        xf = apply_operator("VectorMult", f)
        return inner_product(xf, xf)
    return inner_product(f, apply_operator("NormSq", f))


def uncertainty_check(spec: KernelSpec, f: GaussPoly) -> UncertaintyRecord:
    if not f:
        raise ValueError("uncertainty functionals need a nonzero function")
    tf = eigen_transform(spec, f)
    return UncertaintyRecord(norm_f=inner_product(f, f), spread_f=_spread(spec, f),
                             spread_tf=_spread(spec, tf), m=spec.m)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor Gauss-Hermite rule for integrands decaying like e^{-|x|^2/2}.

    Nodes x = sqrt(2) u / scale and weights carry the factor e^{|x|^2/2}
    back out, so ``sum(weights * g(nodes))`` approximates the plain integral
    of g.
    """

    nodes: np.ndarray
    weights: np.ndarray
    per_axis: int
    scale: float = 1.0
    scheme: str = "tensor-hermite"

    @property
    def size(self) -> int:
        return self.weights.size


DEFAULT_BUDGET = 400_000


def hermite_grid(m: int, per_axis: int | None = None, scale: float = 1.0,
                 prune: float = 1e-28, budget: int = DEFAULT_BUDGET) -> QuadratureGrid:
    """Tensor grid with ``per_axis`` nodes per coordinate (64, or 32 for m = 3)."""
    if m > 3:
        raise ValueError("tensor quadrature is limited to m <= 3")
    if per_axis is None:
        per_axis = 64 if m <= 2 else 32
    if per_axis ** m > 8 * budget:
        raise ValueError(f"grid of {per_axis}^{m} nodes exceeds the budget")
    u, wu = np.polynomial.hermite.hermgauss(per_axis)
    mesh = np.meshgrid(*([u] * m), indexing="ij")
    unodes = np.stack([g.ravel() for g in mesh], axis=1)
    wmesh = np.meshgrid(*([wu] * m), indexing="ij")
    gh = np.prod(np.stack([g.ravel() for g in wmesh], axis=1), axis=1)
    keep = gh > prune * gh.max()
    unodes, gh = unodes[keep], gh[keep]
    if gh.size > budget:
        raise ValueError(f"{gh.size} quadrature nodes exceed the budget {budget}")
    nodes = math.sqrt(2.0) * unodes / scale
    weights = gh * np.exp(np.sum(unodes * unodes, axis=1)) * (math.sqrt(2.0) / scale) ** m
    return QuadratureGrid(nodes=nodes, weights=weights, per_axis=per_axis, scale=scale)


def kernel_values(spec: KernelSpec, x: np.ndarray, y: np.ndarray, path: str = "auto"):
    if path == "auto":
        try:
            return kernels.closed_kernel(spec, x, y)
        except ValueError:
            return kernels.series_kernel(spec, x, y)
    if path == "closed":
        return kernels.closed_kernel(spec, x, y)
    if path == "series":
        return kernels.series_kernel(spec, x, y)
    raise ValueError("path must be 'auto', 'closed' or 'series'")


def _sample(f, nodes: np.ndarray, m: int) -> np.ndarray:
    if isinstance(f, GaussPoly):
        return f.evaluate(nodes)
    return np.asarray(f(nodes))


def quad_transform_many(spec: KernelSpec, fs, y, grid: QuadratureGrid | None = None,
                        path: str = "auto") -> list[np.ndarray]:
    """:func:`quad_transform` for several inputs sharing one kernel evaluation per y."""
    m = spec.m
    grid = grid or hermite_grid(m)
    ys = np.atleast_2d(np.asarray(y, dtype=float))
    samples = []
    for f in fs:
        vals = np.asarray(_sample(f, grid.nodes, m))
        if vals.ndim == 1:
            vals = np.pad(vals[:, None], ((0, 0), (0, (1 << m) - 1)))
        samples.append(vals.astype(complex))
    norm = (2 * math.pi) ** (-m / 2)
    results = [np.zeros((ys.shape[0], 1 << m), dtype=complex) for _ in samples]
    for row, yv in enumerate(ys):
        kv = kernel_values(spec, grid.nodes, yv[None, :], path)
        for out, vals in zip(results, samples):
            if spec.setting == HARMONIC:
                out[row] = norm * np.einsum("n,n,nb->b", grid.weights, kv, vals)
            else:
                prod = array_product(kv, vals, m)
                out[row] = norm * np.einsum("n,nb->b", grid.weights, prod)
    return results


def quad_transform(spec: KernelSpec, f, y, grid: QuadratureGrid | None = None,
                   path: str = "auto") -> np.ndarray:
    """(2 pi)^{-m/2} int K(x, y) f(x) dx by quadrature.

    ``f`` is a GaussPoly or a callable on (n, m) arrays returning (n,) values
    or (n, 2^m) multivector values.  Harmonic kernels act componentwise on
    multivector data; Clifford kernels multiply from the left.  The result
    has shape (2^m,) for a single point y and (n_y, 2^m) for a batch.
    """
    out = quad_transform_many(spec, [f], y, grid, path)[0]
    return out[0] if np.asarray(y).ndim == 1 else out


# ---------------------------------------------------------------------------
# radial (Bochner) route
# ---------------------------------------------------------------------------

RADIAL_NODES = 200
RADIAL_EXTENT = 12.0


@lru_cache(maxsize=None)
def _legendre(n: int, extent: float) -> tuple[np.ndarray, np.ndarray]:
    u, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * extent * (u + 1.0), 0.5 * extent * w


def radial_integral(m: int, k: int, f0: Callable, which: str, y_norm: float,
                    nodes: int = RADIAL_NODES, extent: float = RADIAL_EXTENT) -> float:
    """int_0^inf r^{m+k-1} f0(r) z^-lam J_{k+lam}(z) dr (plain) or the
    r^{m+k}, J_{k+1+lam} variant (vector), with z = r |y|."""
    lam = (m - 2) / 2.0
    r, w = _legendre(nodes, extent)
    vals = np.asarray(f0(r), dtype=complex)
    if which == "plain":
        order, power = k + lam, m + k - 1
    elif which == "vector":
        order, power = k + 1 + lam, m + k
    else:
        raise ValueError("which must be 'plain' or 'vector'")
    z = r * y_norm
    # z^-lam J_order(z) = z^(order-lam) * J_order(z) / z^order
    bess = specfun.bessel_scaled(order, z) * z ** (order - lam)
    return complex(np.sum(w * r ** power * vals * bess))


def bochner_factors(spec: KernelSpec, k: int) -> tuple[complex, complex]:
    """(alpha_k - k beta_k, alpha_{k+1} + (k+m-1) beta_{k+1}) from the spectrum.

    alpha_k = (i k mu_{0,k-1} + (k + 2 lam) mu_{0,k}) / (2(k+lam)),
    beta_k = (i mu_{0,k-1} - mu_{0,k}) / (2(k+lam)), with mu_{0,-1} = 0.
    """
    lam = float(spec.lam)
    mu = [spectrum(spec, 0, n).to_complex() for n in range(k + 2)]

    def alpha(n):
        prev = mu[n - 1] if n else 0.0
        return (1j * n * prev + (n + 2 * lam) * mu[n]) / (2 * (n + lam))

    def beta(n):
        prev = mu[n - 1] if n else 0.0
        return (1j * prev - mu[n]) / (2 * (n + lam))

    if k == 0 and lam == 0:
        plain = mu[0]  # alpha_0 = mu_{0,0}, beta_0 = 0 in the limit
    else:
        plain = alpha(k) - k * beta(k)
    vector = alpha(k + 1) + (k + spec.m - 1) * beta(k + 1)
    return plain, vector


def bochner_radial(spec: KernelSpec, k: int, f0: Callable, which: str, y_norm: float,
                   nodes: int = RADIAL_NODES, extent: float = RADIAL_EXTENT) -> complex:
    """Radial factor of T[f0(|x|) M_k] (plain) or T[f0(|x|) x M_k] (vector)."""
    if spec.setting != CLIFFORD:
        raise ValueError("bochner_radial needs a clifford spec")
    if k < 0:
        raise ValueError("k must be non-negative")
    plain, vector = bochner_factors(spec, k)
    factor = plain if which == "plain" else vector
    return factor * radial_integral(spec.m, k, f0, which, y_norm, nodes, extent)


def laguerre_profile(p: int, alpha: float) -> Callable:
    """r -> L_p^alpha(r^2) e^{-r^2/2}."""
    return lambda r: specfun.laguerre(p, alpha, r * r) * np.exp(-0.5 * r * r)


# ---------------------------------------------------------------------------
# scaling check of the uncertainty product
# ---------------------------------------------------------------------------

def scaled_uncertainty_ratio(spec: KernelSpec, f: GaussPoly, c: float,
                             x_nodes: int = 64, y_nodes: int = 16, path: str = "auto") -> float:
    """Numerical ||x f_c|| ||x T f_c|| / ||f_c||^2 for f_c(x) = f(c x).

    Both norms are Gauss-Hermite sums; T f_c is obtained from the kernel
    integral, so nothing here relies on the homogeneity of the kernel.
    """
    m = spec.m
    dense = 1 << m

    def fc(x):
        return f.evaluate(c * np.asarray(x))

    # the fine x rule must resolve K(x, y) at every node of the coarse y rule
    xg = hermite_grid(m, x_nodes, scale=c, prune=1e-20)
    yg = hermite_grid(m, y_nodes, scale=1.0 / c, prune=1e-20)
    fvals = fc(xg.nodes).reshape(xg.size, dense)
    r2x = np.sum(xg.nodes ** 2, axis=1)
    norm_f = np.sum(xg.weights[:, None] * np.abs(fvals) ** 2)
    spread_f = np.sum(xg.weights[:, None] * r2x[:, None] * np.abs(fvals) ** 2)
    tvals = quad_transform(spec, fc, yg.nodes, grid=xg, path=path)
    r2y = np.sum(yg.nodes ** 2, axis=1)
    spread_t = np.sum(yg.weights[:, None] * r2y[:, None] * np.abs(tvals) ** 2)
    return float(math.sqrt(spread_f * spread_t) / norm_f)
