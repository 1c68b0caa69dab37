"""Registry of invariant checks, grouped by module.

Every check is a zero-argument callable returning ``(passed, detail)``.
Checks tagged ``exact`` compare exact rational or mod-4 quantities; checks
tagged ``numeric`` compare floating-point values against a tolerance from
:mod:`gfourier.config`.  Range parameters default to the ranges the
acceptance suite uses.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import kernels, specfun, transform
from .cliffalg import (Multivector, bar_conjugate, bivector_blades, geometric_product,
                       outer_product)
from .config import TOLERANCES
from .exactnum import (QI, SELECTOR_TAGS, FSpec, F_eval, Mod4Phase, binom_poly,
                       eval_D, eval_E, selector_eval, table_csv, cos_sin_family_spec)
from .kernels import CLIFFORD, HARMONIC, make_spec, spectrum
from .opalg import (GaussPoly, Poly, apply_operator, anticommutator,
                    clifford_psi, commutator, hermite_phi, inner_product, monogenic_seed,
                    default_direction)

EXACT = "exact"
NUMERIC = "numeric"
MODULES = ("exactnum", "cliffalg", "opalg", "specfun", "kernels", "transform", "cli")
SEED = 20240917


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    kind: str
    fn: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class Result:
    module: str
    name: str
    kind: str
    passed: bool
    detail: str
    seconds: float


REGISTRY: dict[str, list[Check]] = {name: [] for name in MODULES}


def register(module: str, kind: str, name: str | None = None):
    def deco(fn):
        REGISTRY[module].append(Check(module, name or fn.__name__, kind, fn))
        return fn
    return deco


def run_suite(suite: str = "all", modules=None) -> list[Result]:
    if suite not in ("all", EXACT, NUMERIC):
        raise ValueError("suite must be 'all', 'exact' or 'numeric'")
    out = []
    for module in modules or MODULES:
        for check in REGISTRY[module]:
            if suite != "all" and check.kind != suite:
                continue
            start = time.perf_counter()
            try:
                passed, detail = check.fn()
            except Exception as exc:  # a crashing check is a failing check
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            out.append(Result(module, check.name, check.kind, bool(passed), detail,
                              time.perf_counter() - start))
    return out


def _mod4(v: Fraction) -> int:
    if v.denominator != 1:
        raise ArithmeticError(f"non-integer value {v}")
    return v.numerator % 4


def _first_failure(items) -> tuple[bool, str]:
    for item in items:
        return False, f"first failure at {item}"
    return True, "ok"


# ---------------------------------------------------------------------------
# random test data
# ---------------------------------------------------------------------------

def random_gausspoly(m: int, rng: np.random.Generator, degree: int = 4, terms: int = 4,
                     clifford: bool = False, complex_coeffs: bool = True) -> GaussPoly:
    """Small random polynomial times the Gaussian, with nonzero value."""
    poly = Poly.zero(m)
    while not poly:
        for _ in range(terms):
            deg = int(rng.integers(0, degree + 1))
            cuts = np.sort(rng.integers(0, deg + 1, size=m - 1))
            exps = np.diff(np.concatenate([[0], cuts, [deg]])).tolist()
            re = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
            im = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))) if complex_coeffs else 0
            blade = int(rng.integers(0, 1 << m)) if clifford else 0
            poly = poly + Poly.monomial(m, exps, QI(re, im), blade=blade)
    return GaussPoly(poly)


def sample_four_tuples(count: int, rng: np.random.Generator) -> list[tuple[int, int, int, int]]:
    everything = list(itertools.product(range(4), repeat=4))
    idx = rng.choice(len(everything), size=count, replace=False)
    return [everything[i] for i in sorted(idx)]


# ---------------------------------------------------------------------------
# exactnum
# ---------------------------------------------------------------------------

@register("exactnum", EXACT)
def e_polynomials_integer_valued(x_range=64, n_max=12):
    bad = ((n, x) for n in range(n_max + 1) for x in range(-x_range, x_range + 1)
           if eval_E(n, x).denominator != 1)
    return _first_failure(bad)


@register("exactnum", EXACT)
def d_polynomials_are_binomials(k_max=64, n_max=12):
    bad = ((n, k) for n in range(n_max + 1) for k in range(k_max + 1)
           if eval_D(n, Fraction(2 * k + 1, 2)) != binom_poly(k + n, 2 * n))
    return _first_failure(bad)


@register("exactnum", EXACT)
def binomial_period_mod4(n_levels=4):
    def bad():
        for N in range(n_levels + 1):
            for n in range(2 ** N):
                for x in range(2 ** (N + 3) + 1):
                    if _mod4(binom_poly(x, n)) != _mod4(binom_poly(x + 2 ** (N + 1), n)):
                        yield (N, n, x)
    return _first_failure(bad())


def _family_period(poly, shift, n_levels, index_max, strict=False):
    for N in range(n_levels + 1):
        top = 2 ** N - 1 if strict else 2 ** N
        for n in range(min(top, index_max) + 1):
            for x in range(2 ** (N + 3) + 1):
                a = poly(n, x + shift)
                if _mod4(a) != _mod4(poly(n, x + shift + 2 ** (N + 2))):
                    yield (N, n, x, "period 2^(N+2)")
                if _mod4(2 * a) != _mod4(2 * poly(n, x + shift + 2 ** (N + 1))):
                    yield (N, n, x, "doubled, period 2^(N+1)")


@register("exactnum", EXACT)
def e_family_period_mod4(n_levels=4, index_max=15):
    return _first_failure(_family_period(eval_E, 0, n_levels, index_max))


@register("exactnum", EXACT)
def d_family_period_mod4(n_levels=4, index_max=15):
    """Holds for n < 2^N only: at n = 2^N, D_1(1/2) = 0 while D_1(9/2) = 10."""
    return _first_failure(_family_period(eval_D, Fraction(1, 2), n_levels, index_max, strict=True))


@register("exactnum", EXACT)
def d_family_boundary_counterexample():
    """The bound n <= 2^N is too generous for the D family at every N <= 4."""
    hits = [N for N in range(5)
            if any(_family_period_at(eval_D, Fraction(1, 2), N, 2 ** N))]
    return hits == list(range(5)), f"boundary failures at N in {hits}"


def _family_period_at(poly, shift, N, n):
    for x in range(2 ** (N + 3) + 1):
        if _mod4(poly(n, x + shift)) != _mod4(poly(n, x + shift + 2 ** (N + 2))):
            yield x


@register("exactnum", EXACT)
def odd_e_vanishes_on_even(n_max=15, k_max=64):
    bad = ((n, k) for n in range(1, n_max + 1, 2) for k in range(0, k_max + 1, 2)
           if _mod4(eval_E(n, k)) != 0)
    return _first_failure(bad)


SELECTOR_INDICATORS: dict[str, Callable[[int], int]] = {
    "E0101": lambda x: int(x % 4 in (1, 3)),
    "E0010": lambda x: int(x % 4 == 2),
    "E0001": lambda x: int(x % 4 == 3),
    "D0110": lambda k: int(k % 4 in (1, 2)),
    "D0011": lambda k: int(k % 4 in (2, 3)),
    "D0010": lambda k: int(k % 4 == 2),
}


@register("exactnum", EXACT)
def selectors_match_indicators(x_max=256):
    def bad():
        for tag in SELECTOR_TAGS:
            for x in range(x_max + 1):
                arg = Fraction(x) if tag[0] == "E" else Fraction(2 * x + 1, 2)
                if selector_eval(tag, arg) != SELECTOR_INDICATORS[tag](x):
                    yield (tag, x)
    return _first_failure(bad())


@register("exactnum", EXACT)
def four_tuple_symbol_is_4_periodic(x_max=256):
    def bad():
        for family in ("E", "D"):
            for four in itertools.product(range(4), repeat=4):
                spec = FSpec.four_tuple(family, *four)
                for x in range(x_max - 3):
                    arg = Fraction(x) if family == "E" else Fraction(2 * x + 1, 2)
                    if F_eval(spec, arg) != F_eval(spec, arg + 4):
                        yield (family, four, x)
    return _first_failure(bad())


# ---------------------------------------------------------------------------
# cliffalg
# ---------------------------------------------------------------------------

def _random_multivector(m, rng, density=0.5):
    terms = {b: Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
             for b in range(1 << m) if rng.random() < density}
    return Multivector(m, terms)


@register("cliffalg", EXACT)
def geometric_product_associative(trials=20):
    rng = np.random.default_rng(SEED)
    for m in range(1, 6):
        for _ in range(trials):
            a, b, c = (_random_multivector(m, rng) for _ in range(3))
            if (a * b) * c != a * (b * c):
                return False, f"m={m}"
    return True, "ok"


@register("cliffalg", EXACT)
def vector_products_split(trials=40):
    rng = np.random.default_rng(SEED + 1)
    for _ in range(trials):
        m = int(rng.integers(1, 6))
        xs = [Fraction(int(v)) for v in rng.integers(-6, 7, size=m)]
        ys = [Fraction(int(v)) for v in rng.integers(-6, 7, size=m)]
        x, y = Multivector.vector(xs), Multivector.vector(ys)
        dot = sum(a * b for a, b in zip(xs, ys))
        if x * y + y * x != Multivector.scalar(m, -2 * dot):
            return False, f"anticommutator, m={m}"
        if x * y != Multivector.scalar(m, -dot) + outer_product(x, y):
            return False, f"grade split, m={m}"
    return True, "ok"


@register("cliffalg", EXACT)
def bar_is_anti_involution(trials=30):
    rng = np.random.default_rng(SEED + 2)
    for _ in range(trials):
        m = int(rng.integers(1, 6))
        a, b = _random_multivector(m, rng), _random_multivector(m, rng)
        if bar_conjugate(bar_conjugate(a)) != a:
            return False, f"involution, m={m}"
        if bar_conjugate(geometric_product(a, b)) != bar_conjugate(b) * bar_conjugate(a):
            return False, f"reversal of products, m={m}"
    return True, "ok"


# ---------------------------------------------------------------------------
# opalg
# ---------------------------------------------------------------------------

HARMONIC_DIMS = (2, 3, 4, 5)
CLIFFORD_DIMS = (2, 3)


def _phi_set(m, j_max=3, k_max=3):
    return {(j, k): hermite_phi(j, k, m) for j in range(j_max + 2) for k in range(k_max + 1)}


def _psi_set(m, j_max=3, k_max=3):
    return {(j, k): clifford_psi(j, k, m) for j in range(j_max + 2) for k in range(k_max + 1)}


@register("opalg", EXACT)
def sl2_relations(dims=HARMONIC_DIMS, j_max=3, k_max=3):
    for m in dims:
        for (j, k), g in _phi_set(m, j_max, k_max).items():
            if j > j_max:
                continue
            if commutator("h", "e", g) != apply_operator("e", g).scale(2):
                return False, f"[h,e] m={m} j={j} k={k}"
            if commutator("h", "f", g) != apply_operator("f", g).scale(-2):
                return False, f"[h,f] m={m} j={j} k={k}"
            if commutator("e", "f", g) != apply_operator("h", g):
                return False, f"[e,f] m={m} j={j} k={k}"
    return True, "ok"


@register("opalg", EXACT)
def osp_anticommutators(dims=CLIFFORD_DIMS, j_max=3, k_max=3):
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    for m in dims:
        for (j, k), g in _psi_set(m, j_max, k_max).items():
            if j > j_max:
                continue
            if anticommutator("bMinus", "bPlus", g).scale(half) != apply_operator("h", g):
                return False, f"{{b-,b+}} m={m} j={j} k={k}"
            if anticommutator("bPlus", "bPlus", g).scale(quarter) != apply_operator("e", g):
                return False, f"{{b+,b+}} m={m} j={j} k={k}"
            if anticommutator("bMinus", "bMinus", g).scale(-quarter) != apply_operator("f", g):
                return False, f"{{b-,b-}} m={m} j={j} k={k}"
    return True, "ok"


@register("opalg", EXACT)
def harmonic_basis_actions(dims=HARMONIC_DIMS, j_max=3, k_max=3):
    for m in dims:
        phi = _phi_set(m, j_max, k_max)
        for j in range(j_max + 1):
            for k in range(k_max + 1):
                g = phi[(j, k)]
                if apply_operator("h", g) != g.scale(Fraction(4 * j + 2 * k + m, 2)):
                    return False, f"h m={m} j={j} k={k}"
                if apply_operator("e", g) != phi[(j + 1, k)].scale(Fraction(1, 2)):
                    return False, f"e m={m} j={j} k={k}"
                low = phi[(j - 1, k)].scale(-j * (2 * j - 2 + m + 2 * k)) if j else GaussPoly.zero(m)
                if apply_operator("f", g) != low:
                    return False, f"f m={m} j={j} k={k}"
                if apply_operator("CasimirOmega", g) != g.scale(Fraction(2 * k + m - 2, 2) ** 2):
                    return False, f"Omega m={m} j={j} k={k}"
    return True, "ok"


@register("opalg", EXACT)
def clifford_basis_actions(dims=CLIFFORD_DIMS, j_max=3, k_max=3):
    for m in dims:
        psi = _psi_set(m, j_max, k_max)
        for j in range(j_max + 1):
            for k in range(k_max + 1):
                g = psi[(j, k)]
                if apply_operator("bPlus", g) != psi[(j + 1, k)]:
                    return False, f"b+ m={m} j={j} k={k}"
                p, odd = divmod(j, 2)
                if odd:
                    want = psi[(2 * p, k)].scale(2 * p + m + 2 * k)
                else:
                    want = psi[(j - 1, k)].scale(2 * p) if j else GaussPoly.zero(m)
                if apply_operator("bMinus", g) != want:
                    return False, f"b- m={m} j={j} k={k}"
                if apply_operator("CasimirC", g) != g.scale(Fraction(2 * k + m - 1, 2) ** 2):
                    return False, f"C m={m} j={j} k={k}"
    return True, "ok"


@register("opalg", EXACT)
def scasimir_identities(dims=CLIFFORD_DIMS, j_max=3, k_max=3):
    for m in dims:
        for (j, k), g in _psi_set(m, j_max, k_max).items():
            if j > j_max:
                continue
            s = apply_operator("Scasimir", g)
            if apply_operator("Scasimir", s) != apply_operator("CasimirC", g):
                return False, f"S^2 = C m={m} j={j} k={k}"
            gamma_form = g.scale(Fraction(m - 1, 2)) - apply_operator("GammaOp", g)
            if s != gamma_form:
                return False, f"S = (m-1)/2 - Gamma m={m} j={j} k={k}"
            for op in ("e", "f", "h"):
                if commutator("Scasimir", op, g):
                    return False, f"[S,{op}] m={m} j={j} k={k}"
            for op in ("bPlus", "bMinus"):
                if anticommutator("Scasimir", op, g):
                    return False, f"{{S,{op}}} m={m} j={j} k={k}"
    return True, "ok"


@register("opalg", EXACT)
def basis_constructions_agree(j_max=4, k_max=4):
    for m in HARMONIC_DIMS:
        for j in range(j_max + 1):
            for k in range(k_max + 1):
                if hermite_phi(j, k, m) != hermite_phi(j, k, m, method="raising"):
                    return False, f"phi m={m} j={j} k={k}"
    for m in CLIFFORD_DIMS:
        for j in range(j_max + 1):
            for k in range(k_max + 1):
                if clifford_psi(j, k, m) != clifford_psi(j, k, m, method="raising"):
                    return False, f"psi m={m} j={j} k={k}"
    return True, "ok"


# ---------------------------------------------------------------------------
# specfun
# ---------------------------------------------------------------------------

@register("specfun", NUMERIC)
def bessel_derivative_identity(h=1e-5):
    tol = TOLERANCES.recursion
    t = np.linspace(0.1, 20.0, 60)
    worst = 0.0
    for nu in np.arange(0.0, 5.01, 0.5):
        deriv = (specfun.bessel_scaled(nu, t + h) - specfun.bessel_scaled(nu, t - h)) / (2 * h)
        lhs = -deriv / t
        rhs = specfun.bessel_scaled(nu + 1, t)
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-3))))
    return worst <= tol, f"max residual {worst:.2e}"


@register("specfun", NUMERIC)
def half_integer_elementary_forms():
    tol = TOLERANCES.specfun
    t = np.linspace(0.01, 50.0, 400)
    worst = 0.0
    for nu in (-0.5, 0.5):
        ref = specfun.bessel_half_closed(nu, t)
        got = specfun.bessel_j(nu, t)
        worst = max(worst, float(np.max(np.abs(got - ref) / (np.abs(ref) + 1e-2))))
    return worst <= tol, f"max relative deviation {worst:.2e}"


@register("specfun", NUMERIC)
def gegenbauer_planar_limit(k_max=40):
    tol = TOLERANCES.specfun
    theta = np.linspace(0.0, math.pi, 97)
    w = np.cos(theta)
    worst = 0.0
    for k in range(1, k_max + 1):
        got = specfun.gamma_gegenbauer(k, 0.0, w)
        worst = max(worst, float(np.max(np.abs(got - 2.0 / k * np.cos(k * theta)))))
    # the limit must also be approached from lambda > 0
    near = specfun.gamma_gegenbauer(3, 1e-7, w) - 2.0 / 3 * np.cos(3 * theta)
    return worst <= tol and float(np.max(np.abs(near))) < 1e-5, f"max deviation {worst:.2e}"


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def _spectrum_grid(spec, size):
    return [[spectrum(spec, j, k) for k in range(size)] for j in range(size)]


@register("kernels", EXACT)
def spectrum_periodicity(index_max=16, dims=(2, 3)):
    size = index_max + 5
    for setting in (HARMONIC, CLIFFORD):
        jper = 2 if setting == HARMONIC else 4
        for m in dims:
            for four in itertools.product(range(4), repeat=4):
                mu = _spectrum_grid(make_spec(m, setting, four), size)
                for j in range(index_max + 1):
                    for k in range(index_max + 1):
                        p = mu[j][k]
                        if mu[j + jper][k] != p or mu[j][k + 4] != p:
                            return False, f"{setting} m={m} F={four} j={j} k={k}"
                        if p ** 4 != Mod4Phase(0) or abs(abs(p.to_complex()) - 1) > 0:
                            return False, f"order/modulus {setting} m={m} F={four}"
    return True, "ok"


def _random_pairs(m, count, rng, zmax=20.0):
    x = rng.normal(size=(count, m))
    y = rng.normal(size=(count, m))
    x /= np.linalg.norm(x, axis=1)[:, None]
    y /= np.linalg.norm(y, axis=1)[:, None]
    rx = np.sqrt(rng.uniform(0.0, zmax, size=count))
    ry = rng.uniform(0.0, zmax, size=count) / np.maximum(rx, 1e-12)
    ry = np.minimum(ry, zmax / np.maximum(rx, 1e-12))
    return x * rx[:, None], y * ry[:, None]


def closed_vs_series_errors(points=100, seed=SEED) -> dict[str, float]:
    rng = np.random.default_rng(seed)
    errs: dict[str, float] = {}
    cases = []
    for m in (2, 4, 6):
        cases += [(make_spec(m, HARMONIC, (a, b, c, 0)), f"harmonic m={m} abc={a}{b}{c}")
                  for a, b, c in itertools.product(range(4), repeat=3)]
    for m in (2, 4):
        cases += [(make_spec(m, CLIFFORD, (a, b, 0, 0)), f"clifford m={m} ab={a}{b}")
                  for a, b in itertools.product(range(4), repeat=2)]
    td = [(kernels.KernelSpec(3, HARMONIC, cos_sin_family_spec(d, 3)), f"cos-sin family m=3 d={d}")
          for d in range(4)]
    pairs = {m: _random_pairs(m, points, rng) for m in (2, 3, 4, 6)}
    for spec, label in cases:
        x, y = pairs[spec.m]
        errs[label] = kernels.relative_error(kernels.series_kernel(spec, x, y),
                                             kernels.closed_kernel(spec, x, y))
    for (spec, label), d in zip(td, range(4)):
        x, y = pairs[3]
        s = np.sum(x * y, axis=1)
        target = np.cos(s) + Mod4Phase(d + 1).to_complex() * np.sin(s)
        errs[label] = kernels.relative_error(kernels.series_kernel(spec, x, y), target)
    return errs


@register("kernels", NUMERIC)
def closed_forms_match_series(points=100):
    errs = closed_vs_series_errors(points)
    worst = max(errs, key=errs.get)
    return errs[worst] <= TOLERANCES.kernel, f"{len(errs)} cases, worst {errs[worst]:.2e} ({worst})"


def _rotation(m, rng):
    q, r = np.linalg.qr(rng.normal(size=(m, m)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@register("kernels", NUMERIC)
def kernel_scaling_and_rotation(points=40):
    rng = np.random.default_rng(SEED + 3)
    tol = 1e-10
    worst = 0.0
    specs = [make_spec(2, HARMONIC, (1, 2, 3, 0)), make_spec(3, HARMONIC, (0, 1, 2, 3)),
             make_spec(4, HARMONIC, (2, 1, 1, 0)), make_spec(2, CLIFFORD, (1, 3, 0, 0)),
             make_spec(3, CLIFFORD, (0, 1, 2, 3)), make_spec(4, CLIFFORD, (3, 1, 0, 0))]
    for spec in specs:
        m = spec.m
        x, y = _random_pairs(m, points, rng, zmax=12.0)
        c = rng.uniform(0.3, 2.0)
        k1 = kernels.series_kernel(spec, c * x, y)
        k2 = kernels.series_kernel(spec, x, c * y)
        worst = max(worst, kernels.relative_error(k1, k2))
        a = _rotation(m, rng)
        base = kernels.series_kernel(spec, x, y)
        turned = kernels.series_kernel(spec, x @ a.T, y @ a.T)
        if spec.setting == HARMONIC:
            worst = max(worst, kernels.relative_error(turned, base))
        else:
            # scalar part is invariant; the bivector part rotates with x ^ y
            worst = max(worst, kernels.relative_error(turned[:, 0], base[:, 0]))
            g0 = kernels.geom_vars(x, y, with_wedge=True)
            g1 = kernels.geom_vars(x @ a.T, y @ a.T, with_wedge=True)
            blades = bivector_blades(m)
            w0 = g0.wedge[:, blades]
            w1 = g1.wedge[:, blades]
            with np.errstate(invalid="ignore", divide="ignore"):
                c0 = np.sum(base[:, blades] * w0, axis=1) / np.sum(w0 * w0, axis=1)
                c1 = np.sum(turned[:, blades] * w1, axis=1) / np.sum(w1 * w1, axis=1)
            ok = np.sum(w0 * w0, axis=1) > 1e-6
            worst = max(worst, kernels.relative_error(c1[ok], c0[ok]))
    return worst <= tol, f"max deviation {worst:.2e}"


@register("kernels", NUMERIC)
def bessel_sum_operator_form(points=6):
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for lam in (1, 2):
        for _ in range(points):
            s, t = rng.uniform(-3, 3), rng.uniform(0.5, 5)
            fd = kernels.nested_difference_form(lam, s, t)
            exact = float(kernels.bessel_sum(lam, np.array(s), np.array(t), -0.5))
            worst = max(worst, abs(fd - exact) / max(1.0, abs(exact)))
    return worst <= 1e-5, f"max deviation {worst:.2e}"


def recursion_residuals(samples=25, seed=SEED) -> dict[str, float]:
    rng = np.random.default_rng(seed)
    w = rng.uniform(-0.95, 0.95, size=samples)
    z = rng.uniform(0.2, 15.0, size=samples)
    out = {}
    for m in (2, 4):
        for setting, four in ((HARMONIC, (0, 0, 0, 0)), (HARMONIC, (1, 2, 3, 0)),
                              (CLIFFORD, (0, 0, 0, 0)), (CLIFFORD, (1, 3, 0, 0))):
            spec = make_spec(m, setting, four)
            parts = ("K",) if setting == HARMONIC else (("A",) if m == 2 else ("A", "B"))
            for which in parts:
                label = f"{setting} {which} m={m}->{m + 2} F={four}"
                out[label] = kernels.recursion_check(spec, w, z, which=which)
    return out


@register("kernels", NUMERIC)
def dimension_recursion(samples=25):
    res = recursion_residuals(samples)
    worst = max(res, key=res.get)
    return res[worst] <= TOLERANCES.recursion, f"worst {res[worst]:.2e} ({worst})"


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

@register("transform", EXACT)
def fourth_power_is_identity(trials=4, degree=6):
    rng = np.random.default_rng(SEED + 5)
    for setting in (HARMONIC, CLIFFORD):
        for m in (2, 3, 4):
            for _ in range(trials):
                four = tuple(int(v) for v in rng.integers(0, 4, size=4))
                spec = make_spec(m, setting, four)
                f = random_gausspoly(m, rng, degree=degree, clifford=setting == CLIFFORD)
                if transform.transform_power(spec, f, 4) != f:
                    return False, f"{setting} m={m} F={four}"
    return True, "ok"


@register("transform", EXACT)
def parseval_on_gauss_polynomials(trials=6):
    rng = np.random.default_rng(SEED + 6)
    for setting in (HARMONIC, CLIFFORD):
        for m in (2, 3):
            for _ in range(trials):
                four = tuple(int(v) for v in rng.integers(0, 4, size=4))
                spec = make_spec(m, setting, four)
                f = random_gausspoly(m, rng, clifford=setting == CLIFFORD)
                tf = transform.eigen_transform(spec, f)
                if inner_product(tf, tf) != inner_product(f, f):
                    return False, f"{setting} m={m} F={four}"
    return True, "ok"


def basis_functions(setting: str, m: int, j_max: int, k_max: int) -> dict:
    build = hermite_phi if setting == HARMONIC else clifford_psi
    return {(j, k): build(j, k, m) for j in range(j_max + 1) for k in range(k_max + 1)}


def quadrature_errors(y_points=3, seed=SEED) -> dict[str, float]:
    rng = np.random.default_rng(seed)
    out = {}
    for setting in (HARMONIC, CLIFFORD):
        for m in (2, 3):
            spec = make_spec(m, setting, (1, 1, 2, 3))
            basis = basis_functions(setting, m, 2, 2)
            y = rng.normal(size=(y_points, m))
            quads = transform.quad_transform_many(spec, list(basis.values()), y)
            for (jk, f), q in zip(basis.items(), quads):
                exact = transform.eigen_transform(spec, f).evaluate(y)
                out[f"{setting} m={m} (j,k)={jk}"] = float(np.max(np.abs(q - exact)))
    return out


@register("transform", NUMERIC)
def quadrature_matches_eigen_expansion(y_points=3):
    errs = quadrature_errors(y_points)
    worst = max(errs, key=errs.get)
    return errs[worst] <= TOLERANCES.quadrature, f"worst {errs[worst]:.2e} ({worst})"


def bochner_errors(y_norms=(0.4, 1.3, 2.7), seed=SEED) -> dict[str, float]:
    """Radial route against the exact expansion on psi_{j,k}, j,k <= 2."""
    out = {}
    rng = np.random.default_rng(seed)
    for m in (2, 3):
        spec = make_spec(m, CLIFFORD, (1, 1, 2, 3))
        lam = Fraction(m - 2, 2)
        for k in range(3):
            mk = monogenic_seed(k, m, default_direction(m))
            for j in range(3):
                p, odd = divmod(j, 2)
                alpha = float(k + lam + odd)
                scale = 2 ** p * math.factorial(p) * (math.sqrt(2.0) if odd else 1.0)
                base = transform.laguerre_profile(p, alpha)
                profile = (lambda r, b=base, c=scale: c * b(r))
                exact_f = transform.eigen_transform(spec, clifford_psi(j, k, m))
                worst = 0.0
                for rho in y_norms:
                    u = rng.normal(size=m)
                    y = rho * u / np.linalg.norm(u)
                    radial = transform.bochner_radial(spec, k, profile,
                                                      "vector" if odd else "plain", rho)
                    angular_poly = mk.vector_mult() if odd else mk
                    ang = angular_poly.evaluate(y[None, :])[0] / rho ** (k + odd)
                    got = radial * ang
                    want = exact_f.evaluate(y[None, :])[0]
                    worst = max(worst, float(np.max(np.abs(got - want))))
                out[f"m={m} (j,k)=({j},{k})"] = worst
    return out


@register("transform", NUMERIC)
def bochner_matches_eigen_expansion():
    errs = bochner_errors()
    worst = max(errs, key=errs.get)
    return errs[worst] <= TOLERANCES.quadrature, f"worst {errs[worst]:.2e} ({worst})"


def laguerre_bessel_errors(s_values=(0.3, 1.0, 2.2, 4.0)) -> dict[str, float]:
    out = {}
    for m in (2, 3, 4):
        lam = (m - 2) / 2.0
        for k in range(4):
            for p in range(4):
                alpha = k + lam
                worst = 0.0
                for s in s_values:
                    got = transform.radial_integral(m, k, transform.laguerre_profile(p, alpha),
                                                    "plain", s)
                    want = (-1) ** p * s ** k * specfun.laguerre(p, alpha, s * s) * math.exp(-s * s / 2)
                    worst = max(worst, abs(got - want))
                out[f"m={m} k={k} p={p}"] = worst
    return out


@register("transform", NUMERIC)
def laguerre_bessel_reproduction():
    errs = laguerre_bessel_errors()
    worst = max(errs, key=errs.get)
    return errs[worst] <= TOLERANCES.quadrature, f"worst {errs[worst]:.2e} ({worst})"


def helmholtz_sweep(count=16, seed=SEED, dims=(2, 3), j_max=3, k_max=3) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    tuples = sample_four_tuples(count, rng)
    for setting in (HARMONIC, CLIFFORD):
        for m in dims:
            basis = basis_functions(setting, m, j_max, k_max)
            for four in tuples:
                spec = make_spec(m, setting, four)
                for jk, f in basis.items():
                    a, b = transform.helmholtz_residual(spec, f)
                    if a or b:
                        return False, f"Helmholtz {setting} m={m} F={four} {jk}"
                    if setting == CLIFFORD:
                        a, b = transform.clifford_helmholtz_residual(spec, f)
                        if a or b:
                            return False, f"Clifford-Helmholtz m={m} F={four} {jk}"
    return True, f"{count} specs per setting"


def mutation_detected(dims=(2, 3)) -> tuple[bool, str]:
    for setting in (HARMONIC, CLIFFORD):
        for m in dims:
            spec = make_spec(m, setting, (1, 2, 3, 0))
            flipped = spec.with_override(0, 1, -spectrum(spec, 0, 1))
            basis = basis_functions(setting, m, 1, 1)
            found = False
            for f in basis.values():
                res = transform.helmholtz_residual(flipped, f)
                if setting == CLIFFORD:
                    res = res + transform.clifford_helmholtz_residual(flipped, f)
                if any(res):
                    found = True
                    break
            if not found:
                return False, f"mutation unnoticed for {setting} m={m}"
    return True, "mutated spectra rejected"


@register("transform", EXACT)
def helmholtz_relations(count=16):
    return helmholtz_sweep(count)


@register("transform", EXACT)
def helmholtz_detects_mutation():
    return mutation_detected()


def uncertainty_sweep(trials=50, seed=SEED) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    for setting in (HARMONIC, CLIFFORD):
        for m in (2, 3):
            gauss = GaussPoly.gaussian(m)
            for four in sample_four_tuples(4, rng):
                rec = transform.uncertainty_check(make_spec(m, setting, four), gauss)
                if not rec.sum_equality():
                    return False, f"Gaussian equality {setting} m={m} F={four}"
        for n in range(trials):
            m = (2, 3)[n % 2]
            four = tuple(int(v) for v in rng.integers(0, 4, size=4))
            spec = make_spec(m, setting, four)
            f = random_gausspoly(m, rng, degree=4, clifford=setting == CLIFFORD)
            rec = transform.uncertainty_check(spec, f)
            if not rec.product_holds() or not rec.sum_holds():
                return False, f"bound violated {setting} m={m} F={four}"
    return True, f"{trials} random inputs per setting"


@register("transform", EXACT)
def uncertainty_bounds(trials=50):
    return uncertainty_sweep(trials)


@register("transform", NUMERIC)
def uncertainty_scaling():
    spec = make_spec(2, HARMONIC, (0, 1, 0, 0))
    f = GaussPoly(Poly.monomial(2, [2, 1], 1) + Poly.monomial(2, [0, 1], 3))
    rec = transform.uncertainty_check(spec, f)
    ref = rec.lhs_product / float(rec.norm_f)
    worst = max(abs(transform.scaled_uncertainty_ratio(spec, f, c) - ref) / ref for c in (0.5, 2.0))
    return worst <= TOLERANCES.quadrature, f"relative change {worst:.2e}"


# ---------------------------------------------------------------------------
# cli
# ---------------------------------------------------------------------------

@register("cli", EXACT)
def output_is_deterministic():
    from .cli import render

    commands = [["tables", "--family", "E", "--nmax", "5", "--xmax", "15"],
                ["tables", "--family", "D", "--xmax", "15", "--selectors"],
                ["spectrum", "--setting", "clifford", "--m", "3", "--F", "1,2,3,0"],
                ["kernel", "--m", "2", "--F", "0,1,2,0", "--grid", "3"]]
    for argv in commands:
        if render(argv) != render(argv):
            return False, " ".join(argv)
    return True, "ok"


@register("cli", EXACT)
def tables_match_library():
    from .cli import render

    for family in ("E", "D"):
        lib = table_csv(family, 5, 15)
        if render(["tables", "--family", family, "--nmax", "5", "--xmax", "15"]) != lib:
            return False, f"family {family}"
    return True, "ok"


@register("cli", EXACT)
def registry_covers_every_module():
    empty = [name for name in MODULES if not REGISTRY[name]]
    return not empty, "empty: " + ",".join(empty) if empty else "ok"


def summary(results: list[Result]) -> tuple[int, int]:
    passed = sum(r.passed for r in results)
    return passed, len(results) - passed
