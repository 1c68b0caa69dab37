"""The Clifford algebra Cl_m with negative-definite generators (e_i^2 = -1).

Basis blades are encoded as bitmasks: bit ``i-1`` set means e_i is a factor,
factors always in increasing index order.  Coefficients may be any ring
element supporting ``+``, ``-`` and ``*`` (Fraction, :class:`~gfourier.exactnum.QI`,
float, complex, ...).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np


def grade_of(blade: int) -> int:
    return bin(blade).count("1")


def blade_sign(a: int, b: int) -> int:
    """Sign s with e_a e_b = s * e_{a xor b} under e_i^2 = -1."""
    swaps = 0
    t = a >> 1
    while t:
        swaps += grade_of(t & b)
        t >>= 1
    # each shared generator contributes e_i e_i = -1
    swaps += grade_of(a & b)
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def sign_table(m: int) -> np.ndarray:
    """(2^m, 2^m) array of product signs."""
    n = 1 << m
    table = np.empty((n, n), dtype=np.int8)
    for a in range(n):
        for b in range(n):
            table[a, b] = blade_sign(a, b)
    return table


def bar_sign(blade: int) -> int:
    """Sign picked up by a blade under the bar anti-involution."""
    r = grade_of(blade)
    return -1 if (r * (r + 1) // 2) % 2 else 1


def blade_indices(blade: int) -> list[int]:
    """1-based generator indices of a blade."""
    out, i = [], 1
    while blade:
        if blade & 1:
            out.append(i)
        blade >>= 1
        i += 1
    return out


def blade_from_indices(indices: Iterable[int]) -> tuple[int, int]:
    """Bitmask and sign of the product e_{i1} e_{i2} ... (any order)."""
    blade, sign = 0, 1
    for i in indices:
        b = 1 << (i - 1)
        sign *= blade_sign(blade, b)
        blade ^= b
    return blade, sign


def _is_zero(c) -> bool:
    return not c


class Multivector:
    """Sparse element of Cl_m."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[int, object] | None = None):
        if m < 1:
            raise ValueError("dimension must be positive")
        self.m = m
        limit = 1 << m
        clean: dict[int, object] = {}
        for blade, c in (terms or {}).items():
            if not 0 <= blade < limit:
                raise ValueError(f"blade {blade} out of range for m={m}")
            if not _is_zero(c):
                clean[blade] = c
        self.terms = clean

    # constructors ---------------------------------------------------------
    @classmethod
    def scalar(cls, m: int, c=1) -> "Multivector":
        return cls(m, {0: c})

    @classmethod
    def generator(cls, m: int, i: int, c=1) -> "Multivector":
        if not 1 <= i <= m:
            raise ValueError(f"generator index {i} out of range for m={m}")
        return cls(m, {1 << (i - 1): c})

    @classmethod
    def blade(cls, m: int, indices: Iterable[int], c=1) -> "Multivector":
        bits, sign = blade_from_indices(indices)
        return cls(m, {bits: c if sign > 0 else -c})

    @classmethod
    def vector(cls, coords: Iterable) -> "Multivector":
        coords = list(coords)
        return cls(len(coords), {1 << i: c for i, c in enumerate(coords)})

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "Multivector"):
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            other = Multivector.scalar(self.m, other)
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return Multivector(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.m, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self.m, {b: c * other for b, c in self.terms.items()})

    def __rmul__(self, other):
        return Multivector(self.m, {b: other * c for b, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.m == other.m and self.terms == other.terms
        if not self.terms:
            return _is_zero(other)
        return set(self.terms) == {0} and self.terms[0] == other

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, blade: int):
        return self.terms.get(blade, 0)

    def grade(self, r: int) -> "Multivector":
        return Multivector(self.m, {b: c for b, c in self.terms.items() if grade_of(b) == r})

    def scalar_part(self):
        return self.terms.get(0, 0)

    def map(self, fn) -> "Multivector":
        return Multivector(self.m, {b: fn(c) for b, c in self.terms.items()})

    def to_array(self, dtype=complex) -> np.ndarray:
        out = np.zeros(1 << self.m, dtype=dtype)
        for b, c in self.terms.items():
            out[b] = complex(c) if dtype is complex else c
        return out

    def __str__(self):
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector({self.m}, {self.terms!r})"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out: dict[int, object] = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            c = ca * cb
            if blade_sign(ba, bb) < 0:
                c = -c
            key = ba ^ bb
            out[key] = out[key] + c if key in out else c
    return Multivector(a.m, out)


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    """Wedge product: blade products restricted to disjoint blades."""
    a._check(b)
    out: dict[int, object] = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            if ba & bb:
                continue
            c = ca * cb
            if blade_sign(ba, bb) < 0:
                c = -c
            key = ba | bb
            out[key] = out[key] + c if key in out else c
    return Multivector(a.m, out)


wedge = outer_product


def vector_square(x: Iterable):
    """Square of the vector sum_j e_j x_j, which is the scalar -|x|^2."""
    coords = list(x)
    if not coords:
        return 0
    v = Multivector.vector(coords)
    sq = geometric_product(v, v)
    extra = {b for b in sq.terms if b}
    if extra:
        raise ArithmeticError("vector square produced non-scalar blades")
    return sq.scalar_part()


def bar_conjugate(a: Multivector) -> Multivector:
    """Anti-involution with bar(e_j) = -e_j."""
    return Multivector(a.m, {b: (c if bar_sign(b) > 0 else -c) for b, c in a.terms.items()})


def complex_conjugate(a: Multivector) -> Multivector:
    return a.map(lambda c: c.conjugate() if hasattr(c, "conjugate") else c)


def format_coefficient(c) -> str:
    if isinstance(c, complex):
        return repr(c)
    return str(c)


def format_multivector(a: Multivector) -> str:
    """Text form ``c * e{i j}`` per blade, increasing bitmask order."""
    if not a.terms:
        return "0"
    parts = []
    for b in sorted(a.terms):
        idx = " ".join(str(i) for i in blade_indices(b))
        parts.append(f"{format_coefficient(a.terms[b])} * e{{{idx}}}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# dense numeric batches
# ---------------------------------------------------------------------------

def array_product(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """Geometric product of batches of dense multivectors.

    ``a`` and ``b`` have shape ``(..., 2^m)``; broadcasting applies to the
    leading axes.
    """
    n = 1 << m
    if a.shape[-1] != n or b.shape[-1] != n:
        raise ValueError("last axis must have length 2^m")
    signs = sign_table(m)
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=np.result_type(a, b))
    a_nz = [i for i in range(n) if np.any(a[..., i])]
    b_nz = [j for j in range(n) if np.any(b[..., j])]
    for i in a_nz:
        for j in b_nz:
            out[..., i ^ j] += signs[i, j] * a[..., i] * b[..., j]
    return out


def wedge_vectors_array(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Dense bivector x ^ y for batches of coordinate vectors (..., m)."""
    m = x.shape[-1]
    out = np.zeros(np.broadcast_shapes(x.shape, y.shape)[:-1] + (1 << m,),
                   dtype=np.result_type(x, y))
    for j in range(m):
        for k in range(j + 1, m):
            out[..., (1 << j) | (1 << k)] = x[..., j] * y[..., k] - x[..., k] * y[..., j]
    return out


def bivector_blades(m: int) -> list[int]:
    return [(1 << j) | (1 << k) for j in range(m) for k in range(j + 1, m)]


def as_fraction_vector(coords: Iterable) -> list[Fraction]:
    return [Fraction(c) for c in coords]
