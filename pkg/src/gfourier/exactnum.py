"""Exact rational machinery: mod-4 phases, Gaussian rationals, and the
integer-valued polynomial families E_n and D_n with their mod-4 selectors.

Rationals are :class:`fractions.Fraction` throughout (always reduced, positive
denominator).  Half-integer arguments are passed as ``Fraction(2k+1, 2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

Rational = Union[int, Fraction]


class DomainError(ValueError):
    """Argument outside the lattice on which a function is defined."""


# ---------------------------------------------------------------------------
# phases and Gaussian rationals
# ---------------------------------------------------------------------------

_PHASE_TOKENS = ("1", "i", "-1", "-i")


class Mod4Phase:
    """The value i**exponent, stored as the exponent modulo 4."""

    __slots__ = ("exponent",)

    def __init__(self, exponent: int = 0):
        self.exponent = exponent % 4

    @classmethod
    def from_token(cls, token: str) -> "Mod4Phase":
        return cls(_PHASE_TOKENS.index(token.strip()))

    def __mul__(self, other):
        if isinstance(other, Mod4Phase):
            return Mod4Phase(self.exponent + other.exponent)
        return NotImplemented

    def __pow__(self, n: int) -> "Mod4Phase":
        return Mod4Phase(self.exponent * n)

    def inverse(self) -> "Mod4Phase":
        return Mod4Phase(-self.exponent)

    conjugate = inverse

    def __neg__(self) -> "Mod4Phase":
        return Mod4Phase(self.exponent + 2)

    def __eq__(self, other):
        if isinstance(other, Mod4Phase):
            return self.exponent == other.exponent
        return NotImplemented

    def __hash__(self):
        return hash(("Mod4Phase", self.exponent))

    def to_qi(self) -> "QI":
        return (QI(1), QI(0, 1), QI(-1), QI(0, -1))[self.exponent]

    def to_complex(self) -> complex:
        return (1 + 0j, 1j, -1 + 0j, -1j)[self.exponent]

    def __str__(self):
        return _PHASE_TOKENS[self.exponent]

    def __repr__(self):
        return f"Mod4Phase({self.exponent})"


class QI:
    """Gaussian rational re + i*im with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(value) -> "QI":
        if isinstance(value, QI):
            return value
        if isinstance(value, Mod4Phase):
            return value.to_qi()
        if isinstance(value, (int, Fraction)):
            return QI(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        try:
            other = QI.coerce(other)
        except TypeError:
            return NotImplemented
        return QI(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = QI.coerce(other)
        except TypeError:
            return NotImplemented
        return QI(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QI.coerce(other) - self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __mul__(self, other):
        try:
            other = QI.coerce(other)
        except TypeError:
            return NotImplemented
        return QI(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QI.coerce(other)
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("QI division by zero")
        num = self * other.conjugate()
        return QI(num.re / den, num.im / den)

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = QI.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def __repr__(self):
        return f"QI({self.re!s}, {self.im!s})"


# ---------------------------------------------------------------------------
# integer-valued polynomials
# ---------------------------------------------------------------------------

def binom_poly(x: Rational, n: int) -> Fraction:
    """The integer-valued polynomial binom(x, n) = x(x-1)...(x-n+1)/n!."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    num = 1
    for ell in range(n):
        num *= p - ell * q
    return Fraction(num, q ** n * math.factorial(n))


def eval_E(n: int, x: Rational) -> Fraction:
    """E_n(x) = 2/(2n)! * prod_{l<n} (x^2 - l^2), with E_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    x = Fraction(x)
    p2, q2 = x.numerator ** 2, x.denominator ** 2
    num = 1
    for ell in range(n):
        num *= p2 - ell * ell * q2
    return Fraction(2 * num, q2 ** n * math.factorial(2 * n))


def eval_D(n: int, x: Rational) -> Fraction:
    """D_n(x) = 1/(2n)! * prod_{l<n} (x^2 - (l+1/2)^2), with D_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    x = Fraction(x)
    # x^2 - (l+1/2)^2 = (4p^2 - (2l+1)^2 q^2) / (4 q^2)
    p2, q2 = x.numerator ** 2, x.denominator ** 2
    num = 1
    for ell in range(n):
        num *= 4 * p2 - (2 * ell + 1) ** 2 * q2
    return Fraction(num, (4 * q2) ** n * math.factorial(2 * n))


def _mod4(value: Fraction) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"integer-valued polynomial produced {value}")
    return value.numerator % 4


def is_half_integer(x: Rational) -> bool:
    return Fraction(x).denominator == 2


def _check_E_arg(x: Rational) -> int:
    x = Fraction(x)
    if x.denominator != 1 or x < 0:
        raise DomainError(f"E-family argument must be a non-negative integer, got {x}")
    return x.numerator


def _check_D_arg(x: Rational) -> int:
    """Return k for x = k + 1/2."""
    x = Fraction(x)
    if x.denominator != 2 or x < 0:
        raise DomainError(f"D-family argument must be k+1/2 with k >= 0, got {x}")
    return (x.numerator - 1) // 2


# ---------------------------------------------------------------------------
# selectors
# ---------------------------------------------------------------------------

SELECTOR_TAGS = ("E0101", "E0010", "E0001", "D0110", "D0011", "D0010")


def _dyadic_block(base: int, n: int) -> list[tuple[int, int]]:
    """Terms P_{2^n+base} + sum_{j=1}^{n-1} 2 P_{2^n+base+2^j} as (weight, index)."""
    terms = [(1, 2 ** n + base)]
    terms += [(2, 2 ** n + base + 2 ** j) for j in range(1, n)]
    return terms


@lru_cache(maxsize=None)
def _selector_terms(tag: str, limit: int) -> tuple[tuple[int, int], ...]:
    """(weight, polynomial index) pairs of a selector series with index <= limit.

    Indices above ``limit`` are dropped: the polynomials vanish there.
    """
    if tag == "E0101":
        terms = [(1, 1)]
    elif tag == "E0010":
        terms = [(1, 2), (2, 3)]
    elif tag == "D0110":
        terms = [(1, 1), (2, 2)]
    elif tag in ("E0001", "D0011", "D0010"):
        base, n0 = {"E0001": (1, 1), "D0011": (0, 1), "D0010": (1, 0)}[tag]
        terms = [(2, 3)] if tag == "D0010" else []
        n = n0
        while 2 ** n + base <= limit:
            terms += _dyadic_block(base, n)
            n += 1
    else:
        raise ValueError(f"unknown selector tag {tag!r}")
    return tuple((w, i) for w, i in terms if i <= limit)


@lru_cache(maxsize=None)
def _selector_cached(tag: str, x: Fraction) -> int:
    if tag.startswith("E"):
        limit = _check_E_arg(x)
        poly = eval_E
    else:
        limit = _check_D_arg(x)
        poly = eval_D
    total = Fraction(0)
    for weight, idx in _selector_terms(tag, limit):
        total += weight * poly(idx, x)
    return _mod4(total)


def selector_eval(tag: str, x: Rational) -> int:
    """Mod-4 value of a named selector function.

    E-tags take a non-negative integer; D-tags take the half-integer
    argument ``k + 1/2`` of the D polynomials (``Fraction(2k+1, 2)``).
    """
    if tag not in SELECTOR_TAGS:
        raise ValueError(f"unknown selector tag {tag!r}")
    return _selector_cached(tag, Fraction(x))


# ---------------------------------------------------------------------------
# symbol functions F
# ---------------------------------------------------------------------------

EVEN_SQUARES = "E"
HALF_INTEGER_SQUARES = "D"


@dataclass(frozen=True)
class FSpec:
    """A mod-4 symbol function F.

    ``family`` is ``"E"`` (integer arguments) or ``"D"`` (half-integer
    arguments).  Exactly one of ``four`` = (a, b, c, d) or ``seq`` (the
    coefficients a_0, a_1, ... of sum a_n E_n or sum a_n D_n) is set.
    """

    family: str
    four: tuple[int, int, int, int] | None = None
    seq: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.family not in (EVEN_SQUARES, HALF_INTEGER_SQUARES):
            raise ValueError(f"family must be 'E' or 'D', got {self.family!r}")
        if (self.four is None) == (self.seq is None):
            raise ValueError("exactly one of four / seq must be given")
        if self.four is not None:
            if len(self.four) != 4:
                raise ValueError("four-tuple needs exactly four entries")
            object.__setattr__(self, "four", tuple(int(v) % 4 for v in self.four))
        else:
            object.__setattr__(self, "seq", tuple(int(v) % 4 for v in self.seq))

    @classmethod
    def four_tuple(cls, family: str, a=0, b=0, c=0, d=0) -> "FSpec":
        return cls(family, four=(a, b, c, d))

    @classmethod
    def general(cls, family: str, coefficients: Sequence[int]) -> "FSpec":
        return cls(family, seq=tuple(coefficients))

    @property
    def is_four_tuple(self) -> bool:
        return self.four is not None

    def selector_tags(self) -> tuple[str, str, str]:
        if self.family == EVEN_SQUARES:
            return ("E0101", "E0010", "E0001")
        return ("D0110", "D0011", "D0010")

    def label(self) -> str:
        if self.four is not None:
            return f"{self.family}:" + ",".join(map(str, self.four))
        return f"{self.family}:seq:" + ",".join(map(str, self.seq))


def F_eval(spec: FSpec, x: Rational) -> int:
    """Mod-4 value of the symbol function at an admissible argument."""
    x = Fraction(x)
    if spec.family == EVEN_SQUARES:
        top = _check_E_arg(x)
    else:
        top = _check_D_arg(x)
    if spec.four is not None:
        a, b, c, d = spec.four
        s1, s2, s3 = (selector_eval(t, x) for t in spec.selector_tags())
        return (a + b * s1 + c * s2 + d * s3) % 4
    if len(spec.seq) <= top:
        raise DomainError(
            f"general F needs coefficients up to index {top}, got {len(spec.seq)}")
    poly = eval_E if spec.family == EVEN_SQUARES else eval_D
    total = Fraction(0)
    for n in range(top + 1):
        if spec.seq[n]:
            total += spec.seq[n] * poly(n, x)
    return _mod4(total)


def cos_sin_family_spec(d: int, m: int) -> FSpec:
    """Four-tuple form of d*((m-2)(D0110+D0011+2*D0010) + ((m+1)/2)^2), m odd.

    Its harmonic spectrum gives the kernel cos<x,y> + i^(d+1) sin<x,y>.
    """
    if m % 2 == 0 or m < 3:
        raise ValueError("odd dimension m >= 3 required")
    const = ((m + 1) // 2) ** 2
    return FSpec.four_tuple(HALF_INTEGER_SQUARES,
                            d * const, d * (m - 2), d * (m - 2), 2 * d * (m - 2))


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def mod4_table(family: str, n_max: int, x_max: int) -> list[list[int]]:
    """Rows n = 0..n_max of E_n(x) (or D_n(x+1/2)) mod 4 for x = 0..x_max."""
    if n_max < 0 or x_max < 0:
        raise ValueError("n_max and x_max must be non-negative")
    if family == EVEN_SQUARES:
        return [[_mod4(eval_E(n, x)) for x in range(x_max + 1)] for n in range(n_max + 1)]
    if family == HALF_INTEGER_SQUARES:
        return [[_mod4(eval_D(n, Fraction(2 * x + 1, 2))) for x in range(x_max + 1)]
                for n in range(n_max + 1)]
    raise ValueError(f"family must be 'E' or 'D', got {family!r}")


def selector_table(family: str, x_max: int) -> list[tuple[str, list[int]]]:
    """The constant row and the three selector rows for x = 0..x_max."""
    if family == EVEN_SQUARES:
        tags = ("E0101", "E0010", "E0001")
        args = [Fraction(x) for x in range(x_max + 1)]
    elif family == HALF_INTEGER_SQUARES:
        tags = ("D0110", "D0011", "D0010")
        args = [Fraction(2 * x + 1, 2) for x in range(x_max + 1)]
    else:
        raise ValueError(f"family must be 'E' or 'D', got {family!r}")
    rows = [("1", [1] * (x_max + 1))]
    rows += [(tag, [selector_eval(tag, a) for a in args]) for tag in tags]
    return rows


def table_csv(family: str, n_max: int, x_max: int, selectors: bool = False) -> str:
    """CSV text: header ``x,0,1,...`` then one labelled row per polynomial."""
    lines = ["x," + ",".join(str(x) for x in range(x_max + 1))]
    if selectors:
        rows = selector_table(family, x_max)
    else:
        rows = [(f"{family}{n}", row)
                for n, row in enumerate(mod4_table(family, n_max, x_max))]
    for label, row in rows:
        lines.append(label + "," + ",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the field Q(i, sqrt 2)
# ---------------------------------------------------------------------------

class QS2:
    """Exact number ``a + b*sqrt(2)`` with Gaussian-rational a and b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = QI.coerce(a)
        self.b = QI.coerce(b)

    @staticmethod
    def coerce(value) -> "QS2":
        if isinstance(value, QS2):
            return value
        return QS2(QI.coerce(value))

    @classmethod
    def from_units(cls, parts) -> "QS2":
        """Build from ``{unit: Fraction}`` with unit bit0 = i, bit1 = sqrt 2."""
        a_re = parts.get(0, 0)
        a_im = parts.get(1, 0)
        b_re = parts.get(2, 0)
        b_im = parts.get(3, 0)
        return cls(QI(a_re, a_im), QI(b_re, b_im))

    def units(self) -> dict[int, Fraction]:
        out = {0: self.a.re, 1: self.a.im, 2: self.b.re, 3: self.b.im}
        return {u: c for u, c in out.items() if c}

    def __add__(self, other):
        try:
            other = QS2.coerce(other)
        except TypeError:
            return NotImplemented
        return QS2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QS2(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QS2.coerce(other))

    def __rsub__(self, other):
        return QS2.coerce(other) - self

    def __mul__(self, other):
        try:
            other = QS2.coerce(other)
        except TypeError:
            return NotImplemented
        return QS2(self.a * other.a + 2 * (self.b * other.b),
                   self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QS2":
        return QS2(self.a.conjugate(), self.b.conjugate())

    @property
    def is_real(self) -> bool:
        return not self.a.im and not self.b.im

    def real_sign(self) -> int:
        """Exact sign of a real element."""
        if not self.is_real:
            raise ValueError("sign of a non-real number")
        return _sign_a_plus_b_sqrt2(self.a.re, self.b.re)

    def __eq__(self, other):
        try:
            other = QS2.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __complex__(self):
        return complex(self.a) + math.sqrt(2) * complex(self.b)

    def __float__(self):
        if not self.is_real:
            raise ValueError("non-real value")
        return float(self.a.re) + math.sqrt(2) * float(self.b.re)

    def __str__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt2"

    def __repr__(self):
        return f"QS2({self.a!r}, {self.b!r})"


def _sign_a_plus_b_sqrt2(a: Fraction, b: Fraction) -> int:
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    if sb == 0:
        return sa
    # opposite signs: compare a^2 with 2 b^2
    diff = a * a - 2 * b * b
    if diff == 0:
        return 0
    return sa if diff > 0 else sb


def compare_real(x: QS2, y: QS2) -> int:
    """Exact three-way comparison of two real elements of Q(sqrt 2)."""
    return (QS2.coerce(x) - QS2.coerce(y)).real_sign()
