from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from gfourier.exactnum import (QI, QS2, DomainError, FSpec, F_eval, Mod4Phase, binom_poly,
                               compare_real, eval_D, eval_E, mod4_table, selector_eval,
                               selector_table, table_csv, cos_sin_family_spec)

DATA = Path(__file__).parent / "data"


def e_oracle(n: int, k: int) -> int:
    """E_n(k) = (k/n) binom(k+n-1, 2n-1) for integers k >= 0, n >= 1 (0 below n)."""
    k = abs(k)
    if n == 0:
        return 1
    if k < n:
        return 0
    return Fraction(k * math.comb(k + n - 1, 2 * n - 1), n)


# --- binom_poly / eval_E / eval_D -------------------------------------------

def test_binom_poly_values():
    assert binom_poly(5, 2) == 10
    assert binom_poly(0, 3) == 0
    assert binom_poly(Fraction(7, 2), 1) == Fraction(7, 2)
    assert binom_poly(Fraction(1, 2), 2) == Fraction(-1, 8)


def test_eval_e_values():
    assert eval_E(2, 3) == 6
    assert eval_E(1, 5) == 25
    assert eval_E(4, 2) == 0
    assert eval_E(0, Fraction(3, 7)) == 1


def test_eval_e_matches_binomial_oracle():
    for n in range(9):
        for k in range(-30, 31):
            assert eval_E(n, k) == e_oracle(n, k), (n, k)


def test_eval_e_is_one_at_its_index():
    for n in range(1, 13):
        assert eval_E(n, n) == 1


def test_eval_d_values():
    assert eval_D(1, Fraction(3, 2)) == 1
    assert eval_D(2, Fraction(1, 2)) == 0
    assert eval_D(1, Fraction(5, 2)) == 3


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        binom_poly(3, -1)
    with pytest.raises(ValueError):
        eval_E(-1, 2)


@given(st.integers(0, 12), st.integers(-64, 64))
def test_e_integer_valued(n, x):
    assert eval_E(n, x).denominator == 1


@given(st.integers(0, 12), st.integers(0, 64))
def test_d_on_half_integers_is_binomial(n, k):
    assert eval_D(n, Fraction(2 * k + 1, 2)) == math.comb(k + n, 2 * n)


@given(st.integers(0, 10), st.fractions(max_denominator=9))
def test_e_is_even(n, x):
    assert eval_E(n, x) == eval_E(n, -x)


# --- Mod4Phase and Gaussian rationals ------------------------------------------

def test_phase_tokens_and_values():
    assert [str(Mod4Phase(e)) for e in range(4)] == ["1", "i", "-1", "-i"]
    assert Mod4Phase.from_token("-i") == Mod4Phase(3)
    assert Mod4Phase(1).to_complex() == 1j
    assert Mod4Phase(6) == Mod4Phase(2)
    assert -Mod4Phase(0) == Mod4Phase(2)


@given(st.integers(), st.integers())
def test_phase_group_law(a, b):
    pa, pb = Mod4Phase(a), Mod4Phase(b)
    assert (pa * pb).to_complex() == pytest.approx(pa.to_complex() * pb.to_complex())
    assert pa * pa.inverse() == Mod4Phase(0)
    assert pa ** 4 == Mod4Phase(0)
    assert abs(pa.to_complex()) == 1


def test_gaussian_rationals():
    a = QI(Fraction(1, 2), 3)
    b = QI(-2, Fraction(1, 3))
    assert complex(a * b) == pytest.approx(complex(a) * complex(b))
    assert (a / b) * b == a
    assert a.conjugate() == QI(Fraction(1, 2), -3)
    assert a.abs2() == Fraction(1, 4) + 9


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_qs2_sign_matches_float(a, b):
    v = QS2(QI(a), QI(b))
    x = float(a) + float(b) * math.sqrt(2)
    if abs(x) > 1e-9:
        assert v.real_sign() == (1 if x > 0 else -1)
    if a == 0 and b == 0:
        assert v.real_sign() == 0


def test_qs2_arithmetic_and_comparison():
    r2 = QS2(0, 1)
    assert r2 * r2 == QS2(2)
    assert compare_real(QS2(Fraction(3, 2)), r2) > 0  # 1.5 > 1.414...
    assert compare_real(QS2(Fraction(7, 5)), r2) < 0
    assert float(QS2(1, 1)) == pytest.approx(1 + math.sqrt(2))


# --- selectors -------------------------------------------------------------

def test_selector_examples():
    assert selector_eval("E0010", 6) == 1
    assert selector_eval("E0001", 11) == 1
    assert selector_eval("D0110", Fraction(19, 2)) == 1


def test_selector_domain_errors():
    with pytest.raises(DomainError):
        selector_eval("E0101", Fraction(1, 2))
    with pytest.raises(DomainError):
        selector_eval("D0011", 3)
    with pytest.raises(DomainError):
        selector_eval("E0010", Fraction(1, 3))
    with pytest.raises(ValueError):
        selector_eval("E9999", 3)


@given(st.integers(0, 256))
def test_selectors_are_indicators(x):
    r = x % 4
    assert selector_eval("E0101", x) == int(r in (1, 3))
    assert selector_eval("E0010", x) == int(r == 2)
    assert selector_eval("E0001", x) == int(r == 3)
    h = Fraction(2 * x + 1, 2)
    assert selector_eval("D0110", h) == int(r in (1, 2))
    assert selector_eval("D0011", h) == int(r in (2, 3))
    assert selector_eval("D0010", h) == int(r == 2)


# --- F_eval -------------------------------------------------------------------

def test_f_eval_examples():
    assert F_eval(FSpec.four_tuple("E"), 7) == 0
    assert F_eval(FSpec.four_tuple("E", 1, 1), 3) == 2
    assert F_eval(FSpec.four_tuple("D", 0, 1), Fraction(5, 2)) == 1


def test_f_eval_general_sequence():
    # F = E_1 = x^2 is 1 on odd and 0 on even integers mod 4
    spec = FSpec.general("E", [0, 1] + [0] * 20)
    assert [F_eval(spec, x) for x in range(8)] == [0, 1, 0, 1, 0, 1, 0, 1]
    with pytest.raises(DomainError):
        F_eval(FSpec.general("E", [0, 1]), 5)


def test_f_eval_rejects_wrong_family_argument():
    with pytest.raises(DomainError):
        F_eval(FSpec.four_tuple("D", 1), 2)
    with pytest.raises(ValueError):
        FSpec("Q", four=(0, 0, 0, 0))


@given(st.tuples(*[st.integers(0, 3)] * 4), st.integers(0, 200), st.sampled_from("ED"))
def test_four_tuple_is_4_periodic(four, k, family):
    spec = FSpec.four_tuple(family, *four)
    x = Fraction(k) if family == "E" else Fraction(2 * k + 1, 2)
    assert F_eval(spec, x) == F_eval(spec, x + 4)


def test_cos_sin_family_spec_matches_its_definition():
    for m in (3, 5, 7):
        for d in range(4):
            spec = cos_sin_family_spec(d, m)
            for k in range(20):
                x = Fraction(2 * k + 1, 2)
                direct = d * ((m - 2) * (selector_eval("D0110", x) + selector_eval("D0011", x)
                                         + 2 * selector_eval("D0010", x)) + ((m + 1) // 2) ** 2)
                assert F_eval(spec, x) == direct % 4
    with pytest.raises(ValueError):
        cos_sin_family_spec(1, 4)


# --- tables -------------------------------------------------------------------

@pytest.mark.parametrize("family, name, selectors", [
    ("E", "table1.csv", False), ("D", "table2.csv", False),
    ("E", "table3.csv", True), ("D", "table4.csv", True)])
def test_tables_match_published_values(family, name, selectors):
    assert table_csv(family, 5, 15, selectors=selectors) == (DATA / name).read_text()


def test_table_shapes():
    assert mod4_table("E", 0, 3) == [[1, 1, 1, 1]]
    rows = selector_table("D", 3)
    assert [r[0] for r in rows] == ["1", "D0110", "D0011", "D0010"]
    with pytest.raises(ValueError):
        mod4_table("E", -1, 3)
