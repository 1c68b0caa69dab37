from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gfourier.cliffalg import (Multivector, array_product, bar_conjugate, blade_from_indices,
                               blade_sign, complex_conjugate, format_multivector,
                               geometric_product, grade_of, vector_square, wedge,
                               wedge_vectors_array)

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def multivectors(draw, m=None):
    if m is None:
        m = draw(st.integers(1, 5))
    terms = draw(st.dictionaries(st.integers(0, (1 << m) - 1), coeff, max_size=6))
    return Multivector(m, terms)


@st.composite
def triples(draw):
    m = draw(st.integers(1, 5))
    return tuple(draw(multivectors(m)) for _ in range(3))


def e(m, *idx):
    return Multivector.blade(m, idx)


def test_generator_relations():
    m = 3
    assert e(m, 1) * e(m, 1) == Multivector.scalar(m, -1)
    assert e(m, 1) * e(m, 2) == e(m, 1, 2)
    assert e(m, 2) * e(m, 1) == -e(m, 1, 2)
    a = Multivector(m, {0: 2, 3: Fraction(1, 3), 7: -1})
    assert Multivector.scalar(m, 1) * a == a


def test_blade_sign_by_enumeration():
    # e1 e2 e1 e2 = -e1 e1 e2 e2 = -1
    b12 = 0b11
    assert blade_sign(b12, b12) == -1
    # (e1 e2 e3)^2 = e1 e1 (e2 e3)^2 = (-1)(-1) = 1 after moving e1 across e2 e3
    assert blade_sign(0b111, 0b111) == 1
    assert blade_from_indices([1, 2, 3, 1, 2, 3]) == (0, 1)
    assert blade_from_indices([2, 1]) == (0b11, -1)
    assert grade_of(0b1011) == 3


def test_wedge_examples():
    x = Multivector.vector([1, 0])
    y = Multivector.vector([0, 1])
    assert wedge(x, y) == e(2, 1, 2)
    assert not wedge(x, x)
    assert wedge(Multivector.vector([1, 2]), Multivector.vector([3, 4])) == e(2, 1, 2) * -2


def test_vector_square_examples():
    assert vector_square([1, 2]) == -5
    assert vector_square([0, 0, 0]) == 0
    assert vector_square([3, 4]) == -25


def test_bar_examples():
    assert bar_conjugate(e(2, 1)) == -e(2, 1)
    assert bar_conjugate(e(2, 1, 2)) == -e(2, 1, 2)
    assert bar_conjugate(Multivector.scalar(2, 1)) == Multivector.scalar(2, 1)


def test_complex_conjugate_acts_on_coefficients():
    a = Multivector(2, {1: 1 + 2j, 3: -1j})
    assert complex_conjugate(a) == Multivector(2, {1: 1 - 2j, 3: 1j})


def test_format():
    a = Multivector(3, {0: 2, 0b101: Fraction(-1, 2)})
    assert format_multivector(a) == "2 * e{} + -1/2 * e{1 3}"
    assert format_multivector(Multivector(2)) == "0"


def test_dimension_checks():
    with pytest.raises(ValueError):
        Multivector(2, {4: 1})
    with pytest.raises(ValueError):
        e(2, 1) * e(3, 1)
    with pytest.raises(ValueError):
        Multivector.generator(2, 3)


@given(triples())
def test_associative(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)


@given(triples())
def test_distributive(abc):
    a, b, c = abc
    assert a * (b + c) == a * b + a * c


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5).flatmap(
    lambda xs: st.tuples(st.just(xs), st.lists(st.integers(-6, 6), min_size=len(xs),
                                               max_size=len(xs)))))
def test_vector_product_identities(pair):
    xs, ys = pair
    m = len(xs)
    x, y = Multivector.vector(xs), Multivector.vector(ys)
    dot = sum(a * b for a, b in zip(xs, ys))
    assert x * y + y * x == Multivector.scalar(m, -2 * dot)
    assert x * y == Multivector.scalar(m, -dot) + wedge(x, y)


@given(triples())
def test_bar_anti_involution(abc):
    a, b, _ = abc
    assert bar_conjugate(bar_conjugate(a)) == a
    assert bar_conjugate(geometric_product(a, b)) == bar_conjugate(b) * bar_conjugate(a)


@given(triples())
def test_dense_product_matches_sparse(abc):
    a, b, _ = abc
    m = a.m
    dense = array_product(a.to_array()[None, :], b.to_array()[None, :], m)[0]
    assert np.allclose(dense, (a * b).to_array())


def test_wedge_array_matches_sparse():
    rng = np.random.default_rng(3)
    for m in (2, 3, 4):
        x, y = rng.integers(-4, 5, size=(2, m))
        dense = wedge_vectors_array(x[None, :].astype(float), y[None, :].astype(float))[0]
        sparse = wedge(Multivector.vector(x.tolist()), Multivector.vector(y.tolist()))
        assert np.allclose(dense, sparse.to_array())
