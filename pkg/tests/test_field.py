from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spinsym.field import I, ONE, SQRT2, ZERO, FieldElement, as_field

small = st.integers(-20, 20)
elements = st.builds(FieldElement, small, small, small, small, st.integers(1, 12))
nonzero = elements.filter(lambda x: not x.is_zero())


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert x / x == ONE


@given(elements, elements)
def test_conjugation_is_a_ring_map(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert x.conj().conj() == x


@given(elements)
def test_complex_embedding(x):
    z = complex(x)
    assert abs(complex(x * x) - z * z) < 1e-6 * (1 + abs(z) ** 2)


def test_units():
    assert I * I == -ONE
    assert SQRT2 * SQRT2 == as_field(2)
    assert (ONE + I).conj() == ONE - I
    assert ZERO.is_zero() and not ONE.is_zero()


def test_normal_form_is_canonical():
    assert FieldElement(2, 4, 0, 0, 4) == FieldElement(1, 2, 0, 0, 2)
    assert hash(FieldElement(2, 0, 0, 0, 4)) == hash(as_field(Fraction(1, 2)))


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        FieldElement(1, 0, 0, 0, 0)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_coercion():
    assert as_field(Fraction(3, 4)) == FieldElement(3, 0, 0, 0, 4)
    assert as_field(2 + 3j) == FieldElement(2, 3)
    with pytest.raises(TypeError):
        as_field(0.5)
