from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cehom.scalar import QQ, FieldError, PrimeField, field_create, is_prime

PRIMES = [3, 5, 7, 11]
ints = st.integers(min_value=-10**6, max_value=10**6)


@pytest.mark.parametrize("p", PRIMES)
@given(a=ints, b=ints, c=ints)
def test_prime_field_axioms(p, a, b, c):
    F = PrimeField(p)
    x, y, z = (F.from_integer(n) for n in (a, b, c))
    assert F.add(x, y) == F.add(y, x)
    assert F.multiply(x, F.add(y, z)) == F.add(F.multiply(x, y), F.multiply(x, z))
    assert F.add(x, F.negate(x)) == F.zero()
    if not F.is_zero(x):
        assert F.multiply(x, F.invert(x)) == F.one()


@given(a=ints, b=ints, c=st.integers(1, 50))
def test_rational_axioms(a, b, c):
    x, y = Fraction(a, c), Fraction(b, c + 1)
    assert QQ.add(x, y) == x + y
    assert QQ.multiply(x, QQ.add(y, QQ.one())) == x * y + x
    if x:
        assert QQ.multiply(x, QQ.invert(x)) == 1


@pytest.mark.parametrize("p", PRIMES)
@given(a=ints, b=ints)
def test_from_integer_is_ring_morphism(p, a, b):
    F = PrimeField(p)
    assert F.from_integer(a + b) == F.add(F.from_integer(a), F.from_integer(b))
    assert F.from_integer(a * b) == F.multiply(F.from_integer(a), F.from_integer(b))


def test_invert_examples():
    assert PrimeField(5).invert(2) == 3
    assert PrimeField(3).invert(2) == 2
    assert QQ.invert(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).invert(0)
    with pytest.raises(ZeroDivisionError):
        QQ.invert(Fraction(0))


def test_half_exists_in_odd_characteristic():
    for p in PRIMES:
        F = PrimeField(p)
        assert F.multiply(F.element(Fraction(1, 2)), 2) == 1


def test_rejects_even_and_composite():
    with pytest.raises(FieldError, match="even characteristic"):
        PrimeField(2)
    with pytest.raises(FieldError):
        PrimeField(9)
    assert not is_prime(1) and is_prime(97)


def test_field_create():
    assert field_create("Q") is QQ or field_create("Q") == QQ
    assert field_create("F_5") == PrimeField(5)
    assert field_create(7).characteristic == 7
    assert QQ.characteristic == 0
