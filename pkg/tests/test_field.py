from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from liestab.errors import FieldMismatch, FieldSyntaxError, NotPrime
from liestab.field import GF, QQ, FieldSpec, Scalar, is_square, parse_field

from conftest import fields_st


def test_parse_field_examples():
    assert parse_field("GF(2)") == FieldSpec(2)
    assert parse_field("GF(2)").characteristic == 2
    assert parse_field("QQ") is QQ or parse_field("QQ") == QQ
    assert QQ.characteristic == 0
    with pytest.raises(NotPrime):
        parse_field("GF(6)")
    with pytest.raises(FieldSyntaxError):
        parse_field("F7")


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_is_square_matches_enumeration(p):
    F = GF(p)
    squares = {b * b % p for b in range(p)}
    for a in range(p):
        assert F.is_square(a) == (a in squares)
        r = F.sqrt(a)
        assert (r is not None) == (a in squares)
        if r is not None:
            assert r * r % p == a


def test_square_examples():
    assert GF(7).is_square(2)
    assert not GF(7).is_square(3)
    for F in (GF(2), GF(3), GF(5), QQ):
        assert F.is_square(F.zero)
    assert QQ.is_square(Fraction(4, 9))
    assert QQ.sqrt(Fraction(4, 9)) == Fraction(2, 3)
    assert not QQ.is_square(Fraction(-1))
    assert not QQ.is_square(Fraction(2))
    assert is_square(QQ.scalar("4/9"))


def test_scalar_parsing():
    F = GF(5)
    assert F.parse_scalar("-1") == 4
    assert F.parse_scalar("1/2") == 3
    with pytest.raises(FieldSyntaxError):
        F.parse_scalar("1/5")
    with pytest.raises(FieldSyntaxError):
        QQ.parse_scalar("x")
    assert QQ.parse_scalar("-3/6") == Fraction(-1, 2)


def test_scalar_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(3).scalar(1) + GF(5).scalar(1)


@given(fields_st, st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_field_axioms(F, x, y, z):
    a, b, c = F.coerce(x), F.coerce(y), F.coerce(z)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    if a:
        assert F.mul(a, F.inv(a)) == F.one
        assert F.div(b, a) == F.mul(b, F.inv(a))


@given(fields_st, st.integers(-20, 20), st.integers(0, 6))
def test_power_is_repeated_product(F, x, e):
    a = F.coerce(x)
    want = F.one
    for _ in range(e):
        want = F.mul(want, a)
    assert F.power(a, e) == want


@given(fields_st, st.integers(-20, 20))
def test_format_round_trip(F, x):
    a = F.coerce(x)
    assert F.parse_scalar(F.format(a)) == a


def test_scalar_wrapper_arithmetic():
    F = GF(7)
    a, b = F.scalar(3), F.scalar(5)
    assert (a + b).value == 1
    assert (a * b).value == 1
    assert (a / b * b).value == 3
    assert isinstance(-a, Scalar) and (-a).value == 4
