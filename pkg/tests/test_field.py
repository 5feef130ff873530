from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hyperminors.field import (
    DEFAULT_PRIME,
    GF,
    QQ,
    DivisionByZero,
    FieldMismatch,
    PrimeField,
    Scalar,
    parse_field,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
residues = st.integers(min_value=0, max_value=DEFAULT_PRIME - 1)


def test_rational_addition():
    assert Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3)) == Scalar(Fraction(5, 6))


def test_prime_field_product_wraps():
    # the small modulus example from the arithmetic contract, checked with plain ints
    assert 3 * 5 % 7 == 1
    F = GF()
    assert (Scalar(3, F) * Scalar(F.inv(3), F)).value == 1


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        Scalar(0).inverse()
    with pytest.raises(DivisionByZero):
        Scalar(0, GF()).inverse()
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        Scalar(1) + Scalar(1, GF())


def test_small_modulus_rejected():
    with pytest.raises(ValueError):
        PrimeField(7)
    with pytest.raises(ValueError):
        PrimeField(2**21)  # not prime


def test_parse_field_spellings():
    assert parse_field("QQ") is QQ
    assert parse_field("GF") == GF(DEFAULT_PRIME)
    assert parse_field("GF(2147483629)").p == 2147483629
    assert parse_field("gf:2147483629").p == 2147483629
    with pytest.raises(ValueError):
        parse_field("RR")


def test_text_round_trip():
    for s in (Scalar(Fraction(-7, 3)), Scalar(12), Scalar(5, GF())):
        assert Scalar.parse(str(s)) == s


def test_gf_converts_fractions():
    F = GF()
    x = F.convert(Fraction(1, 2))
    assert F.mul(x, 2) == 1


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    A, B, C = Scalar(a), Scalar(b), Scalar(c)
    assert (A + B) + C == A + (B + C)
    assert A * (B + C) == A * B + A * C
    assert A + B - B == A
    if a:
        assert A * A.inverse() == 1
    v = (A * B + C).value
    if isinstance(v, Fraction):
        assert v.denominator > 1


@given(residues, residues, residues)
def test_prime_field_axioms(a, b, c):
    F = GF()
    A, B, C = Scalar(a, F), Scalar(b, F), Scalar(c, F)
    assert (A + B) + C == A + (B + C)
    assert A * (B + C) == A * B + A * C
    assert 0 <= (A - B).value < F.p
    if a:
        assert (A * A.inverse()).value == 1
