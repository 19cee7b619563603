from fractions import Fraction

import pytest

from sympinv.fields import GF, QQ, FieldMismatchError, check_same_field, field_from_json


def test_prime_field_basics():
    F = GF(3)
    assert F.inv(2) == 2  # 2*2 = 4 = 1
    assert F.add(1, 2) == 0
    assert F.neg(0) == 0
    assert F.mul(2, 2) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_rational_basics():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.neg(QQ.zero) == 0
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        QQ.div(1, QQ.zero)


def test_rejects_characteristic_two_and_composites():
    with pytest.raises(ValueError):
        GF(2)
    with pytest.raises(ValueError):
        GF(9)


def test_is_square_euler_vs_exhaustive():
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]:
        F = GF(p)
        squares = {(b * b) % p for b in range(1, p)}
        for a in range(1, p):
            assert F.is_square(a) == (a in squares)


def test_minus_one_square_iff_one_mod_four():
    for p in [3, 5, 7, 11, 13, 17, 19, 23]:
        F = GF(p)
        assert F.is_square(p - 1) == (p % 4 == 1)


def test_is_square_rational():
    assert QQ.is_square(Fraction(4, 9))
    assert not QQ.is_square(Fraction(-1))
    assert not QQ.is_square(Fraction(2))
    assert QQ.square_class_rep(Fraction(8, 2)) == 1
    assert QQ.square_class_rep(Fraction(-12)) == -3


def test_sqrt():
    for p in [3, 5, 7, 11, 13]:
        F = GF(p)
        for a in range(1, p):
            r = F.sqrt(a)
            if F.is_square(a):
                assert r is not None and (r * r) % p == a
            else:
                assert r is None
    assert QQ.sqrt(Fraction(4, 9)) == Fraction(2, 3)


def test_inverse_property_all_small_fields():
    for p in [3, 5, 7, 11]:
        F = GF(p)
        for a in range(1, p):
            assert F.mul(a, F.inv(a)) == 1


def test_serialization_round_trip():
    F = GF(7)
    assert field_from_json(F.to_json()) == F
    assert field_from_json({"kind": "rational"}) == QQ
    assert F.scalar_from_json(F.scalar_to_json(5)) == 5
    assert QQ.scalar_from_json("2/3") == Fraction(2, 3)
    assert QQ.scalar_to_json(Fraction(-1, 2)) == "-1/2"
    assert QQ.scalar_to_json(Fraction(4)) == 4


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        check_same_field(GF(3), GF(5))
    check_same_field(GF(3), GF(3))
