"""Coefficient ring arithmetic, tokens, and scalar parsing."""

from fractions import Fraction

import pytest

from equimorse import QQ, Ring, RingMismatchError, ZZ, Zmod
from equimorse.errors import EquimorseError


def test_tokens_round_trip():
    for ring in (ZZ, QQ, Zmod(2), Zmod(12)):
        assert Ring.from_token(ring.token()) == ring
    assert ZZ.token() == "int"
    assert QQ.token() == "rat"
    assert Zmod(5).token() == "mod:5"


def test_from_token_rejects_garbage():
    with pytest.raises(EquimorseError):
        Ring.from_token("gf:4")
    with pytest.raises(EquimorseError):
        Ring.from_token("float")


def test_ring_constructor_validation():
    with pytest.raises(EquimorseError):
        Ring("mod", 1)
    with pytest.raises(EquimorseError):
        Ring("int", 7)
    with pytest.raises(EquimorseError):
        Ring("real")


def test_integer_arithmetic():
    a = ZZ.elem(7)
    b = ZZ.elem(-3)
    assert (a + b).value == 4
    assert (a * b).value == -21
    assert (-a).value == -7
    assert (a - a).is_zero()
    assert ZZ.one + ZZ.one == ZZ.elem(2)


def test_integer_units():
    assert ZZ.elem(1).try_invert() == ZZ.elem(1)
    assert ZZ.elem(-1).try_invert() == ZZ.elem(-1)
    assert ZZ.elem(2).try_invert() is None
    assert not ZZ.elem(2).is_unit()


def test_rational_arithmetic_is_exact():
    half = QQ.elem(Fraction(1, 2))
    third = QQ.elem(Fraction(1, 3))
    assert (half + third).value == Fraction(5, 6)
    assert half.try_invert() == QQ.elem(2)
    assert QQ.zero.try_invert() is None


def test_mod_arithmetic_canonical_representatives():
    R = Zmod(5)
    assert R.elem(7).value == 2
    assert R.elem(-1).value == 4
    assert (R.elem(3) + R.elem(4)).value == 2
    assert R.elem(2).try_invert() == R.elem(3)


def test_mod_nonunit_detected():
    R = Zmod(6)
    assert R.elem(2).try_invert() is None
    assert R.elem(5).try_invert() == R.elem(5)


def test_minus_one_equals_one_only_mod_two():
    assert Zmod(2).elem(-1) == Zmod(2).one
    assert Zmod(3).elem(-1) != Zmod(3).one
    assert ZZ.elem(-1) != ZZ.one


def test_parse_scalar_accepts_unicode_minus():
    assert ZZ.parse_scalar("−3").value == -3
    assert ZZ.parse_scalar(" 4 ").value == 4
    assert QQ.parse_scalar("5/6").value == Fraction(5, 6)
    assert Zmod(7).parse_scalar("-1").value == 6


def test_format_parse_round_trip():
    for ring, raw in [(ZZ, -12), (QQ, Fraction(-3, 7)), (Zmod(9), 5)]:
        x = ring.elem(raw)
        assert ring.parse_scalar(ring.format_scalar(x)) == x


def test_cross_ring_operations_rejected():
    with pytest.raises(RingMismatchError):
        ZZ.one + QQ.one
    with pytest.raises(RingMismatchError):
        Zmod(3).one * Zmod(5).one
    with pytest.raises(RingMismatchError):
        ZZ.format_scalar(QQ.one)


def test_coercion_rejects_non_integers():
    with pytest.raises(EquimorseError):
        ZZ.elem(Fraction(1, 2))
    with pytest.raises(EquimorseError):
        ZZ.elem(1.5)
    with pytest.raises(EquimorseError):
        Zmod(4).elem("3")


def test_elem_is_immutable_and_hashable():
    x = ZZ.elem(3)
    with pytest.raises(AttributeError):
        x.value = 4
    assert len({ZZ.elem(1), ZZ.elem(1), ZZ.elem(2)}) == 2
