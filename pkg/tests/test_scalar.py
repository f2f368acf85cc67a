from fractions import Fraction

import pytest
from hypothesis import given

from freevoa.scalar import SQRT6, Scalar, binom, falling, format_scalar, parse_scalar

from conftest import scalars


def test_sqrt6_squares_to_six():
    assert SQRT6 * SQRT6 == 6
    assert SQRT6 ** 2 == Scalar(6)


def test_lowest_terms_and_structural_equality():
    s = Scalar(Fraction(4, -6), Fraction(2, 4))
    assert s.rat == Fraction(-2, 3) and s.rat.denominator == 3
    assert s == Scalar(Fraction(-2, 3), Fraction(1, 2))
    assert not Scalar(0, 0)
    assert Scalar(0, 1)


def test_constants_in_the_field():
    # sqrt(2/27) and sqrt(3/2) both live in Q(sqrt6)
    assert (SQRT6 / 9) ** 2 == Fraction(2, 27)
    assert (SQRT6 / 2) ** 2 == Fraction(3, 2)
    assert (2 * SQRT6 / 3) ** 2 == Fraction(8, 3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(1, 1) / Scalar(0)


def test_ordering_uses_real_embedding():
    assert Scalar(-2, 1) > 0  # sqrt6 > 2
    assert Scalar(3, -1) > 0
    assert Scalar(2, -1) < 0
    assert sorted([SQRT6, Scalar(2), Scalar(3)]) == [Scalar(2), SQRT6, Scalar(3)]


@pytest.mark.parametrize("text, value", [
    ("3", Scalar(3)),
    ("-1/2", Scalar(Fraction(-1, 2))),
    ("sqrt6", SQRT6),
    ("2/3*sqrt6", Scalar(0, Fraction(2, 3))),
    ("1-2*sqrt6", Scalar(1, -2)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


def test_format_scalar():
    assert format_scalar(SQRT6 / 3) == "1/3*sqrt6"
    assert format_scalar(Scalar(1, -2)) == "(1-2*sqrt6)"
    assert format_scalar(Scalar(Fraction(-3, 4))) == "-3/4"


def test_falling_and_binomial():
    assert falling(5, 2) == 20
    assert binom(5, 2) == 10
    assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom(-1, 3) == -1


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(scalars)
def test_norm_is_multiplicative_with_conjugate(a):
    assert a * a.conjugate() == a.norm()


@given(scalars)
def test_json_and_text_round_trip(a):
    assert Scalar.from_json(a.to_json()) == a
    assert parse_scalar(format_scalar(a)) == a
