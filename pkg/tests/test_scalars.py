from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symflag.errors import FieldError
from symflag.scalars import (
    Backend,
    ExactField,
    Surd,
    coerce,
    exact_sign,
    exact_sqrt,
    format_exact,
    format_scalar,
    parse_exact,
    parse_scalar,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
SQRT2 = exact_sqrt(2)


def test_exact_sqrt_of_squares_is_rational():
    assert exact_sqrt(9) == 3
    assert exact_sqrt(Fraction(4, 9)) == Fraction(2, 3)
    assert isinstance(exact_sqrt(Fraction(1, 4)), Fraction)


def test_exact_sqrt_reduces_radicand():
    assert exact_sqrt(8) == 2 * SQRT2
    assert exact_sqrt(Fraction(1, 2)) == SQRT2 / 2
    assert exact_sqrt(12).radicands == (3,)


def test_exact_sqrt_errors():
    with pytest.raises(FieldError):
        exact_sqrt(-1)
    with pytest.raises(FieldError):
        exact_sqrt(SQRT2)


def test_products_demote_to_fraction():
    assert SQRT2 * SQRT2 == 2
    assert isinstance(SQRT2 * SQRT2, Fraction)
    assert exact_sqrt(3) * exact_sqrt(12) == 6
    assert SQRT2 - SQRT2 == 0


def test_surd_needs_an_irrational_term():
    with pytest.raises(FieldError):
        Surd({1: Fraction(3)})
    with pytest.raises(FieldError):
        Surd({4: Fraction(1)})


def test_sign_of_close_values():
    assert exact_sign(3 - 2 * SQRT2) == 1
    assert exact_sign(SQRT2 + exact_sqrt(3) - 3) == 1
    assert exact_sign(Fraction(7, 5) - SQRT2) == -1
    assert SQRT2 < Fraction(3, 2)
    assert abs(1 - SQRT2) == SQRT2 - 1


def test_division_by_surd():
    x = 1 + SQRT2
    assert x * (1 / x) == 1
    assert (1 / (SQRT2 - 1)) == SQRT2 + 1


def test_format_and_parse():
    assert format_exact(Fraction(0)) == "0"
    assert format_exact(3 - 2 * SQRT2) == "3 - 2*sqrt(2)"
    assert format_exact(-SQRT2) == "-sqrt(2)"
    assert format_exact(Fraction(1, 2) * exact_sqrt(3)) == "1/2*sqrt(3)"
    assert parse_exact("3-2*sqrt(2)") == 3 - 2 * SQRT2
    assert parse_exact(" -1/2 + sqrt(5) ") == Fraction(-1, 2) + exact_sqrt(5)
    assert parse_exact("sqrt(2) - sqrt(2)") == 0


@pytest.mark.parametrize("text", ["", "sqrt(4)", "2 sqrt(3)", "1 2", "sqrt(1)", "x"])
def test_parse_exact_rejects(text):
    with pytest.raises(FieldError):
        parse_exact(text)


def test_float_backend():
    assert coerce("1/2", Backend.FLOAT) == 0.5
    assert coerce("sqrt(2)", Backend.FLOAT) == pytest.approx(2 ** 0.5)
    assert parse_scalar("2.5", Backend.FLOAT) == 2.5
    assert parse_scalar("1/2", Backend.FLOAT) == 0.5
    assert parse_scalar("1 - sqrt(2)", Backend.FLOAT) == pytest.approx(1 - 2 ** 0.5)
    assert format_scalar(0.25, Backend.FLOAT) == "0.25"
    with pytest.raises(FieldError):
        parse_scalar("two", Backend.FLOAT)


def test_backend_parse():
    assert Backend.parse("FLOAT") is Backend.FLOAT
    assert Backend.parse(Backend.EXACT) is Backend.EXACT
    with pytest.raises(ValueError):
        Backend.parse("quad")


def test_exact_field():
    field = ExactField.saturate([2, 3, 8])
    assert field.radicands == (2, 3, 6)
    assert field.contains(SQRT2 * exact_sqrt(3))
    assert not field.contains(exact_sqrt(5))
    with pytest.raises(FieldError):
        ExactField((2, 3))
    with pytest.raises(FieldError):
        field.require(exact_sqrt(7))


@settings(max_examples=200, deadline=None)
@given(a=fractions, b=fractions, c=fractions, d=fractions)
def test_quadratic_field_multiplication(a, b, c, d):
    x, y = a + b * SQRT2, c + d * SQRT2
    assert x * y == (a * c + 2 * b * d) + (a * d + b * c) * SQRT2


@settings(max_examples=200, deadline=None)
@given(a=fractions, b=fractions)
def test_conjugate_product_is_rational(a, b):
    assert (a + b * SQRT2) * (a - b * SQRT2) == a * a - 2 * b * b


@settings(max_examples=200, deadline=None)
@given(a=fractions, b=fractions)
def test_sign_matches_float(a, b):
    x = a + b * exact_sqrt(3)
    value = float(a) + float(b) * 3 ** 0.5
    if abs(value) > 1e-9:
        assert exact_sign(x) == (1 if value > 0 else -1)


@settings(max_examples=100, deadline=None)
@given(a=fractions, b=fractions, c=fractions)
def test_format_parse_identity(a, b, c):
    x = a + b * SQRT2 + c * exact_sqrt(7)
    assert parse_exact(format_exact(x)) == x
