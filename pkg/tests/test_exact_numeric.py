from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.domain.exact_numeric import (
    PowerBound,
    format_rational,
    fractional_part,
    is_half_integer,
    nearest_int_distance,
    parse_rational,
    power_at_most,
    rational_group_generator,
    round_nearest,
)
from src.domain.exceptions import DocumentParseError, PreconditionViolation

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)


@pytest.mark.parametrize(
    "value, expected",
    [(F(7, 4), F(1, 4)), (F(-2, 5), F(2, 5)), (F(3), F(0)), (F(1, 2), F(1, 2))],
)
def test_nearest_int_distance(value, expected):
    assert nearest_int_distance(value) == expected


@pytest.mark.parametrize("value, expected", [(F(1, 2), 1), (F(-1, 2), 0), (F(3, 4), 1), (F(-3, 4), -1)])
def test_round_nearest_ties_go_up(value, expected):
    assert round_nearest(value) == expected


@given(rationals, st.integers(min_value=-20, max_value=20))
def test_distance_is_periodic_and_bounded(x, k):
    assert 0 <= nearest_int_distance(x) <= F(1, 2)
    assert nearest_int_distance(x + k) == nearest_int_distance(x)


@given(rationals)
def test_round_nearest_is_within_half(x):
    assert -F(1, 2) <= x - round_nearest(x) < F(1, 2)


def test_half_integer_detection():
    assert is_half_integer(F(-1, 2))
    assert is_half_integer(F(5, 2))
    assert not is_half_integer(F(1, 4))
    assert fractional_part(F(-1, 4)) == F(3, 4)


@pytest.mark.parametrize(
    "values, expected",
    [([1, 2], F(1)), ([F(1, 3), F(1, 3), F(2, 3)], F(3)), ([F(3, 4), F(1, 2), F(1, 4)], F(4)), ([F(2, 3), F(4, 3)], F(3, 2))],
)
def test_rational_group_generator(values, expected):
    assert rational_group_generator(values) == expected


@given(st.lists(st.fractions(min_value=F(1, 40), max_value=10, max_denominator=40), min_size=1, max_size=6))
def test_group_generator_is_the_smallest_integerizing_scale(values):
    lam = rational_group_generator(values)
    assert all((lam * v).denominator == 1 for v in values)
    # every integerizing scale is an integer multiple of lam
    for k in range(1, 6):
        smaller = lam * F(k, k + 1)
        assert not all((smaller * v).denominator == 1 for v in values)


def test_group_generator_rejects_empty_and_non_positive():
    with pytest.raises(PreconditionViolation) as empty:
        rational_group_generator([])
    assert empty.value.key == "error_empty_input"
    with pytest.raises(PreconditionViolation) as negative:
        rational_group_generator([F(1, 2), F(-1, 3)])
    assert negative.value.key == "error_non_positive_value"


@pytest.mark.parametrize("text, expected", [("3/6", F(1, 2)), ("-4", F(-4)), (" 7 / 2 ", F(7, 2)), ("+0/5", F(0))])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["3/0", "1/-2", "0.5", "", "a/b", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(DocumentParseError):
        parse_rational(text)


def test_format_rational_is_canonical():
    assert format_rational(F(6, 4)) == "3/2"
    assert format_rational(F(-8, 4)) == "-2"
    assert format_rational(F(0)) == "0"


def test_power_at_most_fractional_exponent():
    # 4^(3/2) = 8
    assert power_at_most(8, 4, F(3, 2))
    assert not power_at_most(F(81, 10), 4, F(3, 2))
    # 4^(-1/2) = 1/2
    assert power_at_most(F(1, 2), 4, F(-1, 2))
    assert not power_at_most(F(3, 5), 4, F(-1, 2))
    assert power_at_most(18, 2, 3, multiplier=F(9, 4))


def test_power_bound_text_and_value():
    assert str(PowerBound(4, F(14, 3), F(3))) == "3*4^(14/3)"
    assert str(PowerBound(4, F(3))) == "4^3"
    assert PowerBound(8, F(2), F(9)).exact_value() == 576
    assert PowerBound(8, F(2), F(9)).admits(576)
    assert not PowerBound(8, F(2), F(9)).admits(577)
