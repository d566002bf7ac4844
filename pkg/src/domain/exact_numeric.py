# path: src/domain/exact_numeric.py
# description: Exact Rational Substrate v1.0.
#
# ARCHITECTURAL ROLE (Domain Core):
# Every coordinate, side length and scale in the toolkit is a Rat
# (fractions.Fraction, always stored in lowest terms with a positive
# denominator). Nothing in the domain or infrastructure layers touches
# floating point; the SVG renderer is the only place rationals become
# decimals.
#
# Bounds of the form  multiplier * base^(p/r)  are compared exactly by
# raising both sides to the r-th power.

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from src.domain.exceptions import DocumentParseError, PreconditionViolation

Rat = Fraction
RatLike = Union[Fraction, int, str]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rat(value: RatLike) -> Rat:
    """Coerce ints, Fractions and canonical strings into a Rat."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Rat:
    """Parse "num/den" or "num". The denominator must be a positive integer."""
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise DocumentParseError(f"malformed rational {text!r}", value=text)
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise DocumentParseError(f"zero denominator in {text!r}", value=text)
    return Fraction(numerator, denominator)


def format_rational(value: Rat) -> str:
    value = as_rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integer(value: Rat) -> bool:
    return as_rat(value).denominator == 1


def fractional_part(value: Rat) -> Rat:
    value = as_rat(value)
    return value - math.floor(value)


def is_half_integer(value: Rat) -> bool:
    """True when the fractional part is exactly 1/2."""
    return fractional_part(value) == HALF


def round_nearest(value: Rat) -> int:
    """r(x) = floor(x + 1/2). Ties go up."""
    return math.floor(as_rat(value) + HALF)


def nearest_int_distance(value: Rat) -> Rat:
    """||x||: distance from x to the closest integer, in [0, 1/2]."""
    frac = fractional_part(value)
    return min(frac, 1 - frac)


def rational_group_generator(values: Iterable[RatLike]) -> Rat:
    """
    Smallest positive lam with lam * s integral for every s.

    For s_i = n_i / d_i in lowest terms this is lcm(d_i) / gcd(n_i).
    """
    rats = [as_rat(v) for v in values]
    if not rats:
        raise PreconditionViolation(
            "rational_group_generator needs at least one value", key="error_empty_input"
        )
    if any(r <= 0 for r in rats):
        raise PreconditionViolation(
            "rational_group_generator needs positive values",
            key="error_non_positive_value",
            values=[format_rational(r) for r in rats if r <= 0],
        )
    denominator_lcm = reduce(math.lcm, (r.denominator for r in rats), 1)
    numerator_gcd = reduce(math.gcd, (r.numerator for r in rats), 0)
    return Fraction(denominator_lcm, numerator_gcd)


def power_at_most(value: RatLike, base: int, exponent: RatLike, multiplier: RatLike = 1) -> bool:
    """Exact test of  value <= multiplier * base ** exponent  for a rational exponent."""
    value = as_rat(value)
    exponent = as_rat(exponent)
    multiplier = as_rat(multiplier)
    if multiplier <= 0:
        return value <= 0
    if value <= 0:
        return True
    ratio = value / multiplier
    # ratio <= base^(p/r)  <=>  ratio^r <= base^p   (both sides positive)
    p, r = exponent.numerator, exponent.denominator
    if p >= 0:
        return ratio ** r <= Fraction(base) ** p
    return ratio ** r * Fraction(base) ** (-p) <= 1


@dataclass(frozen=True)
class PowerBound:
    """multiplier * base^exponent, kept symbolic so comparisons stay exact."""

    base: int
    exponent: Rat
    multiplier: Rat = Fraction(1)

    def admits(self, value: RatLike) -> bool:
        return power_at_most(value, self.base, self.exponent, self.multiplier)

    def exact_value(self) -> Rat:
        """Only valid for integral exponents."""
        if self.exponent.denominator != 1:
            raise ValueError("bound with fractional exponent has no exact rational value")
        return self.multiplier * Fraction(self.base) ** int(self.exponent)

    def __str__(self) -> str:
        exponent = format_rational(self.exponent)
        if self.exponent.denominator != 1 or self.exponent < 0:
            exponent = f"({exponent})"
        power = f"{self.base}^{exponent}"
        if self.multiplier == 1:
            return power
        return f"{format_rational(self.multiplier)}*{power}"
