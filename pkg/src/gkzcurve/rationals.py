"""Exact rational arithmetic helpers.

All series coefficients in this package are exact rationals.  We use
``fractions.Fraction`` from the standard library as the rational type: it is
normalized (gcd-reduced, positive denominator), hashable, and supports exact
field arithmetic out of the box.

The one non-trivial primitive is the multivariate falling factorial

    (z)_alpha = prod_i  z_i * (z_i - 1) * ... * (z_i - alpha_i + 1),

taken over the coordinates where alpha_i > 0 (empty product = 1).  It is the
building block of every Gamma-series coefficient.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, rationals and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise InvalidInputError(f"cannot interpret {x!r} as a rational number")


def as_rational_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_rational(x) for x in xs)


def parse_rational(s: str) -> Fraction:
    """Parse 'p' or 'p/q' (q > 0 after normalization)."""
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad rational literal {s!r}") from exc


def format_rational(x: Fraction | int) -> str:
    """Render a rational as 'p' or 'p/q' with q > 0 and gcd(p, q) = 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def falling_factorial_1d(z, k: int) -> Fraction:
    """z (z-1) ... (z-k+1) for an integer k >= 0 (k = 0 gives 1)."""
    if k < 0:
        raise InvalidInputError("falling factorial needs a nonnegative step count")
    z = as_rational(z)
    # Work over a common denominator so the loop multiplies plain ints.
    p, q = z.numerator, z.denominator
    num = 1
    for j in range(k):
        num *= p - j * q
    return Fraction(num, q**k)


def falling_factorial(z: Sequence, alpha: Sequence[int]) -> Fraction:
    """Coordinatewise falling factorial (z)_alpha, multiplied out.

    ``alpha`` must consist of nonnegative integers; coordinates with
    alpha_i = 0 are skipped.  Examples:

        falling_factorial((Fraction(1,2), 0), (3, 0))  ->  3/8
        falling_factorial((2, 3), (0, 2))              ->  6
    """
    if len(z) != len(alpha):
        raise InvalidInputError("z and alpha must have equal length")
    out = Fraction(1)
    for zi, ai in zip(z, alpha):
        if ai:
            out *= falling_factorial_1d(zi, ai)
    return out


def log_factorial(k: int) -> float:
    """ln(k!) as a float, via lgamma."""
    if k < 0:
        raise InvalidInputError("log_factorial needs k >= 0")
    return math.lgamma(k + 1)


def log_abs(x: Fraction) -> float:
    """ln|x| for a nonzero rational, safe for huge numerators."""
    if x == 0:
        raise InvalidInputError("log of zero")
    return math.log(abs(x.numerator)) - math.log(x.denominator)
