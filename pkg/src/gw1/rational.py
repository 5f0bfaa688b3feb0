"""Exact rational scalars.

Every quantity in this package is an arbitrary-precision rational, stored
in lowest terms with a positive denominator so that equality is structural.
gmpy2's ``mpq`` provides that contract about an order of magnitude faster
than ``fractions.Fraction``; we fall back to the stdlib when gmpy2 is not
importable.  Both types normalize on construction and interoperate with
Python ints, so the rest of the package never needs to know which one is
in use.

Serialization is the string ``"p/q"``, or just ``"p"`` when q == 1.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational

ZERO = Rational(0)
ONE = Rational(1)


def rat(numerator, denominator=1):
    """Build a rational; raises ZeroDivisionError on zero denominator."""
    return Rational(numerator, denominator)


def rat_from_str(text: str):
    """Parse ``"p/q"`` or ``"p"`` into a rational."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Rational(int(num), int(den))
    return Rational(int(text))


def rat_to_str(value) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when the value is integral."""
    return str(Rational(value))


def binomial(n: int, k: int):
    """Exact binomial coefficient; zero outside the Pascal triangle."""
    if k < 0 or k > n or n < 0:
        return ZERO
    out = ONE
    for i in range(k):
        out = out * (n - i) / (i + 1)
    return out


def factorial(n: int):
    """Exact n! as a rational; n must be nonnegative."""
    if n < 0:
        raise ValueError(f"factorial of negative argument {n}")
    out = ONE
    for i in range(2, n + 1):
        out = out * i
    return out


def multinomial(top: int, parts) -> "Rational":
    """Multinomial coefficient top! / prod(parts!) with sum(parts) == top.

    Returns 0 when any part is negative or the parts do not sum to top;
    that is the vanishing convention every consumer in this package wants.
    """
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != top or top < 0:
        return ZERO
    out = factorial(top)
    for p in parts:
        out = out / factorial(p)
    return out
