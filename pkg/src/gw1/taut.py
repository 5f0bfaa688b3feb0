"""Top intersections of the twisted universal class on genus-one blowups.

``bracket(i_count, exponents, tilde_c)`` evaluates the rational number
obtained by integrating the ``tilde_c``-th power of the twisted class
against pulled-back cotangent-line powers ``exponents`` on the blowup
attached to a pair of point sets of sizes ``i_count`` and
``len(exponents)``.  The value depends only on the multiset of exponents,
so keys are canonicalized by sorting before memo lookup.

Evaluation applies, in order:

1. vanishing -- zero unless tilde_c + sum(exponents) equals
   i_count + len(exponents), tilde_c >= 0, and every exponent is >= 0;
2. the terminal value for the single-point key (0, (0,), 1), which is
   1/24; the zero-stripping step below is not valid there because the
   stripped moduli space (genus one, no marked points) does not exist,
   and stripping anyway would wrongly send the whole one-point tower
   to zero;
3. zero-stripping: with a zero exponent present,
   value = i_count * bracket(i_count, rest, tilde_c - 1)
           + sum over remaining slots of the bracket with that exponent
             lowered by one;
4. with all exponents positive and i_count > 0, one abstract point moves
   to the exponent side carrying exponent 0;
5. the base case: i_count == 0 with all exponents equal to 1 and
   tilde_c == 0 gives (m-1)!/24 for m points (any other exponent pattern
   at i_count == 0 is already excluded by the vanishing rule).

The dilaton-style reduction is provided separately (`dilaton_step`) and
is used only as a consistency oracle, never on the evaluation path.
"""

from __future__ import annotations

import functools
from typing import Iterable

from .rational import Rational, ZERO, factorial, rat


def _canonical(exponents: Iterable[int]) -> tuple:
    return tuple(sorted(int(c) for c in exponents))


def bracket(i_count: int, exponents: Iterable[int], tilde_c: int) -> Rational:
    """Exact value of the blowup intersection number; total on integer input."""
    return _bracket(int(i_count), _canonical(exponents), int(tilde_c))


@functools.cache
def _bracket(i: int, cs: tuple, tc: int) -> Rational:
    if tc < 0 or any(c < 0 for c in cs):
        return ZERO
    if tc + sum(cs) != i + len(cs):
        return ZERO
    if i == 0 and cs == (0,):
        # tc == 1 is forced by the degree balance above
        return rat(1, 24)
    if cs and cs[0] == 0:
        rest = cs[1:]
        total = _bracket(i, rest, tc - 1) * i if i else ZERO
        for j in range(len(rest)):
            lowered = _canonical(rest[:j] + (rest[j] - 1,) + rest[j + 1:])
            total = total + _bracket(i, lowered, tc)
        return total
    if i > 0:
        return _bracket(i - 1, (0,) + cs, tc)
    if not cs:
        # the empty-empty bracket; by convention zero
        return ZERO
    # i == 0 with all exponents positive: vanishing forces all-ones, tc == 0
    assert tc == 0 and all(c == 1 for c in cs)
    return factorial(len(cs) - 1) / 24


def bracket_closed_psitop(i_count: int, j_count: int) -> Rational:
    """Closed form for pure twisted-class powers against exponent-zero points.

    Equals i_count**j_count * (i_count-1)!/24 for i_count >= 1; zero for
    i_count == 0 (independent of the recursion; used to cross-check it).
    """
    if i_count < 1:
        return ZERO
    return rat(i_count ** j_count) * factorial(i_count - 1) / 24


def dilaton_step(i_count: int, exponents: Iterable[int], tilde_c: int) -> Rational:
    """One dilaton reduction: strip an exponent-1 point.

    Requires some exponent equal to 1, and at least one other point so
    that the stripped bracket still refers to an existing space (for the
    lone-point key (0, (1,), 0) the relation's right-hand side would sit
    on the empty-empty bracket and the relation fails).  Returns
    (i_count + len(exponents) - 1) * bracket(without that point).
    Test oracle only.
    """
    cs = _canonical(exponents)
    if 1 not in cs:
        raise ValueError("dilaton step needs an exponent equal to 1")
    if i_count + len(cs) < 2:
        raise ValueError("dilaton step needs a point left after stripping")
    j = cs.index(1)
    stripped = cs[:j] + cs[j + 1:]
    return bracket(i_count, stripped, tilde_c) * (i_count + len(cs) - 1)


def bracket_cache_info():
    return _bracket.cache_info()
