"""Repackaged bracket coefficients for the untwisted-class difference formula.

``theta_closed(m, exponents)`` evaluates the coefficient attached to a
group of ``m`` rational components and a multiset of descendant
exponents, as a signed sum over assignments of the exponent slots to
``m + 1`` labeled blocks (block 0 keeps its exponents on the bracket;
blocks 1..m contribute multinomial weights):

    sum over J = J_0 u J_1 u ... u J_m of
      (-1)^(m + |J_0| - p_0) * prod_i C(|J_i| - 1; (c_j in J_i), |J_i|-1-p_i)
      * bracket(m, (c_j in J_0), m + |J_0| - p_0)

with p_i the exponent sum of block i, the multinomial equal to 1 on an
empty block and 0 when its implicit last part is negative.  The bracket's
third argument uses |J_0|, which keeps every decomposition degree-balanced
and is the reading forced by the special values and the recursions (the
printed source formula is off by |J| - |J_0|; see the decisions ledger).

``theta_recursive`` evaluates the same numbers through the three
reduction rules (strip zeros, strip ones, lower m) plus the initial value
-1/24 at (m, J) = (1, empty).  The rule set stalls for m == 1 with an
exponent >= 2 left over; the function then returns None rather than
guessing, and the closed formula is the authority.
"""

from __future__ import annotations

import functools
from itertools import product
from typing import Iterable, Optional

from .rational import Rational, ZERO, multinomial, rat
from .taut import bracket


def _canonical(exponents: Iterable[int]) -> tuple:
    return tuple(sorted(int(c) for c in exponents))


def theta_closed(m: int, exponents: Iterable[int]) -> Rational:
    """Closed-formula value; m must be a positive integer."""
    if m < 1:
        raise ValueError(f"block count m must be >= 1, got {m}")
    return _theta_closed(int(m), _canonical(exponents))


@functools.cache
def _theta_closed(m: int, cs: tuple) -> Rational:
    total = ZERO
    for assign in product(range(m + 1), repeat=len(cs)):
        blocks = [[] for _ in range(m + 1)]
        for c, b in zip(cs, assign):
            blocks[b].append(c)
        j0 = blocks[0]
        p0 = sum(j0)
        weight = rat(-1) ** ((m + len(j0) - p0) % 2)
        for block in blocks[1:]:
            if not block:
                continue
            top = len(block) - 1
            weight = weight * multinomial(top, block + [top - sum(block)])
            if not weight:
                break
        if not weight:
            continue
        br = bracket(m, j0, m + len(j0) - p0)
        if br:
            total = total + weight * br
    return total


def theta_recursive(m: int, exponents: Iterable[int]) -> Optional[Rational]:
    """Value via the reduction rules, or None where the rule set stalls."""
    if m < 1:
        raise ValueError(f"block count m must be >= 1, got {m}")
    return _theta_recursive(int(m), _canonical(exponents))


@functools.cache
def _theta_recursive(m: int, cs: tuple) -> Optional[Rational]:
    if any(c < 0 for c in cs):
        # vanishing convention inherited from the closed formula
        return ZERO
    if cs and cs[0] == 0:
        # strip a zero: sum over the remaining slots with one exponent lowered
        rest = cs[1:]
        total = ZERO
        for j in range(len(rest)):
            lowered = _canonical(rest[:j] + (rest[j] - 1,) + rest[j + 1:])
            sub = _theta_recursive(m, lowered)
            if sub is None:
                return None
            total = total + sub
        return total
    if cs and cs[0] == 1:
        sub = _theta_recursive(m, cs[1:])
        if sub is None:
            return None
        return sub * (m + len(cs) - 1)
    if m > 1:
        # all exponents >= 2 here
        total = _theta_recursive(m - 1, cs)
        if total is None:
            return None
        total = total * (-(m - 1))
        for j in range(len(cs)):
            lowered = _canonical(cs[:j] + (cs[j] - 1,) + cs[j + 1:])
            sub = _theta_recursive(m - 1, lowered)
            if sub is None:
                return None
            total = total + sub
        return total
    if not cs:
        return rat(-1, 24)
    # m == 1 with some exponent >= 2: no rule fires
    return None
