"""Standard-minus-reduced genus-one evaluators over genus-zero input tables.

The genus-zero data enters as an `InvariantTable`: a map from
(m, marked-point subset J, power p) to an exact rational, in one of two
flavors depending on whether the power grading uses the plain or the
untwisted cotangent classes at the common node.  The evaluators combine
table slices with the coefficients from `taut` / `theta`:

* `diff_thm1`  -- plain-flavor table, bracket coefficients;
* `diff_thm2`  -- untwisted-flavor table, theta coefficients;
* `eta_from_tilde` -- the change of basis between the two flavors;
* `diff_descendant_free` -- the closed specialization when no descendant
  exponents are present.

Missing table entries are an ingestion error by default; pass
``assume_zero=True`` for sparse semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional

from .rational import Rational, ZERO, factorial, multinomial, rat, rat_from_str, rat_to_str
from .taut import bracket
from .theta import theta_closed

ETA = "eta"
ETA_TILDE = "eta_tilde"


class ValidationError(ValueError):
    """Problem or table violates its documented invariants."""


class MissingEntryError(KeyError):
    """A required genus-zero table entry is absent (and assume-zero is off)."""


@dataclass(frozen=True)
class DescendantProblem:
    """Shape of one evaluation: target dimension, marked points, exponents.

    ``n`` is the complex dimension of the target (real dimension 2n),
    ``c`` the k descendant exponents, ``mu_deg`` the real cohomology
    degrees of the k insertions.  ``c1_beta`` is the pairing of the first
    Chern class with the curve class; when supplied it gates evaluation
    on the genus-one dimension constraint
    sum(2c_j + mu_deg_j) == 2*(c1_beta + k).
    """

    n: int
    k: int
    c: tuple = ()
    mu_deg: tuple = ()
    c1_beta: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        object.__setattr__(self, "mu_deg", tuple(int(x) for x in self.mu_deg))
        if self.k < 0 or self.n < 0:
            raise ValidationError("n and k must be nonnegative")
        if len(self.c) != self.k or len(self.mu_deg) != self.k:
            raise ValidationError("c and mu_deg must list one value per marked point")
        if any(x < 0 for x in self.c) or any(x < 0 for x in self.mu_deg):
            raise ValidationError("descendant powers and degrees are nonnegative")
        if self.c1_beta is not None:
            total = sum(2 * cj + dj for cj, dj in zip(self.c, self.mu_deg))
            expected = 2 * (self.c1_beta + self.k)
            if total != expected:
                raise ValidationError(
                    f"dimension gate failed: insertion degree {total} != {expected}")

    def p_J(self, J) -> int:
        return sum(self.c[j - 1] for j in J)

    def marked_points(self) -> range:
        return range(1, self.k + 1)


def d_mJ(problem: DescendantProblem, m: int, J) -> int:
    """Top power index for the (m, J) slice: n - 2m - |J| + sum of c over J."""
    return problem.n - 2 * m - len(J) + problem.p_J(J)


def subsets(points) -> Iterator[tuple]:
    pts = tuple(points)
    for size in range(len(pts) + 1):
        yield from combinations(pts, size)


@dataclass
class InvariantTable:
    """Sparse map (m, J, p) -> rational for one flavor of node classes."""

    flavor: str
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.flavor not in (ETA, ETA_TILDE):
            raise ValidationError(f"unknown flavor {self.flavor!r}")
        self.entries = {
            (int(m), tuple(int(j) for j in J), int(p)): Rational(v)
            for (m, J, p), v in self.entries.items()
        }

    @property
    def m_max(self) -> int:
        return max((m for m, _, _ in self.entries), default=0)

    def lookup(self, m: int, J: tuple, p: int, assume_zero: bool = False) -> Rational:
        key = (m, tuple(J), p)
        if key in self.entries:
            return self.entries[key]
        if assume_zero:
            return ZERO
        raise MissingEntryError(
            f"no entry for m={m}, J={list(J)}, p={p}; pass assume-zero for sparse tables")

    def validate_against(self, problem: DescendantProblem):
        """Reject keys outside the problem's marked points or power ranges."""
        points = set(problem.marked_points())
        for m, J, p in self.entries:
            if m < 1:
                raise ValidationError(f"entry with m={m}; m must be >= 1")
            if len(set(J)) != len(J) or not set(J) <= points:
                raise ValidationError(f"entry subset {list(J)} not within [1..{problem.k}]")
            if tuple(sorted(J)) != J:
                raise ValidationError(f"entry subset {list(J)} must be sorted")
            if p < 0 or p > d_mJ(problem, m, J):
                raise ValidationError(
                    f"entry power p={p} outside [0, {d_mJ(problem, m, J)}] for m={m}, J={list(J)}")


def load_problem_table(obj: dict):
    """Decode the JSON schema into a validated (problem, table) pair."""
    try:
        problem = DescendantProblem(
            n=int(obj["n"]), k=int(obj["k"]),
            c=obj.get("c", []), mu_deg=obj.get("mu_deg", []),
            c1_beta=(None if obj.get("c1_beta") is None else int(obj["c1_beta"])))
        entries = {}
        for item in obj.get("entries", []):
            key = (int(item["m"]), tuple(int(j) for j in item["J"]), int(item["p"]))
            if key in entries:
                raise ValidationError(f"duplicate entry for {key}")
            entries[key] = rat_from_str(item["value"]) if isinstance(item["value"], str) \
                else Rational(item["value"])
        table = InvariantTable(flavor=obj["flavor"], entries=entries)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed input: {exc}") from exc
    table.validate_against(problem)
    return problem, table


def dump_problem_table(problem: DescendantProblem, table: InvariantTable) -> dict:
    return {
        "n": problem.n, "k": problem.k,
        "c": list(problem.c), "mu_deg": list(problem.mu_deg),
        "c1_beta": problem.c1_beta, "flavor": table.flavor,
        "entries": [
            {"m": m, "J": list(J), "p": p, "value": rat_to_str(v)}
            for (m, J, p), v in sorted(table.entries.items())
        ],
    }


def _block_weight(c_of, block) -> Rational:
    """Multinomial weight of one labeled block of marked points."""
    if not block:
        return rat(1)
    top = len(block) - 1
    parts = [c_of(j) for j in block]
    return multinomial(top, parts + [top - sum(parts)])


def eta_from_tilde(problem: DescendantProblem, table: InvariantTable,
                   assume_zero: bool = False) -> InvariantTable:
    """Change of basis from the untwisted-flavor table to the plain flavor.

    Each target entry (m, J, p) collects, over supersets J' of J inside
    the marked points and over assignments of J' - J to m labeled blocks,
    the product of block multinomials times the source entry at
    (m, J', p - |J' - J| + sum of c over J' - J); a negative shifted
    power contributes nothing.
    """
    if table.flavor != ETA_TILDE:
        raise ValidationError("eta_from_tilde needs an eta_tilde table")
    c_of = lambda j: problem.c[j - 1]
    out = {}
    for m in range(1, table.m_max + 1):
        for J in subsets(problem.marked_points()):
            top = d_mJ(problem, m, J)
            if top < 0:
                continue
            others = tuple(j for j in problem.marked_points() if j not in J)
            for p in range(top + 1):
                total = ZERO
                for extra in subsets(others):
                    p_src = p - len(extra) + sum(c_of(j) for j in extra)
                    if p_src < 0:
                        continue
                    for assign in product(range(m), repeat=len(extra)):
                        blocks = [[] for _ in range(m)]
                        for j, b in zip(extra, assign):
                            blocks[b].append(j)
                        weight = rat(1)
                        for block in blocks:
                            weight = weight * _block_weight(c_of, block)
                            if not weight:
                                break
                        if not weight:
                            continue
                        J_src = tuple(sorted(J + extra))
                        total = total + weight * table.lookup(m, J_src, p_src, assume_zero)
                out[(m, J, p)] = total
    return InvariantTable(flavor=ETA, entries=out)


def _slice_sum(problem, table, m, J, assume_zero) -> Rational:
    total = ZERO
    for p in range(d_mJ(problem, m, J) + 1):
        total = total + table.lookup(m, J, p, assume_zero)
    return total


def diff_thm1(problem: DescendantProblem, table: InvariantTable,
              assume_zero: bool = False, provenance: Optional[list] = None) -> Rational:
    """Difference of the two genus-one invariants from a plain-flavor table.

    Sums bracket coefficients against power-summed table slices; the
    infinite group-count sum truncates at the table's m_max.
    """
    if table.flavor != ETA:
        raise ValidationError("diff_thm1 needs an eta table")
    total = ZERO
    for m in range(1, table.m_max + 1):
        for J in subsets(problem.marked_points()):
            if d_mJ(problem, m, J) < 0:
                continue
            ctil = m + len(J) - problem.p_J(J)
            coeff = bracket(m, [problem.c[j - 1] for j in J], ctil)
            if ctil % 2:
                coeff = -coeff
            part = _slice_sum(problem, table, m, J, assume_zero)
            if provenance is not None and coeff:
                provenance.append((m, J, coeff, part))
            total = total + coeff * part
    return total


def diff_thm2(problem: DescendantProblem, table: InvariantTable,
              assume_zero: bool = False, provenance: Optional[list] = None) -> Rational:
    """Same difference from an untwisted-flavor table, via theta coefficients."""
    if table.flavor != ETA_TILDE:
        raise ValidationError("diff_thm2 needs an eta_tilde table")
    total = ZERO
    for m in range(1, table.m_max + 1):
        for J in subsets(problem.marked_points()):
            if d_mJ(problem, m, J) < 0:
                continue
            coeff = theta_closed(m, [problem.c[j - 1] for j in J])
            part = _slice_sum(problem, table, m, J, assume_zero)
            if provenance is not None and coeff:
                provenance.append((m, J, coeff, part))
            total = total + coeff * part
    return total


def diff_descendant_free(problem: DescendantProblem, table: InvariantTable,
                         assume_zero: bool = False,
                         provenance: Optional[list] = None) -> Rational:
    """Descendant-free specialization: only empty subsets survive.

    Requires every descendant exponent to be zero.  Equals
    (1/24) * sum over m of (-1)^m (m-1)! * (power-summed (m, empty) slice),
    with m capped by both n/2 and the table's m_max (matching the
    truncation convention of the theorem evaluators).
    """
    if any(problem.c):
        raise ValidationError("descendant-free formula needs all exponents zero")
    if table.flavor != ETA_TILDE:
        raise ValidationError("the descendant-free formula reads an eta_tilde table")
    total = ZERO
    for m in range(1, min(problem.n // 2, table.m_max) + 1):
        coeff = factorial(m - 1) / 24
        if m % 2:
            coeff = -coeff
        part = _slice_sum(problem, table, m, (), assume_zero)
        if provenance is not None and coeff:
            provenance.append((m, (), coeff, part))
        total = total + coeff * part
    return total
