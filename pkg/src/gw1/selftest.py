"""Invariant suites shared by `gw1 selftest` and the acceptance tests.

Each suite is a function raising AssertionError on the first violated
identity; `run_selftest` executes all of them at desk scale and collects
pass/fail lines.  The acceptance test module drives the same functions at
the full documented parameter ranges.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, product

from .difference import (
    ETA_TILDE,
    DescendantProblem,
    InvariantTable,
    ValidationError,
    d_mJ,
    diff_descendant_free,
    diff_thm1,
    diff_thm2,
    eta_from_tilde,
    subsets,
)
from .hypersurface import (
    HypersurfaceConfig,
    build_mirror_data,
    f1_difference,
    f1_reduced,
    f1_standard,
)
from .rational import Rational, factorial, rat
from .series import QSeries, TPoly, wt_exponential
from .taut import bracket, bracket_closed_psitop, dilaton_step
from .theta import theta_closed, theta_recursive


def _random_qseries(rng, order, tmax=2):
    rows = []
    for _ in range(order + 1):
        rows.append(TPoly([rat(rng.randint(-6, 6), rng.randint(1, 4))
                           for _ in range(rng.randint(0, tmax + 1))]))
    return QSeries(rows)


def check_series_ring_laws(order=6, rounds=12, seed=11):
    rng = random.Random(seed)
    for _ in range(rounds):
        a = _random_qseries(rng, order)
        b = _random_qseries(rng, order)
        c = _random_qseries(rng, order)
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * QSeries.one(order) == a
        # derivative is a derivation
        assert (a * b).d_dt() == a.d_dt() * b + a * b.d_dt()


def check_series_log_exp(order=8, rounds=10, seed=12):
    rng = random.Random(seed)
    for _ in range(rounds):
        x = _random_qseries(rng, order)
        x = QSeries([TPoly.const(0)] + list(x.coefficients[1:]))
        a = x.exp()
        assert a.log() == x
        b = (1 + _random_qseries(rng, order).q_shift(1))
        assert (a * b).log() == a.log() + b.log()
        assert a * a.inverse() == QSeries.one(order)


def check_series_reversion(order=8, rounds=10, seed=13):
    rng = random.Random(seed)
    q = QSeries.from_scalars([0, 1], order)
    for _ in range(rounds):
        tail = [rat(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(order)]
        u = QSeries.from_scalars([1] + tail, order)
        v = u.revert_unit()
        # defining property: the forward image q*u(q), rewritten through
        # q = Q*v(Q), collapses to the plain variable
        assert (q * u).substitute_q(v) == q
        # round trip on a random series
        f = QSeries.from_scalars(
            [rat(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order + 1)],
            order)
        assert f.substitute_q(v).substitute_q(u) == f
        assert f.substitute_q(u).substitute_q(v) == f


def check_bracket_closed_form(i_max=6, j_max=6):
    for i in range(1, i_max + 1):
        for j in range(j_max + 1):
            assert bracket(i, [0] * j, i + j) == bracket_closed_psitop(i, j), \
                (i, j)


def _exponent_multisets(size_max, value_max):
    for size in range(size_max + 1):
        yield from combinations_with_replacement(range(value_max + 1), size)


def check_bracket_dilaton(i_max=5, size_max=5, value_max=5):
    for i in range(i_max + 1):
        for cs in _exponent_multisets(size_max, value_max):
            if 1 not in cs or i + len(cs) < 2:
                continue
            for tilde_c in range(i + len(cs) + 1):
                assert bracket(i, cs, tilde_c) == dilaton_step(i, cs, tilde_c), \
                    (i, cs, tilde_c)


def check_bracket_symmetry_and_vanishing(i_max=4, size_max=4, value_max=4, seed=14):
    rng = random.Random(seed)
    for i in range(i_max + 1):
        for cs in _exponent_multisets(size_max, value_max):
            for tilde_c in range(i + len(cs) + 1):
                if tilde_c + sum(cs) != i + len(cs):
                    assert bracket(i, cs, tilde_c) == 0, (i, cs, tilde_c)
                elif len(cs) > 1:
                    shuffled = list(cs)
                    rng.shuffle(shuffled)
                    assert bracket(i, shuffled, tilde_c) == bracket(i, cs, tilde_c)


def check_theta_special_values(m_max=5, size_max=4, value_max=4):
    for m in range(1, m_max + 1):
        want = factorial(m - 1) / 24
        if m % 2:
            want = -want
        assert theta_closed(m, []) == want, m
        for cs in _exponent_multisets(size_max, value_max):
            if cs and sum(cs) < len(cs):
                assert theta_closed(m, cs) == 0, (m, cs)


def check_theta_two_paths(m_max=4, size_max=4, value_max=4):
    applicable = 0
    for m in range(1, m_max + 1):
        for cs in _exponent_multisets(size_max, value_max):
            got = theta_recursive(m, cs)
            if got is None:
                continue
            applicable += 1
            assert got == theta_closed(m, cs), (m, cs)
    assert applicable > 0


def check_theta_symmetry(seed=15, rounds=40):
    rng = random.Random(seed)
    for _ in range(rounds):
        m = rng.randint(1, 4)
        cs = [rng.randint(0, 4) for _ in range(rng.randint(0, 4))]
        shuffled = list(cs)
        rng.shuffle(shuffled)
        assert theta_closed(m, shuffled) == theta_closed(m, cs)


def random_problem_table(rng, k_max=3, m_max=3, density=0.8):
    """A random untwisted-flavor table with a compatible problem shape."""
    k = rng.randint(0, k_max)
    problem = DescendantProblem(
        n=rng.randint(4, 9), k=k,
        c=[rng.randint(0, 2) for _ in range(k)],
        mu_deg=[2 * rng.randint(0, 2) for _ in range(k)])
    entries = {}
    for m in range(1, rng.randint(1, m_max) + 1):
        for J in subsets(problem.marked_points()):
            for p in range(d_mJ(problem, m, J) + 1):
                if rng.random() < density:
                    entries[(m, J, p)] = rat(rng.randint(-9, 9), rng.randint(1, 9))
    return problem, InvariantTable(flavor=ETA_TILDE, entries=entries)


def check_two_theorem_equivalence(tables=100, seed=16):
    rng = random.Random(seed)
    for _ in range(tables):
        problem, tilde = random_problem_table(rng)
        direct = diff_thm2(problem, tilde, assume_zero=True)
        via_transform = diff_thm1(
            problem, eta_from_tilde(problem, tilde, assume_zero=True),
            assume_zero=True)
        assert direct == via_transform, problem


def check_descendant_free_matches(tables=40, seed=17):
    rng = random.Random(seed)
    for _ in range(tables):
        problem, tilde = random_problem_table(rng)
        if any(problem.c):
            # rerun the same table shape without descendants, dropping
            # entries that fall outside the shrunken power ranges
            problem = DescendantProblem(n=problem.n, k=problem.k,
                                        c=[0] * problem.k, mu_deg=problem.mu_deg)
            entries = {key: v for key, v in tilde.entries.items()
                       if key[2] <= d_mJ(problem, key[0], key[1])}
            tilde = InvariantTable(flavor=ETA_TILDE, entries=entries)
        assert diff_descendant_free(problem, tilde, assume_zero=True) \
            == diff_thm2(problem, tilde, assume_zero=True), problem


def check_evaluator_linearity(tables=20, seed=18):
    rng = random.Random(seed)
    for _ in range(tables):
        problem, t1 = random_problem_table(rng)
        _, t2 = random_problem_table(rng)
        t2 = InvariantTable(flavor=ETA_TILDE, entries={
            key: v for key, v in t2.entries.items()
            if set(key[1]) <= set(problem.marked_points())
            and key[2] <= d_mJ(problem, key[0], key[1])})
        a, b = rat(rng.randint(-5, 5)), rat(rng.randint(-5, 5))
        keys = set(t1.entries) | set(t2.entries)
        combo = InvariantTable(flavor=ETA_TILDE, entries={
            key: a * t1.entries.get(key, rat(0)) + b * t2.entries.get(key, rat(0))
            for key in keys})
        lhs = diff_thm2(problem, combo, assume_zero=True)
        rhs = a * diff_thm2(problem, t1, assume_zero=True) \
            + b * diff_thm2(problem, t2, assume_zero=True)
        assert lhs == rhs


def check_dimension_gate():
    try:
        DescendantProblem(n=5, k=1, c=[1], mu_deg=[2], c1_beta=3)
    except ValidationError:
        pass
    else:
        raise AssertionError("dimension gate accepted an inconsistent problem")
    DescendantProblem(n=5, k=1, c=[1], mu_deg=[4], c1_beta=2)  # balanced


def check_mirror_identity_shape(n_min=3, n_max=8, qorder=6):
    for n in range(n_min, n_max + 1):
        # build_Z raises MirrorIdentityError if the shape fails
        build_mirror_data(HypersurfaceConfig(n=n, qorder=qorder))


def check_diagonal_units_and_tfree(n_min=3, n_max=10, qorder=8):
    for n in range(n_min, n_max + 1):
        mirror = build_mirror_data(HypersurfaceConfig(n=n, qorder=qorder))
        for p, diag in enumerate(mirror.Ipp):
            assert diag.is_t_free() and diag.constant_term() == TPoly.const(1), (n, p)
        assert mirror.T_minus_t.is_t_free()
        for p, row in mirror.DlnRbar.items():
            assert row.is_t_free(), (n, p)
            assert not row.constant_term(), (n, p)


def check_z_product_identity(ns=(5, 6, 7, 8), qorder=6):
    for n in ns:
        # f1_difference raises RouteMismatchError when the routes disagree
        f1_difference(build_mirror_data(HypersurfaceConfig(n=n, qorder=qorder)))


def check_cancellation_identity(n_min=3, n_max=8, qorder=6):
    for n in range(n_min, n_max + 1):
        mirror = build_mirror_data(HypersurfaceConfig(n=n, qorder=qorder))
        diff = f1_standard(mirror) - f1_reduced(mirror)
        assert diff == f1_difference(mirror), n


def check_hypergeometric_spot_values():
    mirror = build_mirror_data(HypersurfaceConfig(n=5, qorder=2))
    i00 = mirror.I0q[0].scalar_coefficients()
    assert i00[1] == 120
    assert i00[2] == 113400
    assert mirror.T_minus_t.scalar_coefficients()[1] == 770


SUITES = (
    ("series-ring-laws", check_series_ring_laws),
    ("series-log-exp", check_series_log_exp),
    ("series-reversion", check_series_reversion),
    ("bracket-closed-form", check_bracket_closed_form),
    ("bracket-dilaton", check_bracket_dilaton),
    ("bracket-symmetry-vanishing", check_bracket_symmetry_and_vanishing),
    ("theta-special-values", check_theta_special_values),
    ("theta-two-paths", check_theta_two_paths),
    ("theta-symmetry", check_theta_symmetry),
    ("two-theorem-equivalence", check_two_theorem_equivalence),
    ("descendant-free", check_descendant_free_matches),
    ("evaluator-linearity", check_evaluator_linearity),
    ("dimension-gate", check_dimension_gate),
    ("mirror-identity-shape", lambda: check_mirror_identity_shape(3, 6, 4)),
    ("diagonal-units", lambda: check_diagonal_units_and_tfree(3, 7, 4)),
    ("z-product-identity", lambda: check_z_product_identity((5, 6), 4)),
    ("cancellation-identity", lambda: check_cancellation_identity(3, 6, 4)),
    ("hypergeometric-spot-values", check_hypergeometric_spot_values),
)


def run_selftest():
    """Run every suite at desk scale; returns a list of (name, ok, detail)."""
    results = []
    for name, fn in SUITES:
        try:
            fn()
        except Exception as exc:  # a failed identity, whatever its type
            results.append((name, False, f"{type(exc).__name__}: {exc}"))
        else:
            results.append((name, True, ""))
    return results
