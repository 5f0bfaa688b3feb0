"""Hypersurface pipeline tests: spot values, unit checks, identities."""

import pytest

from gw1.hypersurface import (
    ConsistencyError,
    HypersurfaceConfig,
    build_mirror_data,
    build_R,
    chern_weight,
    extract_invariants,
    f1_difference,
    f1_reduced,
    f1_standard,
    genus_one_tables,
    hypergeometric_w_row,
)
from gw1.rational import rat
from gw1.series import QSeries, TPoly, wt_exponential


@pytest.fixture(scope="module")
def quintic():
    return build_mirror_data(HypersurfaceConfig(n=5, qorder=6))


def test_config_validation():
    with pytest.raises(ValueError):
        HypersurfaceConfig(n=2, qorder=4)
    with pytest.raises(ValueError):
        HypersurfaceConfig(n=5, qorder=0)
    with pytest.raises(ValueError):
        HypersurfaceConfig(n=5, qorder=4, worder=5)
    assert HypersurfaceConfig(n=7, qorder=3).worder == 6


def test_leading_row_spot_values(quintic):
    i00 = quintic.I0q[0].scalar_coefficients()
    assert i00[0] == 1
    assert i00[1] == 120          # 5!/1
    assert i00[2] == 113400       # 10!/(2!)^5


def test_degree_zero_row_is_plain_exponential():
    cfg = HypersurfaceConfig(n=5, qorder=3)
    R = build_R(cfg)
    expected = wt_exponential(1, cfg.worder, cfg.qorder)
    for a in range(cfg.worder + 1):
        assert R.coefficient(a).coefficient(0) == expected.coefficient(a).coefficient(0)


def test_hypergeometric_w_row_degree_one():
    # prod(5w+r, r=1..5) / (w+1)^5 at n=5, d=1: constant term 120,
    # w-coefficient 120*(5/1+5/2+5/3+5/4+5/5) - 120*5 = 770
    row = hypergeometric_w_row(5, 1, 2)
    assert row[0] == 120
    assert row[1] == 770


def test_second_solution_carries_t(quintic):
    i00, i01 = quintic.I0q[0], quintic.I0q[1]
    t = QSeries([TPoly([0, 1])] + [TPoly([0])] * i00.order)
    assert (i01 - t * i00).is_t_free()


def test_mirror_map_spot_value(quintic):
    g = quintic.T_minus_t.scalar_coefficients()
    assert g[0] == 0
    assert g[1] == 770
    assert quintic.Qchange.scalar_coefficients()[0] == 1


def test_diagonals_are_units(quintic):
    for diag in quintic.Ipp:
        assert diag.is_t_free()
        assert diag.constant_term() == TPoly.const(1)


def test_z_series_shape(quintic):
    assert len(quintic.Z) == 5 - 2  # r = 0..n-3
    for z in quintic.Z:
        assert z.constant_term() == TPoly.const(0)
        assert z.is_t_free()


def test_log_slices_shape(quintic):
    assert sorted(quintic.DlnRbar) == [2, 3]
    for row in quintic.DlnRbar.values():
        assert row.is_t_free()
        assert not row.constant_term()


def test_chern_weight_values():
    assert chern_weight(5, 0) == 1
    assert chern_weight(7, 1) == 0
    assert chern_weight(5, 2) == 10      # quintic second Chern number / x^2
    assert chern_weight(5, 3) == -40     # gives Euler characteristic -200
    with pytest.raises(ValueError):
        chern_weight(5, 4)


def test_chern_weight_against_series_oracle():
    # independent route: expand (1+w)^n / (1+nw) with the series engine,
    # reusing the q-layer as a plain one-variable ring
    for n in range(3, 9):
        binom_row = [rat(1)]
        for a in range(1, n - 1):
            binom_row.append(binom_row[-1] * (n - a + 1) / a)
        numer = QSeries.from_scalars(binom_row, n - 2)
        denom = QSeries.from_scalars([1, n], n - 2)
        expansion = (numer * denom.inverse()).scalar_coefficients()
        for q in range(n - 1):
            assert chern_weight(n, q) == expansion[q], (n, q)


def test_standard_series_quintic_leading_value(quintic):
    # hand expansion of the assembled formula at first order:
    # (25/12)*770 - (25/3)*120 + 3125/12 - 2*120 - (1/2)*770 = 2875/12
    series = f1_standard(quintic)
    assert extract_invariants(series, 1) == [rat(2875, 12)]


def test_reduced_equals_standard_when_no_correction():
    mirror = build_mirror_data(HypersurfaceConfig(n=3, qorder=5))
    assert f1_reduced(mirror) == f1_standard(mirror)
    assert not f1_difference(mirror)


def test_quartic_has_single_correction_term():
    mirror = build_mirror_data(HypersurfaceConfig(n=4, qorder=4))
    assert sorted(mirror.DlnRbar) == [2]
    assert chern_weight(4, 0) == 1
    diff = f1_difference(mirror)
    assert diff == (-mirror.DlnRbar[2].scale(rat(4, 24))).substitute_q(mirror.rev_unit)


def test_difference_routes_agree_n5_n6():
    for n in (5, 6):
        mirror = build_mirror_data(HypersurfaceConfig(n=n, qorder=6))
        f1_difference(mirror)  # raises RouteMismatchError on disagreement


def test_cancellation(quintic):
    assert f1_standard(quintic) - f1_reduced(quintic) == f1_difference(quintic)


def test_extract_invariants_contract():
    zero = QSeries.zero(4)
    assert extract_invariants(zero, 4) == [0, 0, 0, 0]
    series = QSeries.from_scalars([0, 1, 2], 3)
    assert extract_invariants(series, 2) == [1, 2]
    with pytest.raises(ConsistencyError):
        extract_invariants(QSeries.from_scalars([1, 1], 2), 2)
    with pytest.raises(ValueError):
        extract_invariants(series, 9)


def test_tables_are_consistent():
    tables = genus_one_tables(HypersurfaceConfig(n=6, qorder=4))
    assert len(tables.standard) == 4
    for s, r, d in zip(tables.standard, tables.reduced, tables.difference):
        assert s - r == d
