"""Series-core unit tests: frozen examples plus property checks."""

import pytest
from hypothesis import given, settings, strategies as st

from gw1.rational import rat
from gw1.series import (
    NotAUnitError,
    OrderMismatchError,
    QSeries,
    SeriesDomainError,
    TPoly,
    TruncationError,
    WSeries,
    w_exponential_of,
    wt_exponential,
)


def qs(scalars, order):
    return QSeries.from_scalars(scalars, order)


# ---------------------------------------------------------------------------
# arithmetic


def test_mul_difference_of_squares():
    a = qs([1, 1], 2)
    b = qs([1, -1], 2)
    assert a * b == qs([1, 0, -1], 2)


def test_mul_unit_law():
    a = QSeries([TPoly([1, 2]), TPoly([0, 0, rat(1, 3)]), TPoly([5])])
    assert a * QSeries.one(2) == a


def test_mul_truncates():
    a = qs([1, 120], 1)
    assert a * a == qs([1, 240], 1)


def test_order_mismatch_rejected():
    with pytest.raises(OrderMismatchError):
        qs([1], 2) * qs([1], 3)
    with pytest.raises(OrderMismatchError):
        qs([1], 2) + qs([1], 3)


def test_inverse_of_one():
    assert QSeries.one(4).inverse() == QSeries.one(4)


def test_inverse_geometric():
    assert qs([1, 1], 3).inverse() == qs([1, -1, 1, -1], 3)
    assert qs([1, 120], 2).inverse() == qs([1, -120, 14400], 2)


def test_inverse_needs_constant_unit():
    with pytest.raises(NotAUnitError):
        qs([0, 1], 2).inverse()
    with pytest.raises(NotAUnitError):
        QSeries([TPoly([1, 1]), TPoly([0])]).inverse()  # t in the q^0 slot


# ---------------------------------------------------------------------------
# log / exp / derivative


def test_log_of_one_and_exp_of_zero():
    assert QSeries.one(3).log() == QSeries.zero(3)
    assert QSeries.zero(3).exp() == QSeries.one(3)


def test_log_mercator():
    assert qs([1, 1], 3).log() == qs([0, 1, rat(-1, 2), rat(1, 3)], 3)


def test_log_exp_preconditions():
    with pytest.raises(SeriesDomainError):
        qs([2, 1], 2).log()
    with pytest.raises(SeriesDomainError):
        qs([1, 1], 2).exp()


def test_ddt_basics():
    t = QSeries([TPoly([0, 1]), TPoly([0])])
    assert t.d_dt() == QSeries.one(1)
    q3 = qs([0, 0, 0, 1], 3)
    assert q3.d_dt() == qs([0, 0, 0, 3], 3)
    tq = QSeries([TPoly([0]), TPoly([0, 1])])
    assert tq.d_dt() == QSeries([TPoly([0]), TPoly([1, 1])])


# ---------------------------------------------------------------------------
# reversion / substitution


def test_revert_identity():
    assert QSeries.one(4).revert_unit() == QSeries.one(4)


def test_revert_example():
    assert qs([1, 1, 0], 2).revert_unit() == qs([1, -1, 2], 2)


def test_revert_preconditions():
    with pytest.raises(SeriesDomainError):
        qs([2, 1], 2).revert_unit()
    with pytest.raises(SeriesDomainError):
        QSeries([TPoly([1]), TPoly([0, 1]), TPoly([0])]).revert_unit()


def test_substitute_monomials():
    q = qs([0, 1], 3)
    assert q.substitute_q(QSeries.one(3)) == q
    q2 = qs([0, 0, 1, 0, 0], 4)
    assert q2.substitute_q(qs([1, 1], 4)) == qs([0, 0, 1, 2, 1], 4)


def test_substitute_rejects_t():
    with pytest.raises(SeriesDomainError):
        QSeries([TPoly([0, 1]), TPoly([0])]).substitute_q(QSeries.one(1))


def test_revert_substitute_round_trip():
    u = qs([1, 3, rat(-1, 2), 7], 3)
    v = u.revert_unit()
    f = qs([2, rat(5, 3), 0, -4], 3)
    assert f.substitute_q(u).substitute_q(v) == f


# ---------------------------------------------------------------------------
# w-layer


def test_ws_mul_inverse_pair():
    one_plus = WSeries([QSeries.one(1), QSeries.one(1)])
    one_minus = WSeries([QSeries.one(1), -QSeries.one(1)])
    assert one_plus * one_minus == WSeries.one(1, 1)


def test_ws_log_of_one():
    assert WSeries.one(3, 2).log() == WSeries.zero(3, 2)


def test_ws_log_mercator_in_w2():
    zero, one = QSeries.zero(0), QSeries.one(0)
    a = WSeries([one, zero, one, zero, zero])  # 1 + w^2 mod w^5
    expected = WSeries([zero, zero, one, zero, one.scale(rat(-1, 2))])
    assert a.log() == expected


def test_ws_log_precondition():
    with pytest.raises(SeriesDomainError):
        WSeries([qs([2], 0), qs([1], 0)]).log()


def test_wt_exponential():
    assert wt_exponential(1, 0, 2) == WSeries([QSeries.one(2)])
    got = wt_exponential(-1, 2, 0)
    assert got.coefficient(0) == QSeries.one(0)
    assert got.coefficient(1) == QSeries([TPoly([0, -1])])
    assert got.coefficient(2) == QSeries([TPoly([0, 0, rat(1, 2)])])
    assert wt_exponential(1, 3, 2) * wt_exponential(-1, 3, 2) == WSeries.one(3, 2)


def test_w_exponential_of():
    g = qs([0, 1], 3)
    got = w_exponential_of(g, 2)
    assert got.coefficient(0) == QSeries.one(3)
    assert got.coefficient(1) == g
    assert got.coefficient(2) == (g * g).scale(rat(1, 2))


def test_w_coefficient_extraction():
    assert WSeries.one(2, 1).coefficient(0) == QSeries.one(1)
    w2 = WSeries([QSeries.zero(0), QSeries.zero(0), QSeries.one(0)])
    assert w2.coefficient(2) == QSeries.one(0)
    with pytest.raises(TruncationError):
        w2.coefficient(3)


def test_ws_ring_laws_random():
    import random

    rng = random.Random(7)

    def random_ws(worder=3, qorder=3):
        return WSeries([
            QSeries([TPoly([rat(rng.randint(-5, 5), rng.randint(1, 4))
                            for _ in range(rng.randint(0, 2))])
                     for _ in range(qorder + 1)])
            for _ in range(worder + 1)])

    for _ in range(8):
        a, b, c = random_ws(), random_ws(), random_ws()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert (a + b) * c == a * c + b * c
        assert a * WSeries.one(3, 3) == a


# ---------------------------------------------------------------------------
# serialization


def test_qseries_json_round_trip():
    a = QSeries([TPoly([rat(1, 2), 3]), TPoly([-2]), TPoly([0, 0, rat(-7, 5)])])
    assert QSeries.from_json_obj(a.to_json_obj()) == a
    assert a.to_json_obj() == [["1/2", "3"], ["-2"], ["0", "0", "-7/5"]]


# ---------------------------------------------------------------------------
# properties


scalars = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def tpolys(max_deg=2):
    return st.lists(scalars, max_size=max_deg + 1).map(TPoly)


def qseries(order=5):
    return st.lists(tpolys(), min_size=order + 1, max_size=order + 1).map(QSeries)


@settings(max_examples=30, deadline=None)
@given(qseries(), qseries(), qseries())
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=30, deadline=None)
@given(qseries(), qseries())
def test_leibniz(a, b):
    assert (a * b).d_dt() == a.d_dt() * b + a * b.d_dt()


@settings(max_examples=25, deadline=None)
@given(st.lists(scalars, min_size=5, max_size=5))
def test_exp_log_round_trip(tail):
    x = QSeries.from_scalars([0] + tail, 5)
    assert x.exp().log() == x


@settings(max_examples=25, deadline=None)
@given(st.lists(scalars, min_size=5, max_size=5), st.lists(scalars, min_size=5, max_size=5))
def test_log_turns_product_into_sum(ta, tb):
    a = QSeries.from_scalars([1] + ta, 5)
    b = QSeries.from_scalars([1] + tb, 5)
    assert (a * b).log() == a.log() + b.log()


@settings(max_examples=25, deadline=None)
@given(st.lists(scalars, min_size=4, max_size=4))
def test_reversion_round_trip(tail):
    u = QSeries.from_scalars([1] + tail, 4)
    v = u.revert_unit()
    q = QSeries.from_scalars([0, 1], 4)
    assert (q * u).substitute_q(v) == q
