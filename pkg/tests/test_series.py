from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdpoly.series import (
    NotAUnit, QSeries, QTSeries, SeriesError, SeriesRing, TJet, WPoly, geom, inv,
    jet_at_1, jet_mul, subst_qt,
)

from . import strategies as S


def q(order, terms, wcap=0):
    return QSeries.from_terms(order, terms, wcap)


def qt(order, terms, wcap=0):
    return QTSeries.from_terms(order, terms, wcap)


# -- addition, multiplication -------------------------------------------------

def test_add_cancels():
    assert q(4, {0: 1, 1: 1}) + q(4, {0: 1, 1: -1}) == q(4, {0: 2})


def test_add_zero_identity():
    f = q(4, {1: 3, 3: Fraction(1, 2)})
    assert f + QSeries.zero(4) == f


def test_add_keeps_w_grading():
    got = q(3, {(1, 1): 1}, 1) + q(3, {(1, 0): 1}, 1)
    assert got.terms() == {(1, 0): 1, (1, 1): 1}
    assert got[1] == WPoly({0: 1, 1: 1})


def test_mul_difference_of_squares():
    assert q(4, {0: 1, 1: 1}) * q(4, {0: 1, 1: -1}) == q(4, {0: 1, 2: -1})


def test_mul_geometric_identity():
    assert q(4, {0: 1, 1: -1}) * q(4, dict.fromkeys(range(5), 1)) == q(4, {0: 1})


def test_mul_truncation_absorbs():
    assert (q(3, {2: 1}) * q(3, {3: 1})).is_zero()


def test_mismatched_orders_rejected():
    with pytest.raises(SeriesError):
        q(3, {0: 1}) + q(4, {0: 1})
    with pytest.raises(SeriesError):
        q(3, {0: 1}) * q(4, {0: 1})
    with pytest.raises(SeriesError):
        q(3, {0: 1}, 1) * q(3, {0: 1}, 2)


def test_fractional_coefficients_exact():
    a = q(5, {0: Fraction(1, 3), 2: Fraction(-2, 7)})
    assert (a * a).coeff(2) == Fraction(-4, 21)
    assert (a.scale(3) - a.scale(3)).is_zero()


# -- inverse, geom -----------------------------------------------------------------

def test_inv_examples():
    assert inv(q(3, {0: 1, 1: -1})) == q(3, dict.fromkeys(range(4), 1))
    assert inv(q(6, {0: 1})) == q(6, {0: 1})
    assert inv(q(2, {0: 1, 1: -3})) == q(2, {0: 1, 1: 3, 2: 9})


def test_inv_not_a_unit():
    with pytest.raises(NotAUnit):
        inv(q(4, {1: 1}))
    with pytest.raises(NotAUnit):
        inv(q(4, {(0, 0): 1, (0, 1): 1}, 1))


def test_geom_examples():
    assert geom(2, 6) == q(6, {0: 1, 2: 1, 4: 1, 6: 1})
    assert geom(1, 3) == q(3, dict.fromkeys(range(4), 1))
    assert geom(7, 5) == q(5, {0: 1})
    with pytest.raises(SeriesError):
        geom(0, 5)


def test_division_by_one_minus_q_power_matches_inverse():
    a = q(20, {0: 2, 3: 1, 7: -5})
    for k in (1, 2, 5):
        for p in (1, 3):
            factor = QSeries.from_terms(20, {0: 1, k: -1})
            expected = a
            for _ in range(p):
                expected = expected * inv(factor)
            assert a.div_one_minus_q(k, p) == expected
            assert a.div_one_minus_q(k, p).mul_one_minus_q(k, p) == a


def test_coefficient_beyond_order_is_an_error():
    with pytest.raises(SeriesError):
        q(3, {0: 1}).coeff(4)


def test_at_w_substitutes():
    a = q(3, {(1, 0): 1, (1, 1): 2, (2, 2): 1}, 2)
    assert a.at_w(1) == q(3, {1: 3, 2: 1})
    assert a.at_w(Fraction(1, 2)) == q(3, {1: 2, 2: Fraction(1, 4)})


def test_ring_default_wcap():
    assert SeriesRing(12).wcap == 6
    assert SeriesRing(13).wcap == 7
    assert SeriesRing(12, w=1).wcap == 0


# -- jets and the t-substitution ---------------------------------------------------

def test_jet_of_t_squared():
    t = TJet.variable(5)
    one = q(5, {0: 1})
    assert jet_mul(t, t).components() == (one, one.scale(2), one)
    assert jet_mul(t, TJet.constant(one)) == t


def test_jet_of_geometric_in_qt():
    # 1/(1 - q t) at t = 1 + u is g/(1 - q g u) with g = 1/(1-q)
    order = 10
    g = inv(q(order, {0: 1, 1: -1}))
    qs = q(order, {1: 1})
    jet = TJet(g, qs * g * g, qs * qs * g * g * g)
    factor = TJet(q(order, {0: 1, 1: -1}), q(order, {1: -1}), QSeries.zero(order))
    assert jet_mul(jet, factor) == TJet.constant(q(order, {0: 1}))


def test_jet_mul_mismatched_orders():
    with pytest.raises(SeriesError):
        jet_mul(TJet.variable(3), TJet.variable(4))


def test_jet_at_1_examples():
    f0, f1, f2 = jet_at_1(qt(4, {(1, 1): 1, (2, 2): 1})).components()
    assert (f0, f1, f2) == (q(4, {1: 1, 2: 1}), q(4, {2: 1}), QSeries.zero(4))
    assert jet_at_1(qt(4, {(3, 3): 1})).f2 == q(4, {3: 1})
    assert jet_at_1(qt(4, {(1, 1): 1})).components() == (q(4, {1: 1}), QSeries.zero(4), QSeries.zero(4))


def test_jet_at_1_rejects_t0_row():
    with pytest.raises(SeriesError):
        jet_at_1(qt(4, {(2, 0): 1}))


def test_subst_qt_examples():
    assert subst_qt(qt(4, {(1, 1): 1})) == qt(4, {(2, 1): 1})
    assert subst_qt(qt(6, {(3, 2): 1})) == qt(6, {(5, 2): 1})
    assert subst_qt(qt(4, {(0, 0): 7})) == qt(4, {(0, 0): 7})


def test_qt_triangularity_enforced():
    with pytest.raises(SeriesError):
        qt(4, {(1, 2): 1})


def test_div_one_minus_qkt_round_trip():
    a = qt(12, {(1, 1): 1, (4, 2): -2, (6, 3): Fraction(1, 3)})
    b = a.div_one_minus_qkt(2, 3)
    factor = qt(12, {(0, 0): 1, (2, 1): -1})
    assert b * factor * factor * factor == a


def test_at_t1_sums_rows():
    a = qt(5, {(1, 1): 1, (3, 2): 2, (3, 1): 1})
    assert a.at_t1() == q(5, {1: 1, 3: 3})


# -- randomized ring laws --------------------------------------------------------------

LAWS = [
    (S.add_commutes, 2, False),
    (S.mul_commutes, 2, False),
    (S.mul_associates, 3, False),
    (S.mul_distributes, 3, False),
    (S.add_identity, 1, False),
    (S.add_inverse, 1, False),
    (S.inverse_round_trip, 1, True),
]


@pytest.mark.parametrize("law,arity,unit", LAWS, ids=[law[0].__name__ for law in LAWS])
def test_ring_law(law, arity, unit):
    @settings(max_examples=150, deadline=None)
    @given(S.series_tuples(count=arity, unit=unit))
    def run(s):
        assert law(s)

    run()


@settings(max_examples=100, deadline=None)
@given(S.series_tuples(count=2), st.integers(0, 64))
def test_truncation_is_a_ring_morphism(s, cut):
    a, b = s
    cut = min(cut, a.order)
    assert (a * b).truncate(cut) == a.truncate(cut) * b.truncate(cut)
    assert (a + b).truncate(cut) == a.truncate(cut) + b.truncate(cut)


@settings(max_examples=100, deadline=None)
@given(S.series_tuples(count=2), S.small_fractions)
def test_evaluation_at_w_is_a_ring_morphism(s, w):
    # lift to a cap large enough that the product loses nothing in w
    a, b = (QSeries.from_terms(x.order, x.terms(), 2 * x.wcap) for x in s)
    assert (a * b).at_w(w) == a.at_w(w) * b.at_w(w)


@settings(max_examples=100, deadline=None)
@given(S.qt_tuples(count=2), S.small_fractions)
def test_jet_at_1_is_linear(s, c):
    a, b = s
    a = a - QTSeries.from_series(a.row(0))
    b = b - QTSeries.from_series(b.row(0))
    assert jet_at_1(a + b.scale(c)) == jet_at_1(a) + TJet(*(x.scale(c) for x in jet_at_1(b).components()))


@settings(max_examples=100, deadline=None)
@given(S.qt_tuples(count=2))
def test_subst_qt_is_multiplicative(s):
    a, b = s
    assert subst_qt(a * b) == subst_qt(a) * subst_qt(b)
    assert subst_qt(a + b) == subst_qt(a) + subst_qt(b)
