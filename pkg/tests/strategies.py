"""Hypothesis strategies and algebraic laws shared by the series and acceptance tests."""

from fractions import Fraction

from hypothesis import strategies as st

from sdpoly.series import QSeries, QTSeries, inv

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=4),
)


@st.composite
def series_tuples(draw, count=1, max_order=64, max_wcap=3, unit=False):
    order = draw(st.integers(min_value=0, max_value=max_order))
    wcap = draw(st.integers(min_value=0, max_value=max_wcap))
    keys = st.tuples(st.integers(0, order), st.integers(0, wcap))
    out = []
    for _ in range(count):
        terms = draw(st.dictionaries(keys, small_fractions, max_size=24))
        if unit:
            terms = {key: v for key, v in terms.items() if key[0] != 0}
            terms[0, 0] = draw(small_fractions.filter(bool))
        out.append(QSeries.from_terms(order, terms, wcap))
    return out


@st.composite
def qt_tuples(draw, count=1, max_order=16, max_wcap=2):
    order = draw(st.integers(min_value=0, max_value=max_order))
    wcap = draw(st.integers(min_value=0, max_value=max_wcap))
    out = []
    for _ in range(count):
        entries = draw(st.lists(
            st.tuples(st.integers(0, order), st.integers(0, order), st.integers(0, wcap),
                      small_fractions),
            max_size=16,
        ))
        terms = {}
        for n, m, k, v in entries:
            if m <= n:
                terms[n, m, k] = v
        out.append(QTSeries.from_terms(order, terms, wcap))
    return out


def one_like(a: QSeries) -> QSeries:
    return QSeries.from_terms(a.order, {0: 1}, a.wcap)


def zero_like(a: QSeries) -> QSeries:
    return QSeries.zero(a.order, a.wcap)


# each law takes a list of series and returns True when it holds

def add_commutes(s):
    a, b = s
    return a + b == b + a


def mul_commutes(s):
    a, b = s
    return a * b == b * a


def mul_associates(s):
    a, b, c = s
    return (a * b) * c == a * (b * c)


def mul_distributes(s):
    a, b, c = s
    return a * (b + c) == a * b + a * c


def add_identity(s):
    (a,) = s
    return a + zero_like(a) == a and a * one_like(a) == a


def add_inverse(s):
    (a,) = s
    return (a - a).is_zero()


def inverse_round_trip(s):
    (a,) = s
    return a * inv(a) == one_like(a)
