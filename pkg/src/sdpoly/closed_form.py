"""Closed-form area/duplex-column generating function G(q, w).

G is a quotient NUM/DEN of polynomials in twelve q-series.  Each of those
series is a value or a derivative at ``t = 1`` of one of four sums

    S(t) = sum_i sign(i) q**a(i) t**b(i) w**c(i)
           / ((1-q)**d(i) * prod_{k<i} (1 - q**k t)**4 * (1 - q**i t)**e)

divided by ``t``.  Two *shapes* of sum occur (``short``: a = i^2+2i-2,
t-power 2i-1, w^(i-1), (1-q)^(2i-2); ``long``: a = i^2+4i, t-power 2i+1,
w^i, (1-q)^(2i)), each with two settings of the last exponent ``e`` and of
the sign.  :data:`TILDE_SPECS` maps every series name to its parameters so
that a single generator produces all twelve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .series import QSeries, SeriesError, SeriesRing, inv


class TildeSpec(NamedTuple):
    shape: str  # "short" or "long"
    exponent: int  # power of (1 - q**i)
    sign_shift: int  # 0 for (-3)**(i-1), 1 for (-3)**i
    deriv: int  # 0: value, 1: first derivative, 2: half the second derivative


TILDE_SPECS: dict[str, TildeSpec] = {
    "alpha": TildeSpec("short", 1, 0, 0),
    "beta": TildeSpec("short", 2, 0, 0),
    "gamma": TildeSpec("long", 3, 0, 0),
    "delta": TildeSpec("long", 4, 1, 0),
    "epsilon": TildeSpec("short", 1, 0, 1),
    "zeta": TildeSpec("short", 2, 0, 1),
    "eta": TildeSpec("long", 3, 0, 1),
    "theta": TildeSpec("long", 4, 1, 1),
    "iota": TildeSpec("short", 1, 0, 2),
    "kappa": TildeSpec("short", 2, 0, 2),
    "lambda": TildeSpec("long", 3, 0, 2),
    "mu": TildeSpec("long", 4, 1, 2),
}

TILDE_NAMES = tuple(TILDE_SPECS)


def _shape_params(shape: str, i: int) -> tuple[int, int, int, int]:
    """(q-exponent, w-exponent, (1-q) power, t-exponent after dividing by t)."""
    if shape == "short":
        return i * i + 2 * i - 2, i - 1, 2 * i - 2, 2 * i - 2
    return i * i + 4 * i, i, 2 * i, 2 * i


def min_q_degree(shape: str, i: int) -> int:
    return _shape_params(shape, i)[0]


def tilde_term(ring: SeriesRing, params: TildeSpec, i: int) -> QSeries:
    """The i-th summand of a tilde series, before any global 1/2."""
    qexp, wexp, onem_pow, texp = _shape_params(params.shape, i)
    e = params.exponent
    sign = (-3) ** (i - 1 + params.sign_shift)
    base = ring.monomial(sign, qexp, wexp)
    base = base.div_one_minus_q(1, onem_pow)
    for k in range(1, i):
        base = base.div_one_minus_q(k, 4)
    base = base.div_one_minus_q(i, e)
    if params.deriv == 0:
        return base

    # logarithmic derivative of the summand (divided by t) at t = 1
    slope = ring.const(texp) + ring.monomial(e, i).div_one_minus_q(i)
    for k in range(1, i):
        slope = slope + ring.monomial(4, k).div_one_minus_q(k)
    if params.deriv == 1:
        return base * slope

    # derivative of the log-derivative
    curvature = ring.const(-texp) + ring.monomial(e, 2 * i).div_one_minus_q(i, 2)
    for k in range(1, i):
        curvature = curvature + ring.monomial(4, 2 * k).div_one_minus_q(k, 2)
    return base * (slope * slope + curvature)


def tilde(name: str, ring: SeriesRing | int) -> QSeries:
    """Evaluate one of the twelve tilde series modulo ``q**(order+1)``.

    ``ring`` may be a plain order, meaning w-free evaluation at symbolic w
    with the default cap.
    """
    if isinstance(ring, int):
        ring = SeriesRing(ring)
    try:
        params = TILDE_SPECS[name]
    except KeyError:
        raise SeriesError(f"unknown tilde series {name!r}") from None
    total = ring.zero()
    i = 1
    while min_q_degree(params.shape, i) <= ring.order:
        total = total + tilde_term(ring, params, i)
        i += 1
    if params.deriv == 2:
        total = total.scale(Fraction(1, 2))
    return total


@dataclass(frozen=True)
class TildeFamily:
    """All twelve tilde series at a common truncation."""

    series: dict

    def __getitem__(self, name: str) -> QSeries:
        return self.series[name]

    @classmethod
    def compute(cls, ring: SeriesRing) -> TildeFamily:
        return cls({name: tilde(name, ring) for name in TILDE_NAMES})


# A prefactor is (scalar, q-power, w-power, ((k, p), ...)) standing for
# scalar * q**qpow * w**wpow * prod (1 - q**k)**p.
# Each group is (prefactor, [(coefficient, (names...)), ...]); the empty name
# tuple is the constant 1.

NUM_TABLE = (
    ((1, 0, 0, ((1, 4),)), [
        (1, ("alpha",)),
        (1, ("gamma",)),
        (2, ("alpha", "eta")),
        (-2, ("gamma", "epsilon")),
    ]),
    ((1, 2, 1, ((1, 2),)), [
        (1, ("iota",)),
        (1, ("lambda",)),
        (-1, ("alpha", "kappa")),
        (-1, ("alpha", "mu")),
        (1, ("beta", "iota")),
        (1, ("beta", "lambda")),
        (-1, ("gamma", "kappa")),
        (-1, ("gamma", "mu")),
        (1, ("delta", "iota")),
        (1, ("delta", "lambda")),
        (-2, ("epsilon", "lambda")),
        (2, ("eta", "iota")),
        (2, ("alpha", "zeta", "lambda")),
        (-2, ("alpha", "eta", "kappa")),
        (-2, ("alpha", "eta", "mu")),
        (2, ("alpha", "theta", "lambda")),
        (-2, ("beta", "epsilon", "lambda")),
        (2, ("beta", "eta", "iota")),
        (2, ("gamma", "epsilon", "kappa")),
        (2, ("gamma", "epsilon", "mu")),
        (-2, ("gamma", "zeta", "iota")),
        (-2, ("gamma", "theta", "iota")),
        (-2, ("delta", "epsilon", "lambda")),
        (2, ("delta", "eta", "iota")),
    ]),
    ((2, 2, 1, ((2, 1),)), [
        (1, ("alpha", "lambda")),
        (-1, ("gamma", "iota")),
    ]),
)

DEN_TABLE = (
    ((1, 0, 0, ((1, 4),)), [
        (1, ()),
        (-1, ("beta",)),
        (1, ("delta",)),
        (-1, ("epsilon",)),
        (1, ("eta",)),
        (-1, ("alpha", "zeta")),
        (1, ("alpha", "theta")),
        (1, ("beta", "epsilon")),
        (-1, ("beta", "eta")),
        (1, ("gamma", "zeta")),
        (-1, ("gamma", "theta")),
        (-1, ("delta", "epsilon")),
        (1, ("delta", "eta")),
    ]),
    ((-2, 0, 0, ((1, 3),)), [
        (1, ("gamma",)),
        (1, ("alpha", "eta")),
        (-1, ("gamma", "epsilon")),
    ]),
    ((-2, 2, 1, ((1, 2),)), [
        (1, ("kappa",)),
        (-1, ("beta", "mu")),
        (1, ("delta", "kappa")),
        (-1, ("epsilon", "kappa")),
        (1, ("zeta", "iota")),
        (-1, ("zeta", "lambda")),
        (1, ("eta", "kappa")),
        (-1, ("alpha", "zeta", "mu")),
        (1, ("alpha", "theta", "kappa")),
        (1, ("beta", "epsilon", "mu")),
        (-1, ("beta", "eta", "mu")),
        (-1, ("beta", "theta", "iota")),
        (1, ("beta", "theta", "lambda")),
        (1, ("gamma", "zeta", "mu")),
        (-1, ("gamma", "theta", "kappa")),
        (-1, ("delta", "epsilon", "kappa")),
        (1, ("delta", "zeta", "iota")),
        (-1, ("delta", "zeta", "lambda")),
        (1, ("delta", "eta", "kappa")),
    ]),
    ((-4, 2, 1, ((1, 1),)), [
        (1, ("beta", "lambda")),
        (-1, ("gamma", "kappa")),
        (1, ("alpha", "zeta", "lambda")),
        (-1, ("alpha", "eta", "kappa")),
        (-1, ("beta", "epsilon", "lambda")),
        (1, ("beta", "eta", "iota")),
        (1, ("gamma", "epsilon", "kappa")),
        (-1, ("gamma", "zeta", "iota")),
    ]),
    ((-2, 3, 1, ((1, 1),)), [
        (1, ("iota",)),
        (1, ("alpha", "kappa")),
        (-1, ("alpha", "mu")),
        (-1, ("beta", "iota")),
        (1, ("delta", "iota")),
        (-1, ("epsilon", "lambda")),
        (1, ("eta", "iota")),
        (-1, ("alpha", "zeta", "lambda")),
        (1, ("alpha", "eta", "kappa")),
        (-1, ("alpha", "eta", "mu")),
        (1, ("alpha", "theta", "lambda")),
        (1, ("beta", "epsilon", "lambda")),
        (-1, ("beta", "eta", "iota")),
        (-1, ("gamma", "epsilon", "kappa")),
        (1, ("gamma", "epsilon", "mu")),
        (1, ("gamma", "zeta", "iota")),
        (-1, ("gamma", "theta", "iota")),
        (-1, ("delta", "epsilon", "lambda")),
        (1, ("delta", "eta", "iota")),
    ]),
    ((-4, 3, 1, ()), [
        (1, ("alpha", "lambda")),
        (-1, ("gamma", "iota")),
    ]),
)


def _prefactor(ring: SeriesRing, pref) -> QSeries:
    scalar, qpow, wpow, factors = pref
    s = ring.monomial(scalar, qpow, wpow)
    for k, p in factors:
        s = s.mul_one_minus_q(k, p)
    return s


def evaluate_table(ring: SeriesRing, tildes: TildeFamily, table) -> QSeries:
    """Sum of prefactor * (sum of coefficient * product of tilde series) over the groups."""
    products: dict[tuple, QSeries] = {(): ring.one()}

    def product(names: tuple) -> QSeries:
        if names not in products:
            products[names] = product(names[:-1]) * tildes[names[-1]]
        return products[names]

    total = ring.zero()
    for pref, terms in table:
        inner = ring.zero()
        for coef, names in terms:
            inner = inner + product(names).scale(coef)
        total = total + _prefactor(ring, pref) * inner
    return total


@dataclass(frozen=True)
class ClosedFormG:
    num: QSeries
    den: QSeries
    g: QSeries

    @property
    def order(self) -> int:
        return self.g.order


def assemble(ring: SeriesRing | int, num_table=NUM_TABLE, den_table=DEN_TABLE,
             tildes: TildeFamily | None = None) -> ClosedFormG:
    """G = NUM/DEN from the literal term tables.

    Alternative tables may be passed for fault-injection runs.
    """
    if isinstance(ring, int):
        ring = SeriesRing(ring)
    if tildes is None:
        tildes = TildeFamily.compute(ring)
    num = evaluate_table(ring, tildes, num_table)
    den = evaluate_table(ring, tildes, den_table)
    return ClosedFormG(num, den, num * inv(den))


def solve_moments(ring: SeriesRing, tildes: TildeFamily) -> tuple[QSeries, QSeries, QSeries]:
    """Solve the 3x3 linear system for (A1, B1, C1) directly from the tilde series.

    Each jet order j (value, slope, half-curvature) gives one equation

        X_j = T1_j * (1 + B1 + u*C1) + T2_j * (A1 + v*C1)
              + T3_j * (1 + r*A1 - B1) - T4_j * A1

    with u = 2q^3w/(1-q)^3, v = 2q^2w/(1-q)^2, r = 2/(1-q).  The matrix is
    the identity modulo q, so elimination never meets a non-unit pivot.
    """
    u = ring.times_w(ring.monomial(2, 3).div_one_minus_q(1, 3))
    v = ring.times_w(ring.monomial(2, 2).div_one_minus_q(1, 2))
    r = ring.const(2).div_one_minus_q(1, 1)
    rows = []
    one = ring.one()
    for t1, t2, t3, t4 in (
        ("alpha", "beta", "gamma", "delta"),
        ("epsilon", "zeta", "eta", "theta"),
        ("iota", "kappa", "lambda", "mu"),
    ):
        a, b, c, d = (tildes[x] for x in (t1, t2, t3, t4))
        # coefficients of (A1, B1, C1) on the right-hand side, and the constant
        coef_a = b + c * r - d
        coef_b = a - c
        coef_c = a * u + b * v
        rows.append([coef_a, coef_b, coef_c, a + c])
    # move to the left-hand side: (I - M) x = const
    mat = [[(one if i == j else ring.zero()) - rows[i][j] for j in range(3)] for i in range(3)]
    rhs = [rows[i][3] for i in range(3)]
    for col in range(3):
        piv = inv(mat[col][col])
        mat[col] = [x * piv for x in mat[col]]
        rhs[col] = rhs[col] * piv
        for row in range(3):
            if row != col:
                f = mat[row][col]
                mat[row] = [x - f * y for x, y in zip(mat[row], mat[col])]
                rhs[row] = rhs[row] - f * rhs[col]
    return rhs[0], rhs[1], rhs[2]


def column_convex_g(order: int) -> QSeries:
    """Expansion of q(1-q)^3 / (1 - 5q + 7q^2 - 4q^3) by its linear recurrence."""
    if order < 0:
        raise SeriesError("order must be non-negative")
    numer = [0, 1, -3, 3, -1]
    g = [0] * (order + 1)
    for n in range(order + 1):
        acc = numer[n] if n < len(numer) else 0
        if n >= 1:
            acc += 5 * g[n - 1]
        if n >= 2:
            acc -= 7 * g[n - 2]
        if n >= 3:
            acc += 4 * g[n - 3]
        g[n] = acc
    return QSeries.from_coefficients(g)
