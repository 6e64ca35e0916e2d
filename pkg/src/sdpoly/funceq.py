"""Functional-equation engine for the last-column generating function A(t).

A(q, t, w) counts simplex-duplex polyominoes whose last column is simplex, by
area (q), height of the last column (t) and number of duplex columns (w).  It
satisfies

    A(t) = qt/(1-qt) [1 + B1 + 2q^3w/(1-q)^3 C1]
         + qt/(1-qt)^2 [A1 + 2q^2w/(1-q)^2 C1]
         + q^5t^3w/((1-q)^2(1-qt)^3) (1 + 2/(1-q) A1 - B1)
         + 3q^5t^3w/((1-q)^2(1-qt)^4) A1
         - 3q^4t^2w/((1-q)^2(1-qt)^4) A(qt)

where (A1, B1, C1) is the jet of A(t)/t at t = 1.  Every A-dependent term
carries at least one extra power of q, so plain iteration from A = 0 gains
one exact q-degree per step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import QSeries, QTSeries, SeriesRing, TJet, jet_at_1, subst_qt


class ConvergenceError(RuntimeError):
    """The fixed-point iteration failed to settle; this signals a bug, not bad input."""


def _rational_t(coef: QSeries, qt_power: int, pole_power: int) -> QTSeries:
    """``coef * (q t)**qt_power / (1 - q t)**pole_power``."""
    out = QTSeries.from_series(coef).times_qt(qt_power)
    return out.div_one_minus_qkt(1, pole_power) if pole_power else out


def _weight(ring: SeriesRing, c, qpow: int, wpow: int, onem: int) -> QSeries:
    """``c * q**qpow * w**wpow / (1-q)**onem``."""
    return ring.monomial(c, qpow, wpow).div_one_minus_q(1, onem)


def functional_rhs(a: QTSeries, jets: TJet, ring: SeriesRing) -> QTSeries:
    """Right-hand side of the functional equation, with ``jets = jet_at_1(a)``."""
    a1, b1, c1 = jets.components()
    one = ring.one()
    first = one + b1 + _weight(ring, 2, 3, 1, 3) * c1
    second = a1 + _weight(ring, 2, 2, 1, 2) * c1
    third = one + (a1.scale(2)).div_one_minus_q(1, 1) - b1
    q2w = _weight(ring, 1, 2, 1, 2)

    total = _rational_t(first, 1, 1)
    total = total + _rational_t(second, 1, 2)
    total = total + _rational_t(q2w * third, 3, 3)
    total = total + _rational_t((q2w * a1).scale(3), 3, 4)
    shifted = subst_qt(a).times_qt(2).div_one_minus_qkt(1, 4)
    total = total - shifted.times_series(q2w).scale(3)
    return total


@dataclass(frozen=True)
class FunceqSolution:
    a_t: QTSeries
    a1: QSeries
    b1: QSeries
    c1: QSeries
    g: QSeries
    iterations: int

    @property
    def jets(self) -> TJet:
        return TJet(self.a1, self.b1, self.c1)


def ends_duplex_weight(ring: SeriesRing) -> QSeries:
    """q^2 w/(1-q)^2: one duplex last column glued onto a chosen pair of cells."""
    return _weight(ring, 1, 2, 1, 2)


def fixed_point_solve(ring: SeriesRing | int, *, trace=None) -> FunceqSolution:
    """Iterate ``A <- rhs(A, jet(A))`` from zero until two iterates coincide.

    ``trace``, when given, is called with every iterate (used by the
    convergence-order tests).
    """
    if isinstance(ring, int):
        ring = SeriesRing(ring)
    a = ring.qt_zero()
    for step in range(1, ring.order + 3):
        nxt = functional_rhs(a, jet_at_1(a), ring)
        if trace is not None:
            trace(nxt)
        if nxt == a:
            jets = jet_at_1(a)
            g = jets.f0 + ends_duplex_weight(ring) * jets.f2
            return FunceqSolution(a, jets.f0, jets.f1, jets.f2, g, step)
        a = nxt
    raise ConvergenceError(f"no fixed point after {ring.order + 2} iterations")


PART_NAMES = (
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta",
    "eta", "theta", "iota", "kappa", "lambda", "mu",
)

MIRROR_PAIRS = (("delta", "zeta"), ("epsilon", "eta"), ("iota", "lambda"), ("kappa", "mu"))


def decompose(sol: FunceqSolution, ring: SeriesRing) -> dict[str, QTSeries]:
    """Split A(t) into the twelve class contributions, keyed by class label.

    Mirror-image classes share one formula and therefore one object.
    """
    a1, b1, c1 = sol.a1, sol.b1, sol.c1
    q2w = _weight(ring, 1, 2, 1, 2)
    shifted = subst_qt(sol.a_t).times_qt(2).div_one_minus_qkt(1, 4).times_series(q2w)

    parts = {}
    parts["alpha"] = (
        _rational_t(ring.one(), 1, 1) + _rational_t(q2w, 3, 3)
    )
    parts["beta"] = _rational_t(a1, 1, 2)
    parts["gamma"] = _rational_t(b1, 1, 1)
    parts["delta"] = _rational_t(_weight(ring, 1, 2, 1, 3) * a1, 3, 3)
    parts["epsilon"] = _rational_t(q2w * a1, 3, 4) - shifted
    parts["theta"] = _rational_t(q2w * b1, 3, 3) - parts["epsilon"]
    parts["iota"] = _rational_t(_weight(ring, 1, 3, 1, 3) * c1, 1, 1)
    parts["kappa"] = _rational_t(_weight(ring, 1, 2, 1, 2) * c1, 1, 2) - parts["theta"]
    for left, right in MIRROR_PAIRS:
        parts[right] = parts[left]
    return {name: parts[name] for name in PART_NAMES}


def _sum_block(ring: SeriesRing, shape: str, exponent: int, sign_shift: int,
               full_product: bool) -> QTSeries:
    """One of the four i-indexed sums of the iterated solution, as a series in q and t."""
    total = ring.qt_zero()
    i = 1
    while True:
        if shape == "short":
            qexp, wexp, onem, texp = i * i + 2 * i - 2, i - 1, 2 * i - 2, 2 * i - 1
        else:
            qexp, wexp, onem, texp = i * i + 4 * i, i, 2 * i, 2 * i + 1
        if qexp > ring.order:
            return total
        coef = ring.monomial((-3) ** (i - 1 + sign_shift), qexp - texp, wexp)
        term = QTSeries.from_series(coef.div_one_minus_q(1, onem)).times_qt(texp)
        for k in range(1, i):
            term = term.div_one_minus_qkt(k, 4)
        if full_product:
            term = term.div_one_minus_qkt(i, 4)
        else:
            term = term.div_one_minus_qkt(i, exponent)
        total = total + term
        i += 1


@dataclass(frozen=True)
class IteratedFormReport:
    passed: bool
    sums: tuple
    residual: QTSeries


def iterated_form_check(sol: FunceqSolution, ring: SeriesRing) -> IteratedFormReport:
    """Rebuild A(t) from the closed iterated form and compare with the solved A(t).

        A(t) = S1 [1 + B1 + u C1] + S2 [A1 + v C1] + S3 (1 + 2/(1-q) A1 - B1) - S4 A1
    """
    s1 = _sum_block(ring, "short", 1, 0, False)
    s2 = _sum_block(ring, "short", 2, 0, False)
    s3 = _sum_block(ring, "long", 3, 0, False)
    s4 = _sum_block(ring, "long", 4, 1, True)
    one = ring.one()
    first = one + sol.b1 + _weight(ring, 2, 3, 1, 3) * sol.c1
    second = sol.a1 + _weight(ring, 2, 2, 1, 2) * sol.c1
    third = one + sol.a1.scale(2).div_one_minus_q(1, 1) - sol.b1
    rebuilt = (
        s1.times_series(first)
        + s2.times_series(second)
        + s3.times_series(third)
        - s4.times_series(sol.a1)
    )
    residual = rebuilt - sol.a_t
    return IteratedFormReport(not residual.num.any(), (s1, s2, s3, s4), residual)


__all__ = [
    "ConvergenceError",
    "FunceqSolution",
    "IteratedFormReport",
    "MIRROR_PAIRS",
    "PART_NAMES",
    "decompose",
    "ends_duplex_weight",
    "fixed_point_solve",
    "functional_rhs",
    "iterated_form_check",
]
