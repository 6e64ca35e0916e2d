"""Growth constants, amplitudes and dominant poles from exact coefficients.

Exact integers are only turned into floating point here, at a configurable
number of decimal digits (mpmath).  The primary estimator is the plain
ratio of consecutive coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .series import QSeries

ROUND_PLACES = 12
TAIL_TOLERANCE = mpmath.mpf("1e-20")


class RatioMethodError(ValueError):
    """Coefficients are not strictly positive, so ratios are meaningless."""


class InconclusiveError(RuntimeError):
    """No sign change could be certified inside the trusted interval."""


def round_places(x, places: int = ROUND_PLACES) -> str:
    """Round half away from zero to ``places`` decimals; exact for ints and Fractions."""
    if isinstance(x, (int, Fraction)):
        scaled = Fraction(x) * 10**places
        mag = int(abs(scaled) + Fraction(1, 2))
    else:
        scaled = mpmath.mpf(x) * mpmath.mpf(10) ** places
        mag = int(mpmath.floor(abs(scaled) + mpmath.mpf(0.5)))
    sign = "-" if scaled < 0 and mag else ""
    digits = str(mag).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _stable_from(values: list[str], first_index: int) -> int:
    """Smallest index n such that values[n:] are all equal (indices offset by first_index)."""
    last = values[-1]
    n = len(values) - 1
    while n > 0 and values[n - 1] == last:
        n -= 1
    return n + first_index


def _coefficients(g) -> list[int | Fraction]:
    if isinstance(g, QSeries):
        if g.wcap != 0:
            raise ValueError("ratio analysis needs w fixed (wcap 0)")
        return [g.coeff(n) for n in range(g.order + 1)]
    return list(g)


@dataclass(frozen=True)
class AsymptoticReport:
    order: int
    precision: int
    growth: mpmath.mpf
    amplitude: mpmath.mpf
    stabilization_n: int
    amplitude_stabilization_n: int
    conclusive: bool
    pole: mpmath.mpf | None = None

    @property
    def growth_rounded(self) -> str:
        return round_places(self.growth)

    @property
    def amplitude_rounded(self) -> str:
        return round_places(self.amplitude)

    @property
    def pole_rounded(self) -> str | None:
        return None if self.pole is None else round_places(self.pole)

    @property
    def reciprocal_pole(self) -> mpmath.mpf:
        return 1 / self.growth

    def consistency(self) -> mpmath.mpf | None:
        """|pole * growth - 1|, when a pole was located."""
        if self.pole is None:
            return None
        return abs(self.pole * self.growth - 1)

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "precision": self.precision,
            "growth": self.growth_rounded,
            "growth_full": mpmath.nstr(self.growth, self.precision),
            "amplitude": self.amplitude_rounded,
            "amplitude_full": mpmath.nstr(self.amplitude, self.precision),
            "pole": self.pole_rounded,
            "pole_full": None if self.pole is None else mpmath.nstr(self.pole, self.precision),
            "stabilization_n": self.stabilization_n,
            "amplitude_stabilization_n": self.amplitude_stabilization_n,
            "conclusive": self.conclusive,
        }


def ratio_analysis(g, digits: int = 40, *, min_window: int = 10,
                   pole=None) -> AsymptoticReport:
    """Consecutive-ratio estimate of the growth constant and the amplitude.

    ``g`` is a QSeries at fixed w, or a plain coefficient list starting at
    q^0.  Coefficients 1..N must be strictly positive.  The growth constant
    is the last ratio at full working precision; the amplitude is
    ``g_N / growth**N``.  The analysis is *conclusive* when the rounded ratio
    has been constant over the last ``min_window`` orders at least.
    """
    coeffs = _coefficients(g)
    order = len(coeffs) - 1
    if order < 2:
        raise RatioMethodError("need at least two positive coefficients")
    for n in range(1, order + 1):
        if coeffs[n] <= 0:
            raise RatioMethodError(f"coefficient of q^{n} is {coeffs[n]}, not positive")
    with mpmath.workdps(digits):
        vals = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in coeffs]
        ratios = [vals[n] / vals[n - 1] for n in range(2, order + 1)]
        growth = ratios[-1]
        amps = [vals[n] / growth**n for n in range(1, order + 1)]
        stab = _stable_from([round_places(r) for r in ratios], 2)
        amp_stab = _stable_from([round_places(a) for a in amps], 1)
        pole_val = None if pole is None else mpmath.mpf(pole)
        report = AsymptoticReport(
            order=order,
            precision=digits,
            growth=growth,
            amplitude=amps[-1],
            stabilization_n=stab,
            amplitude_stabilization_n=amp_stab,
            conclusive=stab <= order - min_window,
            pole=pole_val,
        )
    return report


def _poly_eval(coeffs: Sequence, x: mpmath.mpf) -> mpmath.mpf:
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        c = Fraction(c)
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def tail_bound(coeffs: Sequence, x, window: int = 10) -> mpmath.mpf:
    """Estimated |sum_{n>N} c_n x^n| from a geometric fit to the last ``window`` coefficients.

    The fit is ``|c_n| <= C * rho**n`` with rho the largest consecutive ratio
    in the window and C chosen to cover every coefficient in it.
    """
    n_top = len(coeffs) - 1
    tail = [(n, abs(mpmath.mpf(Fraction(coeffs[n]).numerator) / Fraction(coeffs[n]).denominator))
            for n in range(max(0, n_top - window + 1), n_top + 1)]
    if all(v == 0 for _, v in tail):
        return mpmath.mpf(0)
    ratios = [b / a for (_, a), (_, b) in zip(tail, tail[1:]) if a != 0]
    rho = max(ratios + [mpmath.mpf(1)])
    scale = max(v / rho**n for n, v in tail)
    z = rho * abs(mpmath.mpf(x))
    if z >= 1:
        return mpmath.inf
    return scale * z ** (n_top + 1) / (1 - z)


def pole_locate(source, digits: int = 40, *, upper=mpmath.mpf("0.99"),
                grid: int = 990) -> mpmath.mpf:
    """Smallest positive root of a denominator.

    ``source`` is either a list of exact polynomial coefficients (used
    as-is) or a QSeries at fixed w holding a truncated denominator; for the
    latter every evaluation is checked against :func:`tail_bound` and points
    whose tail exceeds 1e-20 are not trusted.  The root is bracketed by a
    grid scan of ``(0, upper]`` and refined by bisection.
    """
    series = isinstance(source, QSeries)
    coeffs = _coefficients(source)
    with mpmath.workdps(digits + 10):
        def value(x):
            v = _poly_eval(coeffs, x)
            if not series:
                return v, mpmath.mpf(0)
            tb = tail_bound(coeffs, x)
            if tb > TAIL_TOLERANCE:
                raise InconclusiveError(f"truncation tail {mpmath.nstr(tb, 5)} at q={mpmath.nstr(x, 8)}")
            return v, tb

        lo = mpmath.mpf(0)
        f_lo, _ = value(lo)
        if f_lo == 0:
            return lo
        step = mpmath.mpf(upper) / grid
        hi = None
        for j in range(1, grid + 1):
            x = step * j
            try:
                f_x, tb = value(x)
            except InconclusiveError:
                break
            if f_x == 0:
                return +x
            if (f_x > 0) != (f_lo > 0) and abs(f_x) > tb:
                hi = x
                break
            lo, f_lo = x, f_x
        if hi is None:
            raise InconclusiveError("no sign change of the denominator in the trusted interval")
        eps = mpmath.mpf(10) ** (-(digits + 2))
        while hi - lo > eps:
            mid = (lo + hi) / 2
            f_mid, tb = value(mid)
            if abs(f_mid) <= tb:
                break
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        root = (lo + hi) / 2
    with mpmath.workdps(digits):
        return +root


COLUMN_CONVEX_DENOMINATOR = (1, -5, 7, -4)
