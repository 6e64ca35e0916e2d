"""Exact truncated power series over Q[w].

Two carriers are provided:

* :class:`QSeries` -- a series in ``q`` truncated after ``q**order``, whose
  coefficients are polynomials in ``w`` (truncated after ``w**wcap``).
* :class:`QTSeries` -- a series in ``q`` and ``t`` where the coefficient of
  ``q**n t**m`` vanishes whenever ``m > n``.

Both store an integer numerator array (numpy, dtype object, so Python ints of
any size) and one shared positive integer denominator.  Almost every series in
this package has integer coefficients, so the common-denominator layout keeps
the hot loops on plain ints.

Truncating in ``w`` is reduction modulo ``w**(wcap+1)``, which is a ring
quotient: every retained coefficient is exact.  When ``w`` is fixed to a
rational number the ``w`` axis has length one and holds the evaluated value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np


class SeriesError(ValueError):
    """Incompatible operands (order or w-cap mismatch, bad arguments)."""


class NotAUnit(ArithmeticError):
    """Raised when inverting a series whose constant term is not a nonzero rational."""


def _zeros(*shape: int) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _array_gcd(num: np.ndarray, den: int) -> int:
    flat = [v for v in num.flat if v]
    if not flat:
        return den
    return math.gcd(den, *flat)


def _normalized(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den < 0:
        num, den = -num, -den
    if den != 1:
        g = _array_gcd(num, den)
        if g > 1:
            num = num // g
            den //= g
    return num, den


def _freeze(num: np.ndarray) -> np.ndarray:
    num.flags.writeable = False
    return num


class WPoly:
    """An immutable polynomial in ``w`` with rational coefficients.

    Stored sparsely: ``coeffs`` maps w-degree to a nonzero Fraction.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        items = {}
        for k, v in (coeffs or {}).items():
            if k < 0:
                raise SeriesError(f"negative w-degree {k}")
            v = _as_fraction(v)
            if v:
                items[int(k)] = v
        self._coeffs = items

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def __getitem__(self, k: int) -> Fraction:
        return self._coeffs.get(k, Fraction(0))

    def __call__(self, w) -> Fraction:
        w = _as_fraction(w)
        return sum((c * w**k for k, c in self._coeffs.items()), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: WPoly) -> WPoly:
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return WPoly(out)

    def __mul__(self, other: WPoly) -> WPoly:
        out: dict[int, Fraction] = {}
        for k1, v1 in self._coeffs.items():
            for k2, v2 in other._coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return WPoly(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, WPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k in sorted(self._coeffs):
            c = self._coeffs[k]
            if k == 0:
                parts.append(str(c))
            else:
                mono = "w" if k == 1 else f"w^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


class QSeries:
    """Truncated power series in ``q`` with coefficients in Q[w].

    ``num[n, k] / den`` is the coefficient of ``q**n w**k``.  Instances are
    immutable; every operation returns a new series.
    """

    __slots__ = ("order", "wcap", "num", "den")

    def __init__(self, num: np.ndarray, den: int = 1):
        if num.ndim != 2:
            raise SeriesError("QSeries numerator must be 2-dimensional")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = _normalized(num, int(den))
        self.order = num.shape[0] - 1
        self.wcap = num.shape[1] - 1
        self.num = _freeze(num)
        self.den = den

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, order: int, wcap: int = 0) -> QSeries:
        if order < 0 or wcap < 0:
            raise SeriesError("order and wcap must be non-negative")
        return cls(_zeros(order + 1, wcap + 1))

    @classmethod
    def from_terms(cls, order: int, terms: Mapping, wcap: int = 0) -> QSeries:
        """Build from ``{n: value}`` or ``{(n, k): value}``; terms beyond the caps are dropped."""
        if order < 0 or wcap < 0:
            raise SeriesError("order and wcap must be non-negative")
        fracs = {}
        for key, v in terms.items():
            n, k = key if isinstance(key, tuple) else (key, 0)
            if n < 0 or k < 0:
                raise SeriesError(f"negative exponent in term {key}")
            if n <= order and k <= wcap:
                fracs[n, k] = fracs.get((n, k), 0) + _as_fraction(v)
        den = math.lcm(1, *(f.denominator for f in fracs.values()))
        num = _zeros(order + 1, wcap + 1)
        for (n, k), f in fracs.items():
            num[n, k] = f.numerator * (den // f.denominator)
        return cls(num, den)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, wcap: int = 0) -> QSeries:
        """Build a w-free series from a list of q-coefficients ``[c0, c1, ...]``."""
        coeffs = list(coeffs)
        return cls.from_terms(len(coeffs) - 1, dict(enumerate(coeffs)), wcap)

    # -- access -------------------------------------------------------------

    def coeff(self, n: int, k: int = 0) -> Fraction:
        if 0 <= n <= self.order and 0 <= k <= self.wcap:
            return Fraction(self.num[n, k], self.den)
        if n > self.order:
            raise SeriesError(f"q-degree {n} beyond truncation order {self.order}")
        return Fraction(0)

    def __getitem__(self, n: int) -> WPoly:
        if not 0 <= n <= self.order:
            raise SeriesError(f"q-degree {n} outside 0..{self.order}")
        return WPoly({k: Fraction(v, self.den) for k, v in enumerate(self.num[n]) if v})

    def coefficients(self) -> list[WPoly]:
        return [self[n] for n in range(self.order + 1)]

    def terms(self) -> dict[tuple[int, int], Fraction]:
        """Nonzero coefficients keyed by ``(n, k)``."""
        rows, cols = np.nonzero(self.num)
        return {(int(n), int(k)): Fraction(self.num[n, k], self.den) for n, k in zip(rows, cols)}

    def constant(self) -> WPoly:
        return self[0]

    def valuation(self) -> int | None:
        """Lowest q-degree carrying a nonzero coefficient, or None for zero."""
        rows = np.nonzero(self.num.any(axis=1))[0]
        return int(rows[0]) if len(rows) else None

    def is_zero(self) -> bool:
        return not self.num.any()

    # -- structural ----------------------------------------------------------

    def _check(self, other: QSeries) -> None:
        if not isinstance(other, QSeries):
            raise TypeError(f"expected QSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise SeriesError(f"mismatched truncation orders {self.order} and {other.order}")
        if other.wcap != self.wcap:
            raise SeriesError(f"mismatched w-caps {self.wcap} and {other.wcap}")

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise SeriesError("cannot truncate to a higher order")
        return QSeries(self.num[: order + 1].copy(), self.den)

    def extend(self, order: int) -> QSeries:
        """Zero-pad to a higher order.  Padded coefficients are *not* known values."""
        num = _zeros(order + 1, self.wcap + 1)
        num[: self.order + 1] = self.num
        return QSeries(num, self.den)

    def at_w(self, w) -> QSeries:
        """Substitute a rational value for ``w``; the result has wcap 0."""
        w = _as_fraction(w)
        powers = [w**k for k in range(self.wcap + 1)]
        den = math.lcm(1, *(p.denominator for p in powers))
        weights = np.array([p.numerator * (den // p.denominator) for p in powers], dtype=object)
        col = self.num.dot(weights).reshape(self.order + 1, 1)
        return QSeries(col, self.den * den)

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.wcap == other.wcap
            and self.den == other.den
            and bool((self.num == other.num).all())
        )

    __hash__ = None

    def __neg__(self) -> QSeries:
        return QSeries(-self.num, self.den)

    def __add__(self, other: QSeries) -> QSeries:
        self._check(other)
        if self.den == other.den:
            return QSeries(self.num + other.num, self.den)
        den = math.lcm(self.den, other.den)
        return QSeries(self.num * (den // self.den) + other.num * (den // other.den), den)

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def __mul__(self, other) -> QSeries:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return QSeries(_mul2(self.num, other.num), self.den * other.den)

    def __rmul__(self, other) -> QSeries:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> QSeries:
        c = _as_fraction(c)
        return QSeries(self.num * c.numerator, self.den * c.denominator)

    def shift(self, k: int) -> QSeries:
        """Multiply by ``q**k`` (k >= 0)."""
        if k < 0:
            raise SeriesError("negative shift")
        num = _zeros(self.order + 1, self.wcap + 1)
        if k <= self.order:
            num[k:] = self.num[: self.order + 1 - k]
        return QSeries(num, self.den)

    def wshift(self, k: int) -> QSeries:
        """Multiply by ``w**k`` in symbolic mode (k >= 0)."""
        if k < 0:
            raise SeriesError("negative shift")
        num = _zeros(self.order + 1, self.wcap + 1)
        if k <= self.wcap:
            num[:, k:] = self.num[:, : self.wcap + 1 - k]
        return QSeries(num, self.den)

    def div_one_minus_q(self, k: int = 1, power: int = 1) -> QSeries:
        """Multiply by ``1/(1 - q**k)**power``."""
        if k < 1:
            raise SeriesError("k must be >= 1")
        return QSeries(_div_strided(self.num, k, power, axis=0), self.den)

    def mul_one_minus_q(self, k: int = 1, power: int = 1) -> QSeries:
        """Multiply by ``(1 - q**k)**power``."""
        if k < 1:
            raise SeriesError("k must be >= 1")
        num = self.num.copy()
        for _ in range(power):
            nxt = num.copy()
            nxt[k:] -= num[: self.order + 1 - k]
            num = nxt
        return QSeries(num, self.den)

    def inv(self) -> QSeries:
        return inv(self)

    def __repr__(self) -> str:
        parts = []
        for n in range(self.order + 1):
            c = self[n]
            if c:
                parts.append(f"({c})*q^{n}")
        body = " + ".join(parts) if parts else "0"
        return f"QSeries[{body} + O(q^{self.order + 1})]"


def _mul2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated bivariate Cauchy product of two (N+1, K+1) integer arrays."""
    n_max, k_max = a.shape[0] - 1, a.shape[1] - 1
    if np.count_nonzero(a) > np.count_nonzero(b):
        a, b = b, a
    out = _zeros(n_max + 1, k_max + 1)
    rows, cols = np.nonzero(a)
    for n, k in zip(rows.tolist(), cols.tolist()):
        out[n:, k:] += a[n, k] * b[: n_max + 1 - n, : k_max + 1 - k]
    return out


def _div_strided(num: np.ndarray, k: int, power: int, axis: int) -> np.ndarray:
    """Divide by (1 - x**k)**power along ``axis`` via strided prefix sums."""
    out = np.moveaxis(num.copy(), axis, 0)
    for _ in range(power):
        for r in range(min(k, out.shape[0])):
            out[r::k] = np.cumsum(out[r::k], axis=0)
    return np.moveaxis(out, 0, axis)


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def inv(a: QSeries) -> QSeries:
    """Multiplicative inverse modulo ``q**(order+1)`` by Newton iteration.

    The constant term must be a nonzero rational free of ``w``.
    """
    c0 = a.constant()
    if not c0 or c0.degree > 0:
        raise NotAUnit(f"constant term {c0!r} is not a nonzero rational")
    c = c0[0]
    prec = 0
    b = QSeries.from_terms(0, {0: 1 / c}, a.wcap)
    two = QSeries.from_terms(a.order, {0: 2}, a.wcap)
    while prec < a.order:
        prec = min(2 * prec + 1, a.order)
        b = b.extend(prec)
        b = b * (two.truncate(prec) - a.truncate(prec) * b)
    return b


def geom(k: int, order: int, wcap: int = 0) -> QSeries:
    """``1/(1 - q**k)`` truncated at ``order``."""
    if k < 1:
        raise SeriesError("geom needs k >= 1")
    if order < 0:
        raise SeriesError("order must be non-negative")
    num = _zeros(order + 1, wcap + 1)
    num[::k, 0] = 1
    return QSeries(num)


@dataclass(frozen=True)
class SeriesRing:
    """Shared truncation context: the q-order, and either a symbolic ``w`` or its value.

    With ``w=None`` the ring is symbolic in ``w`` with cap ``wcap``
    (default ``ceil(order/2)``, since a duplex column holds at least two
    cells).  With a rational ``w`` the coefficients are evaluated numbers.
    """

    order: int
    w: Fraction | None = None
    wcap: int = -1

    def __post_init__(self):
        if self.order < 0:
            raise SeriesError("order must be non-negative")
        if self.w is not None:
            object.__setattr__(self, "w", _as_fraction(self.w))
            object.__setattr__(self, "wcap", 0)
        elif self.wcap < 0:
            object.__setattr__(self, "wcap", (self.order + 1) // 2)

    @property
    def symbolic(self) -> bool:
        return self.w is None

    def zero(self) -> QSeries:
        return QSeries.zero(self.order, self.wcap)

    def const(self, c) -> QSeries:
        return QSeries.from_terms(self.order, {0: c}, self.wcap)

    def one(self) -> QSeries:
        return self.const(1)

    def monomial(self, c, qpow: int = 0, wpow: int = 0) -> QSeries:
        """``c * q**qpow * w**wpow`` in this ring."""
        if self.symbolic:
            return QSeries.from_terms(self.order, {(qpow, wpow): c}, self.wcap)
        return QSeries.from_terms(self.order, {qpow: _as_fraction(c) * self.w**wpow})

    def times_w(self, s: QSeries, k: int = 1) -> QSeries:
        """Multiply an element of this ring by ``w**k``."""
        if self.symbolic:
            return s.wshift(k)
        return s.scale(self.w**k)

    def series(self, terms: Mapping) -> QSeries:
        return QSeries.from_terms(self.order, terms, self.wcap)

    def geom(self, k: int) -> QSeries:
        return geom(k, self.order, self.wcap)

    def qt_zero(self) -> QTSeries:
        return QTSeries.zero(self.order, self.wcap)

    def lift(self, s: QSeries) -> QTSeries:
        return QTSeries.from_series(s)


class QTSeries:
    """Truncated series in ``q`` and ``t`` with coefficients in Q[w].

    ``num[m, n, k] / den`` is the coefficient of ``t**m q**n w**k``.  The
    entries with ``m > n`` are structurally zero (a column of height ``m``
    needs at least ``m`` cells), and constructors verify it.
    """

    __slots__ = ("order", "wcap", "num", "den")

    def __init__(self, num: np.ndarray, den: int = 1, *, check: bool = True):
        if num.ndim != 3 or num.shape[0] != num.shape[1]:
            raise SeriesError("QTSeries numerator must have shape (N+1, N+1, K+1)")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if check:
            for m in range(1, num.shape[0]):
                if num[m, :m].any():
                    raise SeriesError(f"nonzero coefficient of t^{m} below q^{m}")
        num, den = _normalized(num, int(den))
        self.order = num.shape[0] - 1
        self.wcap = num.shape[2] - 1
        self.num = _freeze(num)
        self.den = den

    @classmethod
    def zero(cls, order: int, wcap: int = 0) -> QTSeries:
        return cls(_zeros(order + 1, order + 1, wcap + 1), check=False)

    @classmethod
    def from_series(cls, s: QSeries) -> QTSeries:
        """Embed a t-free series as the ``t**0`` row."""
        num = _zeros(s.order + 1, s.order + 1, s.wcap + 1)
        num[0] = s.num
        return cls(num, s.den, check=False)

    @classmethod
    def from_rows(cls, rows: list[QSeries]) -> QTSeries:
        """Build from per-t-degree rows; missing rows are zero."""
        if not rows:
            raise SeriesError("need at least one row")
        order, wcap = rows[0].order, rows[0].wcap
        if len(rows) > order + 1:
            raise SeriesError("more t-rows than the truncation order allows")
        den = math.lcm(*(r.den for r in rows))
        num = _zeros(order + 1, order + 1, wcap + 1)
        for m, r in enumerate(rows):
            rows[0]._check(r)
            num[m] = r.num * (den // r.den)
        return cls(num, den)

    @classmethod
    def from_terms(cls, order: int, terms: Mapping, wcap: int = 0) -> QTSeries:
        """Build from ``{(n, m): v}`` or ``{(n, m, k): v}`` with n the q-degree, m the t-degree."""
        by_row: dict[int, dict] = {}
        for key, v in terms.items():
            n, m, k = key if len(key) == 3 else (*key, 0)
            by_row.setdefault(m, {})[n, k] = v
        rows = [QSeries.from_terms(order, by_row.get(m, {}), wcap) for m in range(order + 1)]
        return cls.from_rows(rows)

    def row(self, m: int) -> QSeries:
        """The coefficient of ``t**m``."""
        if not 0 <= m <= self.order:
            return QSeries.zero(self.order, self.wcap)
        return QSeries(self.num[m].copy(), self.den)

    def coeff(self, n: int, m: int, k: int = 0) -> Fraction:
        if not (0 <= n <= self.order and 0 <= m <= self.order):
            raise SeriesError("degree outside truncation")
        if k > self.wcap:
            return Fraction(0)
        return Fraction(self.num[m, n, k], self.den)

    def terms(self) -> dict[tuple[int, int, int], Fraction]:
        """Nonzero coefficients keyed by ``(n, m, k)``: q-degree, t-degree, w-degree."""
        ms, ns, ks = np.nonzero(self.num)
        return {
            (int(n), int(m), int(k)): Fraction(self.num[m, n, k], self.den)
            for m, n, k in zip(ms, ns, ks)
        }

    def _check(self, other: QTSeries) -> None:
        if not isinstance(other, QTSeries):
            raise TypeError(f"expected QTSeries, got {type(other).__name__}")
        if other.order != self.order or other.wcap != self.wcap:
            raise SeriesError("mismatched QTSeries truncation")

    def truncate(self, order: int) -> QTSeries:
        if order > self.order:
            raise SeriesError("cannot truncate to a higher order")
        return QTSeries(self.num[: order + 1, : order + 1].copy(), self.den, check=False)

    def at_w(self, w) -> QTSeries:
        return QTSeries.from_rows([self.row(m).at_w(w) for m in range(self.order + 1)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, QTSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.wcap == other.wcap
            and self.den == other.den
            and bool((self.num == other.num).all())
        )

    __hash__ = None

    def __neg__(self) -> QTSeries:
        return QTSeries(-self.num, self.den, check=False)

    def __add__(self, other: QTSeries) -> QTSeries:
        self._check(other)
        den = math.lcm(self.den, other.den)
        return QTSeries(
            self.num * (den // self.den) + other.num * (den // other.den), den, check=False
        )

    def __sub__(self, other: QTSeries) -> QTSeries:
        return self + (-other)

    def __mul__(self, other) -> QTSeries:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, QSeries):
            return self.times_series(other)
        self._check(other)
        size = self.order + 1
        out = _zeros(size, size, self.wcap + 1)
        for m1 in range(size):
            if not self.num[m1].any():
                continue
            for m2 in range(size - m1):
                if other.num[m2].any():
                    out[m1 + m2] += _mul2(self.num[m1], other.num[m2])
        return QTSeries(out, self.den * other.den, check=False)

    __rmul__ = __mul__

    def scale(self, c) -> QTSeries:
        c = _as_fraction(c)
        return QTSeries(self.num * c.numerator, self.den * c.denominator, check=False)

    def times_series(self, s: QSeries) -> QTSeries:
        """Multiply every t-row by a t-free series."""
        if s.order != self.order or s.wcap != self.wcap:
            raise SeriesError("mismatched truncation")
        out = _zeros(*self.num.shape)
        for m in range(self.order + 1):
            if self.num[m].any():
                out[m] = _mul2(self.num[m], s.num)
        return QTSeries(out, self.den * s.den, check=False)

    def shift_q(self, k: int) -> QTSeries:
        if k < 0:
            raise SeriesError("negative shift")
        out = _zeros(*self.num.shape)
        if k <= self.order:
            out[:, k:] = self.num[:, : self.order + 1 - k]
        return QTSeries(out, self.den, check=False)

    def shift_w(self, k: int) -> QTSeries:
        if k < 0:
            raise SeriesError("negative shift")
        out = _zeros(*self.num.shape)
        if k <= self.wcap:
            out[:, :, k:] = self.num[:, :, : self.wcap + 1 - k]
        return QTSeries(out, self.den, check=False)

    def times_qt(self, a: int = 1) -> QTSeries:
        """Multiply by ``(q*t)**a``."""
        if a < 0:
            raise SeriesError("negative power")
        size = self.order + 1
        out = _zeros(*self.num.shape)
        if a < size:
            out[a:, a:] = self.num[: size - a, : size - a]
        return QTSeries(out, self.den, check=False)

    def div_one_minus_q(self, k: int = 1, power: int = 1) -> QTSeries:
        """Multiply by ``1/(1 - q**k)**power``."""
        return QTSeries(_div_strided(self.num, k, power, axis=1), self.den, check=False)

    def div_one_minus_qkt(self, k: int = 1, power: int = 1) -> QTSeries:
        """Multiply by ``1/(1 - q**k * t)**power``.

        Row recurrence ``b[m] = a[m] + q**k * b[m-1]``.
        """
        if k < 1:
            raise SeriesError("k must be >= 1")
        size = self.order + 1
        out = self.num.copy()
        for _ in range(power):
            for m in range(1, size):
                if k < size:
                    out[m, k:] += out[m - 1, : size - k]
        return QTSeries(out, self.den, check=False)

    def at_t1(self) -> QSeries:
        return QSeries(self.num.sum(axis=0), self.den)

    def __repr__(self) -> str:
        return f"QTSeries(order={self.order}, wcap={self.wcap}, terms={len(self.terms())})"


def subst_qt(a: QTSeries) -> QTSeries:
    """``A(q, t) -> A(q, q*t)``: the ``t**m`` row is shifted up by ``q**m``."""
    size = a.order + 1
    out = _zeros(*a.num.shape)
    for m in range(size):
        if 2 * m < size:
            out[m, 2 * m :] = a.num[m, m : size - m]
    return QTSeries(out, a.den, check=False)


@dataclass(frozen=True)
class TJet:
    """Second-order jet ``f0 + f1*u + f2*u**2 (mod u**3)`` of a function of ``t = 1 + u``."""

    f0: QSeries
    f1: QSeries
    f2: QSeries

    def __post_init__(self):
        self.f0._check(self.f1)
        self.f0._check(self.f2)

    @property
    def order(self) -> int:
        return self.f0.order

    @classmethod
    def constant(cls, s: QSeries) -> TJet:
        z = QSeries.zero(s.order, s.wcap)
        return cls(s, z, z)

    @classmethod
    def variable(cls, order: int, wcap: int = 0) -> TJet:
        """The jet of ``t`` itself: (1, 1, 0)."""
        one = QSeries.from_terms(order, {0: 1}, wcap)
        return cls(one, one, QSeries.zero(order, wcap))

    def __add__(self, other: TJet) -> TJet:
        return TJet(self.f0 + other.f0, self.f1 + other.f1, self.f2 + other.f2)

    def __sub__(self, other: TJet) -> TJet:
        return TJet(self.f0 - other.f0, self.f1 - other.f1, self.f2 - other.f2)

    def __mul__(self, other: TJet) -> TJet:
        return jet_mul(self, other)

    def components(self) -> tuple[QSeries, QSeries, QSeries]:
        return self.f0, self.f1, self.f2


def jet_mul(a: TJet, b: TJet) -> TJet:
    if a.order != b.order:
        raise SeriesError(f"mismatched jet orders {a.order} and {b.order}")
    return TJet(
        a.f0 * b.f0,
        a.f0 * b.f1 + a.f1 * b.f0,
        a.f0 * b.f2 + a.f1 * b.f1 + a.f2 * b.f0,
    )


def jet_at_1(a: QTSeries) -> TJet:
    """Jet at ``t = 1`` of ``a(t)/t``.

    Component ``j`` is the sum over m of ``binom(m-1, j) * [t**m] a``, so
    ``a(t)/t = f0 + f1*(t-1) + f2*(t-1)**2 + ...``.  Requires a zero ``t**0``
    row.
    """
    if a.num[0].any():
        raise SeriesError("jet_at_1 needs a series without a t**0 term")
    size = a.order + 1
    weights = np.array(
        [[math.comb(m - 1, j) if m >= 1 else 0 for m in range(size)] for j in range(3)],
        dtype=object,
    )
    parts = np.tensordot(weights, a.num, axes=(1, 0))
    return TJet(*(QSeries(parts[j].copy(), a.den) for j in range(3)))
