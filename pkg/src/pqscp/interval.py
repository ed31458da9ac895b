"""Closed rational intervals with outward-rounded logarithms.

Endpoints are :class:`fractions.Fraction`.  Logarithms come from mpmath's
low-level ``libmp`` routines with directed rounding (the same primitives its
interval context is built on), widened by one extra ulp.  The libmp calls take
precision and rounding mode explicitly, so nothing here mutates global mpmath
state and the helpers are safe to call from several threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import libmp

Number = int | Fraction


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if not man:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -val if sign else val


def _ulp(x) -> Fraction:
    _, man, exp, _ = x
    return Fraction(2) ** int(exp) if man else Fraction(0)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid)

    def contains(self, x: Number) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def _coerce(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains 0")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def floor(self) -> int | None:
        """The common floor of every point, or None when the interval straddles an integer."""
        f = math.floor(self.lo)
        return f if math.floor(self.hi) == f else None

    def frac(self) -> "Interval":
        """Fractional part; requires a decided floor."""
        f = self.floor()
        if f is None:
            raise ValueError("fractional part is ambiguous at this precision")
        return self - f

    def less_than(self, other) -> bool | None:
        """Certified ``self < other``: True, False, or None when undecided."""
        o = self._coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None

    def round_out(self, prec: int) -> "Interval":
        """Quantize endpoints outward onto the grid 2**-prec."""
        scale = 1 << prec
        lo = math.floor(self.lo * scale)
        hi = -math.floor(-self.hi * scale)
        return Interval(Fraction(lo, scale), Fraction(hi, scale))

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"


def ln_ratio(num: int, den: int, prec: int) -> Interval:
    """Interval containing ``ln(num/den)`` for positive integers."""
    if num <= 0 or den <= 0:
        raise ValueError("ln_ratio needs a positive ratio")
    if num == den:
        return Interval.point(0)
    lo = libmp.mpf_log(libmp.from_rational(num, den, prec, libmp.round_floor), prec, libmp.round_floor)
    hi = libmp.mpf_log(libmp.from_rational(num, den, prec, libmp.round_ceiling), prec, libmp.round_ceiling)
    return Interval(_mpf_to_fraction(lo) - _ulp(lo), _mpf_to_fraction(hi) + _ulp(hi))


def ln(iv: Interval, prec: int) -> Interval:
    """Interval containing ``ln(x)`` for every ``x`` in a positive interval."""
    if iv.lo <= 0:
        raise ValueError("ln needs a positive interval")
    lo_iv = ln_ratio(iv.lo.numerator, iv.lo.denominator, prec)
    hi_iv = ln_ratio(iv.hi.numerator, iv.hi.denominator, prec)
    return Interval(lo_iv.lo, hi_iv.hi)


def log_base(num: int, den: int, base: int, prec: int) -> Interval:
    """Interval containing ``log_base(num/den)``."""
    return (ln_ratio(num, den, prec) / ln_ratio(base, 1, prec)).round_out(prec)
