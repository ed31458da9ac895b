"""Arithmetic back ends for the fast iteration.

Every quantity the iteration touches is a linear form ``c + u*L + v*rho`` with
integer coefficients, where ``L = log_p m``.  Its sign is the sign of
``p**c * m**u * q**v - 1``, which is what the exact engine computes.  The two
interval engines evaluate forms as integers in units of ``1/D`` and refuse to
answer when the enclosure straddles a decision boundary.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .contfrac import rho_bounds, table_for
from .core import Params
from .interval import log_base


class Form(NamedTuple):
    c: int
    u: int
    v: int

    def __add__(self, other):
        return Form(self.c + other.c, self.u + other.u, self.v + other.v)

    def __sub__(self, other):
        return Form(self.c - other.c, self.u - other.u, self.v - other.v)

    def scale(self, n: int) -> "Form":
        return Form(n * self.c, n * self.u, n * self.v)


class Ambiguous(Exception):
    """An interval engine could not decide a comparison at its precision."""


def exact_sign(params: Params, m: int, f: Form) -> int:
    """Sign of c + u log_p m + v rho, by comparing p^c m^u q^v with 1."""
    p, q = params.p, params.q
    num = den = 1
    for base, e in ((p, f.c), (m, f.u), (q, f.v)):
        if e > 0:
            num *= base**e
        elif e < 0:
            den *= base ** (-e)
    return (num > den) - (num < den)


class ExactEngine:
    name = "exact"
    precision = None

    def __init__(self, params: Params, m: int):
        self.params = params
        self.m = m
        self._approx = None

    def sign(self, f: Form) -> int:
        return exact_sign(self.params, self.m, f)

    def _estimate(self, x: Form, y: Form) -> int:
        if self._approx is None:
            self._approx = FixedPointEngine(self.params, self.m, 64)
        xl, xh = self._approx.bounds(x)
        yl, yh = self._approx.bounds(y)
        return int(Fraction(xl + xh, max(yl + yh, 1)))

    def floor_div(self, x: Form, y: Form) -> int:
        """Largest n with x - n*y >= 0, for y > 0."""
        n = self._estimate(x, y)
        while self.sign(x - y.scale(n)) < 0:
            n -= 1
        while self.sign(x - y.scale(n + 1)) >= 0:
            n += 1
        return n

    def ceil_div(self, x: Form, y: Form) -> int:
        """Smallest n with n*y - x >= 0, for y > 0."""
        n = self._estimate(x, y)
        while self.sign(y.scale(n) - x) < 0:
            n += 1
        while self.sign(y.scale(n - 1) - x) >= 0:
            n -= 1
        return n


class _ScaledEngine:
    """Forms as integer intervals in units of 1/D, with exact zero tests on contact."""

    name = "scaled"
    D: int
    rho_lo: int
    rho_hi: int
    L_lo: int
    L_hi: int

    def __init__(self, params: Params, m: int):
        self.params = params
        self.m = m

    def _set_L(self, prec: int) -> None:
        iv = log_base(self.m, 1, self.params.p, prec)
        self.L_lo = math.floor(iv.lo * self.D)
        self.L_hi = math.ceil(iv.hi * self.D)

    def bounds(self, f: Form) -> tuple[int, int]:
        base = f.c * self.D
        lo = hi = base
        for coef, a, b in ((f.u, self.L_lo, self.L_hi), (f.v, self.rho_lo, self.rho_hi)):
            if coef >= 0:
                lo += coef * a
                hi += coef * b
            else:
                lo += coef * b
                hi += coef * a
        return lo, hi

    def sign(self, f: Form) -> int:
        lo, hi = self.bounds(f)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if exact_sign(self.params, self.m, f) == 0:
            return 0
        raise Ambiguous(f)

    def _quotient(self, x: Form, y: Form) -> tuple[Fraction, Fraction]:
        xl, xh = self.bounds(x)
        yl, yh = self.bounds(y)
        if yl <= 0:
            raise Ambiguous(y)
        cands = [Fraction(a, b) for a in (xl, xh) for b in (yl, yh)]
        return min(cands), max(cands)

    def floor_div(self, x: Form, y: Form) -> int:
        lo, hi = self._quotient(x, y)
        fl, fh = math.floor(lo), math.floor(hi)
        if fl == fh:
            return fl
        if fh == fl + 1 and exact_sign(self.params, self.m, x - y.scale(fh)) == 0:
            return fh
        raise Ambiguous(x, y)

    def ceil_div(self, x: Form, y: Form) -> int:
        lo, hi = self._quotient(x, y)
        cl, ch = math.ceil(lo), math.ceil(hi)
        if cl == ch:
            return cl
        if ch == cl + 1 and exact_sign(self.params, self.m, x - y.scale(cl)) == 0:
            return cl
        raise Ambiguous(x, y)


class FixedPointEngine(_ScaledEngine):
    """D = 2**P; rho and log_p m from directed-rounding logarithms."""

    name = "fixedpoint"

    def __init__(self, params: Params, m: int, P: int):
        super().__init__(params, m)
        self.precision = P
        self.D = 1 << P
        rho = rho_bounds(params, P + 8)
        self.rho_lo = math.floor(rho.lo * self.D)
        self.rho_hi = math.ceil(rho.hi * self.D)
        self._set_L(P + m.bit_length().bit_length() + 8)


class ModKEngine(_ScaledEngine):
    """D = K for an even-index convergent H/K of rho with K >= 2**P.

    Then K*rho lies in (H, H + 1): rho enters only as the integer H, and the
    fractional parts become residues modulo K.
    """

    name = "modK"

    def __init__(self, params: Params, m: int, P: int):
        super().__init__(params, m)
        self.precision = P
        table = table_for(params, 1 << P)
        i = next(i for i in range(0, table.depth, 2) if table.k[i] >= 1 << P)
        self.H, self.K = table.h[i], table.k[i]
        self.D = self.K
        self.rho_lo, self.rho_hi = self.H, self.H + 1
        self._set_L(self.K.bit_length() + m.bit_length().bit_length() + 8)
