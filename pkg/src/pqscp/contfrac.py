"""Continued fraction of rho = log q / log p with certified digits.

Candidate partial quotients are read off an outward-rounded interval for rho;
each prefix is then certified exactly: rho lies strictly between h_n/k_n and
(h_n + h_{n-1})/(k_n + k_{n-1}), and ``h/k < rho`` iff ``p**h < q**k``.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import Params
from .errors import BudgetExceeded, InvariantViolation
from .interval import Interval, log_base
from .intmath import ilog

DEFAULT_MAX_PREC = int(os.environ.get("PQSCP_MAX_PREC", 1 << 15))
# integer bracketing of rho is cheap while convergent denominators stay below this
BRACKET_K_LIMIT = 1 << 22
# beyond this denominator the enclosure alone certifies a digit (powering q**k is too costly)
EXACT_CERT_K_LIMIT = 1 << 18


def rho_side(params: Params, h: int, k: int) -> int:
    """Exact sign of ``k*rho - h``."""
    lhs, rhs = params.q**k, params.p**h
    return (lhs > rhs) - (lhs < rhs)


@lru_cache(maxsize=256)
def rho_bounds(params: Params, prec: int) -> Interval:
    """Outward-rounded interval for rho at roughly ``prec`` bits."""
    return log_base(params.q, 1, params.p, prec)


class Rho:
    """Read-only handle onto exact and certified evaluations of rho."""

    def __init__(self, params: Params):
        self.params = params

    def interval(self, bits: int) -> Interval:
        return rho_interval(self.params, bits)

    def side(self, h: int, k: int) -> int:
        return rho_side(self.params, h, k)

    def floor_mul(self, b: int) -> int:
        """Exact floor(b * rho) for b >= 0."""
        return ilog(self.params.q**b, self.params.p) if b else 0

    def __float__(self) -> float:
        return float(rho_bounds(self.params, 64))


def _common_digits(lo: Fraction, hi: Fraction, limit: int) -> list[int]:
    digits = []
    x, y = lo, hi
    while len(digits) < limit:
        fx, fy = math.floor(x), math.floor(y)
        if fx != fy:
            break
        digits.append(fx)
        x, y = x - fx, y - fy
        if x == 0 or y == 0:
            break
        # 1/x reverses the order of the endpoints
        x, y = 1 / y, 1 / x
    # the last shared digit can still be an artefact of the endpoint rationals
    return digits[:-1]


def _convergents(digits) -> tuple[list[int], list[int]]:
    hs, ks = [], []
    h1, h2, k1, k2 = 1, 0, 0, 1  # h_{-1}, h_{-2}, k_{-1}, k_{-2}
    for a in digits:
        h0, k0 = a * h1 + h2, a * k1 + k2
        hs.append(h0)
        ks.append(k0)
        h1, h2, k1, k2 = h0, h1, k0, k1
    return hs, ks


@dataclass(frozen=True)
class BelowTerm:
    """One best-from-below approximation H/K = k_{2s,t}-mediant of the even convergent 2s."""

    H: int
    K: int
    s: int
    t: int

    @property
    def is_principal(self) -> bool:
        return self.t == 0


@dataclass(frozen=True)
class ConvergentTable:
    """Certified partial quotients a_0..a_{n-1} of rho with principal convergents h_i/k_i."""

    params: Params
    partial_quotients: tuple[int, ...]
    h: tuple[int, ...]
    k: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.partial_quotients)

    def eps_form(self, i: int) -> tuple[int, int]:
        """``(c, v)`` with eps_i = c + v*rho exactly."""
        if i % 2 == 0:
            return -self.h[i], self.k[i]
        return self.h[i], -self.k[i]

    def eps(self, i: int, prec: int = 96) -> Interval:
        """Certified interval for eps_i = |k_i rho - h_i|."""
        c, v = self.eps_form(i)
        bits = prec + self.k[i].bit_length() + 4
        return (c + v * rho_bounds(self.params, bits)).round_out(prec)

    def mediant(self, s: int, t: int) -> tuple[int, int]:
        """(h_{2s,t}, k_{2s,t}) = (h_2s + t h_2s+1, k_2s + t k_2s+1)."""
        return self.h[2 * s] + t * self.h[2 * s + 1], self.k[2 * s] + t * self.k[2 * s + 1]

    def levels(self) -> int:
        """Number of even levels s whose mediant range [0, a_{2s+2}) is fully known."""
        return max(0, (self.depth - 1) // 2)

    def deepen(self, depth: int) -> "ConvergentTable":
        return self if depth <= self.depth else expand_rho(self.params, depth)


def expand_rho(params: Params, depth_budget: int, max_prec: int | None = None) -> ConvergentTable:
    """Certified first ``depth_budget`` partial quotients of rho."""
    if depth_budget < 1:
        raise ValueError("depth_budget must be >= 1")
    max_prec = max_prec or DEFAULT_MAX_PREC
    prec = 64
    while True:
        iv = rho_bounds(params, prec)
        digits = _common_digits(iv.lo, iv.hi, depth_budget + 1)
        if len(digits) >= depth_budget:
            digits = digits[:depth_budget]
            hs, ks = _convergents(digits)
            if _certify(params, hs, ks):
                return ConvergentTable(params, tuple(digits), tuple(hs), tuple(ks))
        prec *= 2
        if prec > max_prec:
            raise BudgetExceeded(f"could not certify {depth_budget} partial quotients within {max_prec} bits")


def _certify(params: Params, hs, ks) -> bool:
    """Check rho lies in the cylinder of every prefix, by exact integer comparisons.

    Prefixes whose denominators pass EXACT_CERT_K_LIMIT are left to the
    enclosure: their digits were shared by both outward-rounded endpoints.
    """
    h_prev, k_prev = 1, 0
    for i, (hh, kk) in enumerate(zip(hs, ks)):
        if kk + k_prev > EXACT_CERT_K_LIMIT:
            break
        inner = rho_side(params, hh, kk)
        outer = rho_side(params, hh + h_prev, kk + k_prev)
        # even index: h/k < rho < next; odd index: reversed
        want = 1 if i % 2 == 0 else -1
        if inner != want or outer != -want:
            return False
        h_prev, k_prev = hh, kk
    return True


_table_cache: dict[Params, ConvergentTable] = {}
_table_lock = threading.Lock()


def table_for(params: Params, kmax: int) -> ConvergentTable:
    """A table holding an even index 2S with k_2S > kmax, plus index 2S+1.

    Every level s with k_2s <= kmax then has a_{2s+2}, h_{2s+1}, k_{2s+1} available.
    Tables are cached per params and only ever replaced by deeper ones.
    """
    with _table_lock:
        table = _table_cache.get(params)
    depth = table.depth if table else 8
    while True:
        if table is None or table.depth < depth:
            table = expand_rho(params, depth)
        evens = [i for i in range(0, table.depth - 1, 2) if table.k[i] > kmax]
        if evens:
            break
        depth += 4
    with _table_lock:
        cur = _table_cache.get(params)
        if cur is None or cur.depth < table.depth:
            _table_cache[params] = table
    return table


def below_stream(table: ConvergentTable) -> list[BelowTerm]:
    """Even convergents merged with their mediants, in increasing K."""
    out = []
    for s in range(table.levels()):
        for t in range(table.partial_quotients[2 * s + 2]):
            hh, kk = table.mediant(s, t)
            out.append(BelowTerm(hh, kk, s, t))
    return out


def below_terms_upto(params: Params, kmax: int) -> list[BelowTerm]:
    """Every term of the (K_n) stream with K <= kmax."""
    table = table_for(params, kmax)
    return [bt for bt in below_stream(table) if bt.K <= kmax]


def in_below_stream(params: Params, k: int) -> bool:
    return any(bt.K == k for bt in below_terms_upto(params, k))


def frac_K(table: ConvergentTable, s: int, t: int, prec: int = 96) -> Interval:
    """Certified {k_{2s,t} rho}, computed both as eps_2s - t eps_2s+1 and eps_2s+2 + (a_2s+2 - t) eps_2s+1."""
    a = table.partial_quotients[2 * s + 2]
    if not 0 <= t <= a:
        raise ValueError(f"t must lie in [0, {a}]")
    e0, e1, e2 = (table.eps(2 * s + j, prec) for j in range(3))
    first = e0 - t * e1
    second = e2 + (a - t) * e1
    if not first.overlaps(second):
        raise InvariantViolation(f"fractional-part identities disagree at s={s}, t={t}")
    return first.intersect(second)


def rho_interval(params: Params, bits: int, method: str = "auto") -> Interval:
    """Interval of width <= 2**-bits containing rho.

    ``bracket`` brackets rho between consecutive convergents certified by
    comparing p**h with q**k; ``mpmath`` uses directed-rounding logarithms.
    ``auto`` brackets while the convergent denominators stay cheap.
    """
    if bits < 1:
        raise ValueError("bits must be >= 1")
    if method in ("auto", "bracket"):
        target = 1 << bits
        depth = 4
        while True:
            table = expand_rho(params, depth)
            for i in range(table.depth - 1):
                if table.k[i] * table.k[i + 1] >= target:
                    lo = Fraction(table.h[i], table.k[i])
                    hi = Fraction(table.h[i + 1], table.k[i + 1])
                    return Interval(min(lo, hi), max(lo, hi))
            if table.k[-1] > BRACKET_K_LIMIT:
                if method == "bracket":
                    raise BudgetExceeded(f"bracketing to {bits} bits needs denominators beyond {BRACKET_K_LIMIT}")
                break
            depth += 4
    iv = rho_bounds(params, bits + 8)
    if iv.width > Fraction(1, 1 << bits):
        raise BudgetExceeded("directed-rounding interval too wide")
    return iv
