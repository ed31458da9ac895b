"""Parts, chains and the closed-form weight of the heaviest chain.

A part ``p**a * q**b`` is stored as its exponent pair ``(a, b)``; values are
materialized on demand.  Everything in this module is exact integer or
rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import CapExceeded, Dependent, OutOfRange
from .intmath import is_power_of, perfect_power_base, strip_factor

DEFAULT_ENUM_CAP = 10**6


@dataclass(frozen=True)
class Params:
    """A validated pair ``2 <= p < q`` of multiplicatively independent integers."""

    p: int
    q: int

    @property
    def r(self) -> Fraction:
        """The constant (q - p) / (pq - p), always strictly between 0 and 1/p."""
        return Fraction(self.q - self.p, self.p * self.q - self.p)

    @property
    def r_num(self) -> int:
        return self.r.numerator

    @property
    def r_den(self) -> int:
        return self.r.denominator

    @property
    def rho(self):
        """Certified access to log q / log p (see :class:`pqscp.contfrac.Rho`)."""
        from .contfrac import Rho

        return Rho(self)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


def validate_params(p: int, q: int) -> Params:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise OutOfRange(f"p and q must be integers, got {p!r}, {q!r}")
    if p < 2 or q <= p:
        raise OutOfRange(f"need 2 <= p < q, got p={p}, q={q}")
    base, _ = perfect_power_base(p)
    if is_power_of(q, base):
        raise Dependent(f"{p} and {q} are both powers of {base}")
    params = Params(p, q)
    assert 0 < params.r < Fraction(1, p)
    return params


class LatticePoint(NamedTuple):
    """Exponent pair of the part p**a * q**b."""

    a: int
    b: int


def part_value(params: Params, pt: tuple[int, int]) -> int:
    a, b = pt
    return params.p**a * params.q**b


def exponents(params: Params, n: int) -> LatticePoint | None:
    """Inverse of :func:`part_value`; None if ``n`` is not of the form p**a q**b."""
    if n < 1:
        return None
    a, rest = strip_factor(n, params.p)
    b, rest = strip_factor(rest, params.q)
    return LatticePoint(a, b) if rest == 1 else None


@dataclass(frozen=True)
class ChainPartition:
    """A strictly decreasing divisibility chain, stored greatest part first."""

    params: Params
    parts: tuple[LatticePoint, ...]

    def __post_init__(self):
        for (a0, b0), (a1, b1) in zip(self.parts, self.parts[1:]):
            if not (a1 <= a0 and b1 <= b0 and (a1, b1) != (a0, b0)):
                raise ValueError(f"({a1},{b1}) does not strictly divide ({a0},{b0})")

    @classmethod
    def from_values(cls, params: Params, values: Iterable[int]) -> "ChainPartition":
        pts = []
        for v in values:
            pt = exponents(params, v)
            if pt is None:
                raise ValueError(f"{v} is not of the form {params.p}^a {params.q}^b")
            pts.append(pt)
        return cls(params, tuple(pts))

    @property
    def values(self) -> list[int]:
        return [part_value(self.params, pt) for pt in self.parts]

    @property
    def weight(self) -> int:
        return sum(self.values)

    def __len__(self) -> int:
        return len(self.parts)


def is_scp(params: Params, chain: Sequence[int]) -> bool:
    """True iff ``chain`` is a strictly decreasing (p,q)-ary divisibility chain."""
    try:
        values = [int(v) for v in chain]
    except (TypeError, ValueError):
        return False
    if any(exponents(params, v) is None for v in values):
        return False
    return all(x > y and x % y == 0 for x, y in zip(values, values[1:]))


def weight(params: Params, chain) -> int:
    """Sum of the parts; accepts a ChainPartition or any iterable of part values."""
    if isinstance(chain, ChainPartition):
        return chain.weight
    return sum(int(v) for v in chain)


def h(params: Params, a: int, b: int) -> int:
    """Weight of the heaviest chain whose greatest part is p**a q**b."""
    p, q = params.p, params.q
    qb = q**b
    return (qb - 1) // (q - 1) + (p ** (a + 1) - 1) // (p - 1) * qb


def h_alt(params: Params, a: int, b: int) -> Fraction:
    """Same quantity as :func:`h`, through the form built on the constant r."""
    p, q = params.p, params.q
    qb = q**b
    return Fraction(p, p - 1) * (p**a * qb - params.r * qb) - Fraction(1, q - 1)


def h_compare(params: Params, x: tuple[int, int], y: tuple[int, int]) -> int:
    """Sign of ``h(x) - h(y)`` from the integer criterion, never evaluating h.

    h(a,b) > h(a',b')  iff  p(q-1)(p^a q^b - p^a' q^b') > (q-p)(q^b - q^b').
    """
    p, q = params.p, params.q
    (a, b), (a2, b2) = x, y
    lhs = p * (q - 1) * (p**a * q**b - p**a2 * q**b2)
    rhs = (q - p) * (q**b - q**b2)
    return (lhs > rhs) - (lhs < rhs)


def heaviest_chain(params: Params, a: int, b: int) -> ChainPartition:
    if a < 0 or b < 0:
        raise OutOfRange("exponents must be non-negative")
    top = [LatticePoint(i, b) for i in range(a, -1, -1)]
    tail = [LatticePoint(0, j) for j in range(b - 1, -1, -1)]
    return ChainPartition(params, tuple(top + tail))


def count_max_chains(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise OutOfRange("exponents must be non-negative")
    return math.comb(a + b, b)


def enumerate_max_chains(params: Params, a: int, b: int, cap: int = DEFAULT_ENUM_CAP) -> list[ChainPartition]:
    """All chains with a+b+1 parts and greatest part p**a q**b (unit lattice steps)."""
    total = count_max_chains(a, b)
    if total > cap:
        raise CapExceeded(f"{total} chains exceed the cap of {cap}")
    n = a + b
    chains = []
    for q_steps in itertools.combinations(range(n), b):
        # walk down from (a, b); positions in q_steps lower b, the rest lower a
        cur_a, cur_b = a, b
        pts = [LatticePoint(a, b)]
        q_set = set(q_steps)
        for i in range(n):
            if i in q_set:
                cur_b -= 1
            else:
                cur_a -= 1
            pts.append(LatticePoint(cur_a, cur_b))
        chains.append(ChainPartition(params, tuple(pts)))
    return chains
