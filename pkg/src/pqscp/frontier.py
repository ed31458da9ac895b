"""The maximal set Z_m, its top z_m, and the argmax set Y_m with y_m = min Y_m.

floor(log_p m - b rho) is always obtained by exact powering, never through
floating-point logarithms: an off-by-one there lands exactly on the frontier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import LatticePoint, Params, h, h_compare, part_value
from .errors import OutOfRange
from .intmath import ilog


def _check_m(m: int) -> None:
    if m < 1:
        raise OutOfRange(f"m must be a positive integer, got {m}")


def zeta(params: Params, m: int, b: int) -> LatticePoint:
    """The element of Z_m whose q-exponent is ``b``: largest a with p^a q^b <= m."""
    _check_m(m)
    if b < 0:
        raise OutOfRange("b must be non-negative")
    qb = params.q**b
    if qb > m:
        raise OutOfRange(f"b={b} exceeds floor(log_q m)")
    return LatticePoint(ilog(m // qb, params.p), b)


@dataclass(frozen=True)
class FrontierSet:
    params: Params
    m: int
    points: tuple[LatticePoint, ...]  # indexed by b
    values: tuple[int, ...] = field(init=False)
    hvals: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(part_value(self.params, pt) for pt in self.points))
        object.__setattr__(self, "hvals", tuple(h(self.params, *pt) for pt in self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def z_set(params: Params, m: int) -> FrontierSet:
    _check_m(m)
    p, q = params.p, params.q
    pts = []
    qb, b = 1, 0
    while qb <= m:
        pts.append(LatticePoint(ilog(m // qb, p), b))
        qb *= q
        b += 1
    return FrontierSet(params, m, tuple(pts))


def z_max(params: Params, m: int) -> LatticePoint:
    fs = z_set(params, m)
    return max(fs.points, key=lambda pt: part_value(params, pt))


def y_set(params: Params, m: int) -> tuple[LatticePoint, ...]:
    """Points of Z_m maximizing h, in increasing part value (so y_min comes first)."""
    best: list[LatticePoint] = []
    for pt in z_set(params, m):
        if not best:
            best = [pt]
            continue
        c = h_compare(params, pt, best[0])
        if c > 0:
            best = [pt]
        elif c == 0:
            best.append(pt)
    return tuple(sorted(best, key=lambda pt: part_value(params, pt)))


def y_min(params: Params, m: int) -> LatticePoint:
    return y_set(params, m)[0]


@dataclass
class RecurrenceReport:
    m: int
    qm_ok: bool
    pm_ok: bool
    pm_adds_q_power: bool
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_z_recurrences(params: Params, m: int) -> RecurrenceReport:
    """Compare Z_qm and Z_pm against their recurrences in terms of Z_m."""
    _check_m(m)
    p, q = params.p, params.q
    zm = set(z_set(params, m))
    violations = []

    zqm = set(z_set(params, q * m))
    qm_expected = {LatticePoint(a, b + 1) for a, b in zm} | {LatticePoint(ilog(q * m, p), 0)}
    qm_ok = zqm == qm_expected
    if not qm_ok:
        violations.append(f"Z_(q*{m}) = {sorted(zqm)} but recurrence gives {sorted(qm_expected)}")

    zpm = set(z_set(params, p * m))
    n = ilog(m, q)
    # floor(1/rho + log_q m) == floor(log_q m)  iff  q^(n+1) > p*m
    adds = q ** (n + 1) <= p * m
    pm_expected = {LatticePoint(a + 1, b) for a, b in zm}
    if adds:
        pm_expected.add(LatticePoint(0, n + 1))
    pm_ok = zpm == pm_expected
    if not pm_ok:
        violations.append(f"Z_(p*{m}) = {sorted(zpm)} but recurrence gives {sorted(pm_expected)}")
    return RecurrenceReport(m, qm_ok, pm_ok, adds, violations)
