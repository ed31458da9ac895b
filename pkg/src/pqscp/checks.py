"""Per-m invariant checks shared by ``pqscp verify`` and the test suite."""

from __future__ import annotations

from fractions import Fraction

from .core import Params, h, part_value
from .fastalg import iteration_bound, run_fast, y_fast, z_fast
from .frontier import y_set, z_max
from .oracle import g_frontier_scan, g_recursive


def structural_violations(params: Params, m: int, *, y=None) -> list[str]:
    """|Y_m| in {1,2}, Y_m below z_m in b, and G(m) < y_m p/(p-1)."""
    out = []
    ys = y_set(params, m) if y is None else y
    if len(ys) not in (1, 2):
        out.append(f"m={m}: |Y_m| = {len(ys)}")
    zb = z_max(params, m).b
    if any(pt.b > zb for pt in ys):
        out.append(f"m={m}: Y_m has a point above b(z_m) = {zb}")
    g = h(params, *ys[0])
    if not Fraction(g) < Fraction(part_value(params, ys[0]) * params.p, params.p - 1):
        out.append(f"m={m}: G(m) = {g} breaks the upper bound")
    return out


def dense_violations(params: Params, m: int, mode: str = "fixedpoint") -> list[str]:
    """Oracle triple equality plus fast-path agreement and structure at one m."""
    out = []
    g_rec = g_recursive(params, m)
    g_scan, _ = g_frontier_scan(params, m)
    ys = y_set(params, m)
    yf = y_fast(params, m, mode)
    g_f = h(params, *yf)
    if not g_rec == g_scan == g_f:
        out.append(f"m={m}: recursive {g_rec}, frontier {g_scan}, fast {g_f}")
    if yf != ys[0]:
        out.append(f"m={m}: y_fast {yf} but y_min {ys[0]}")
    zf = z_fast(params, m, mode)
    if zf != z_max(params, m):
        out.append(f"m={m}: z_fast {zf} but z_max {z_max(params, m)}")
    its = run_fast(params, m, None, mode).iterations
    if its > iteration_bound(params, m):
        out.append(f"m={m}: {its} iterations exceed {iteration_bound(params, m)}")
    out.extend(structural_violations(params, m, y=ys))
    return out


def sample_violations(params: Params, m: int, mode: str = "fixedpoint") -> list[str]:
    """Fast path against the frontier scan only, for m too large to recurse densely."""
    out = []
    g_scan, _ = g_frontier_scan(params, m)
    ys = y_set(params, m)
    yf = y_fast(params, m, mode)
    if h(params, *yf) != g_scan or yf != ys[0]:
        out.append(f"m={m}: fast gives {yf}, frontier scan {ys[0]}")
    if z_fast(params, m, mode) != z_max(params, m):
        out.append(f"m={m}: z_fast disagrees with z_max")
    out.extend(structural_violations(params, m, y=ys))
    return out
