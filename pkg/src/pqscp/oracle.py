"""Reference computations of G(m), kept independent of the fast path.

Three routes: the divide-by-p-or-q recursion, a scan of h over the maximal set
Z_m, and a branch-and-bound search over every strictly chained partition.
"""

from __future__ import annotations

from .core import ChainPartition, LatticePoint, Params, h, heaviest_chain
from .errors import CapExceeded, InvariantViolation, OutOfRange
from .frontier import z_set

EXHAUSTIVE_CAP = 5000
LITERAL_CAP = 10**6


def g_recursive(params: Params, m: int) -> int:
    """G(m) from G(m) = max(G(m-1), 1 + p G(m/p), 1 + q G(m/q)).

    The G(m-1) branch only matters through the largest multiple of p (resp. q)
    not exceeding m, and G is non-decreasing, so the recursion is run in the
    collapsed form G(m) = 1 + max(p G(m // p), q G(m // q)) with G(0) = 0.
    The memo holds the O(log^2 m) reachable values m // (p^a q^b).
    """
    if m < 1:
        raise OutOfRange("m must be >= 1")
    p, q = params.p, params.q
    # reachable arguments, then a bottom-up pass (no recursion depth limit)
    seen = {m}
    stack = [m]
    while stack:
        n = stack.pop()
        for child in (n // p, n // q):
            if child > 1 and child not in seen:
                seen.add(child)
                stack.append(child)
    memo = {0: 0, 1: 1}
    for n in sorted(seen):
        if n > 1:
            memo[n] = 1 + max(p * memo[n // p], q * memo[n // q])
    return memo[m]


def g_recursive_literal(params: Params, m: int, cap: int = LITERAL_CAP) -> list[int]:
    """Table [G(0), G(1), ..., G(m)] filled exactly as the three-branch recursion reads."""
    if m > cap:
        raise CapExceeded(f"literal recursion limited to m <= {cap}")
    p, q = params.p, params.q
    g = [0] * (m + 1)
    if m >= 1:
        g[1] = 1
    for n in range(2, m + 1):
        best = g[n - 1]
        if n % p == 0:
            best = max(best, 1 + p * g[n // p])
        if n % q == 0:
            best = max(best, 1 + q * g[n // q])
        g[n] = best
    return g


def g_frontier_scan(params: Params, m: int) -> tuple[int, set[LatticePoint]]:
    """Max of h over Z_m and the full set of maximizers."""
    if m < 1:
        raise OutOfRange("m must be >= 1")
    fs = z_set(params, m)
    best = max(fs.hvals)
    return best, {pt for pt, hv in zip(fs.points, fs.hvals) if hv == best}


def _elements_upto(params: Params, m: int) -> list[tuple[int, LatticePoint]]:
    p, q = params.p, params.q
    out = []
    qb, b = 1, 0
    while qb <= m:
        v, a = qb, 0
        while v <= m:
            out.append((v, LatticePoint(a, b)))
            v *= p
            a += 1
        qb *= q
        b += 1
    out.sort(reverse=True)
    return out


def exhaustive_search(params: Params, m: int, cap: int = EXHAUSTIVE_CAP) -> tuple[int, ChainPartition]:
    """Heaviest strictly chained partition with parts <= m, by depth-first search.

    A chain below a part c adds at most (c - 1) / (p - 1) more, which is the
    pruning bound.
    """
    if m < 1:
        raise OutOfRange("m must be >= 1")
    if m > cap:
        raise CapExceeded(f"exhaustive search limited to m <= {cap}")
    p = params.p
    elems = _elements_upto(params, m)
    best_w = 0
    best_chain: list[LatticePoint] = []
    path: list[LatticePoint] = []

    def dfs(value: int, pt: LatticePoint, w: int) -> None:
        nonlocal best_w, best_chain
        path.append(pt)
        if w > best_w:
            best_w, best_chain = w, list(path)
        if w + (value - 1) // (p - 1) > best_w:
            for v, child in elems:
                if v < value and child.a <= pt.a and child.b <= pt.b:
                    dfs(v, child, w + v)
        path.pop()

    for v, pt in elems:
        if v + (v - 1) // (p - 1) <= best_w:
            break
        dfs(v, pt, v)

    chain = ChainPartition(params, tuple(best_chain))
    top = chain.parts[0]
    shape = heaviest_chain(params, *top)
    if chain.parts != shape.parts or best_w != h(params, *top):
        raise InvariantViolation(f"heaviest chain below {m} is not the staircase shape at {top}")
    return best_w, chain


def g_exhaustive(params: Params, m: int, cap: int = EXHAUSTIVE_CAP) -> int:
    return exhaustive_search(params, m, cap)[0]
