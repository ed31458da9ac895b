"""O(log log m) computation of z_m, y_m and G(m) through the sequence (b_i).

b_0 = 0 and b_{i+1} is the least b > b_i with zeta(b) > zeta(b_i).  The gaps
d_i = b_i - b_{i-1} are best-from-below denominators of rho and are produced a
convergent level at a time: first n_s copies of k_2s, then at most one mediant
k_{2s,t}.  The remainder r = {log_p m - b rho} is carried as the exact linear
form log_p m - a - b rho, so an engine only ever has to decide signs and
floors of such forms.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field

from .arith import Ambiguous, ExactEngine, FixedPointEngine, Form, ModKEngine
from .contfrac import DEFAULT_MAX_PREC, ConvergentTable, table_for
from .core import LatticePoint, Params, h
from .errors import InvariantViolation, OutOfRange, PrecisionEscalationFailed
from .ell import m_ell
from .frontier import zeta
from .intmath import ilog

MODES = ("fixedpoint", "modK", "exact")
DEBUG = bool(os.environ.get("PQSCP_DEBUG"))


@dataclass(frozen=True)
class Step:
    d: int
    kind: str  # "even-convergent" or "mediant"
    multiplicity: int
    s: int
    t: int


@dataclass(frozen=True)
class Branch:
    """Outcome of the two tests at one convergent level."""

    s: int
    step1: bool
    n: int
    step2: bool
    t: int


@dataclass
class FastState:
    i: int = 0
    s: int = 0
    a: int = 0
    b: int = 0
    trace: list[Step] = field(default_factory=list)

    @property
    def r(self) -> Form:
        return Form(-self.a, 1, -self.b)


@dataclass
class FastResult:
    params: Params
    m: int
    B: int
    b: int
    trace: list[Step]
    b_sequence: list[int]
    branches: list[Branch]
    iterations: int
    mode: str
    precision: int | None
    escalations: int

    @property
    def d_sequence(self) -> list[int]:
        return [st.d for st in self.trace for _ in range(st.multiplicity)]


def iteration_bound(params: Params, m: int) -> int:
    """2 + floor(log2 log_q m), exactly; 0 when m < q (no level is ever entered)."""
    n = ilog(m, params.q)
    if n == 0:
        return 0
    return 2 + n.bit_length() - 1


def start_precision(params: Params, m: int) -> int:
    return 34 + 2 * max(ilog(m, params.q), 1).bit_length()


def _eps(table: ConvergentTable, i: int) -> Form:
    c, v = table.eps_form(i)
    return Form(c, 0, v)


def _iterate(params: Params, m: int, B: int, engine, table: ConvergentTable, rule: str):
    st = FastState(a=ilog(m, params.p))
    bseq = [0]
    branches = []
    iterations = 0

    while True:
        s = st.s
        k0 = table.k[2 * s]
        # no gap at this level or beyond fits below B
        if st.b + k0 > B:
            return st, bseq, branches, iterations
        iterations += 1
        e0, e1 = _eps(table, 2 * s), _eps(table, 2 * s + 1)
        h0 = table.h[2 * s]
        br = [s, False, 0, False, 0]

        # step 1: n_s copies of k_2s
        if engine.sign(st.r - e0) >= 0:
            n = engine.floor_div(st.r, e0)
            br[1], br[2] = True, n
            b_prev = st.b
            if b_prev + n * k0 > B:
                keep = (B - b_prev) // k0
                if keep:
                    st.trace.append(Step(k0, "even-convergent", keep, s, 0))
                    bseq.extend(b_prev + j * k0 for j in range(1, keep + 1))
                st.b, st.a = b_prev + keep * k0, st.a - keep * h0
                branches.append(Branch(*br))
                return st, bseq, branches, iterations
            st.trace.append(Step(k0, "even-convergent", n, s, 0))
            bseq.extend(b_prev + j * k0 for j in range(1, n + 1))
            st.b, st.a, st.i = b_prev + n * k0, st.a - n * h0, st.i + n

        # step 2: at most one mediant k_{2s,t}
        a_next = table.partial_quotients[2 * s + 2]
        if rule == "listing":
            fire = engine.sign(st.r - (e0 - e1)) >= 0
        else:
            fire = engine.sign(st.r - (e0 - e1.scale(a_next))) >= 0
        if fire:
            t = engine.ceil_div(e0 - st.r, e1)
            if not 1 <= t <= a_next:
                raise InvariantViolation(f"t_s = {t} outside [1, {a_next}] at level {s}")
            br[3], br[4] = True, t
            hh, kk = table.mediant(s, t)
            if st.b + kk > B:
                branches.append(Branch(*br))
                return st, bseq, branches, iterations
            st.trace.append(Step(kk, "mediant", 1, s, t))
            st.b, st.a, st.i = st.b + kk, st.a - hh, st.i + 1
            bseq.append(st.b)
        branches.append(Branch(*br))
        st.s += 1


def run_fast(
    params: Params,
    m: int,
    B: int | None = None,
    mode: str = "fixedpoint",
    *,
    max_prec: int | None = None,
    fallback: bool = True,
    rule: str = "general",
    prec: int | None = None,
) -> FastResult:
    """Largest b_i <= B (B defaults to floor(log_q m)), with the trace of gaps.

    ``rule="listing"`` fires the mediant step only when t_s = 1 would do,
    exactly as the published listing reads; the default accepts any
    t_s <= a_{2s+2}.  Interval modes restart from scratch at doubled
    precision when a comparison is ambiguous, and switch to the exact engine
    past ``max_prec`` unless ``fallback`` is off.
    """
    if m < 1:
        raise OutOfRange("m must be >= 1")
    N = ilog(m, params.q)
    if B is None:
        B = N
    if not 0 <= B <= N:
        raise OutOfRange(f"B must lie in [0, {N}]")
    if mode not in MODES:
        raise OutOfRange(f"unknown mode {mode!r}")
    table = table_for(params, max(B, 1))

    max_prec = max_prec or DEFAULT_MAX_PREC
    P = prec or start_precision(params, m)
    escalations = 0
    while True:
        if mode == "exact":
            engine = ExactEngine(params, m)
        elif mode == "modK":
            engine = ModKEngine(params, m, P)
        else:
            engine = FixedPointEngine(params, m, P)
        try:
            st, bseq, branches, its = _iterate(params, m, B, engine, table, rule)
            break
        except Ambiguous:
            escalations += 1
            P *= 2
            if P > max_prec:
                if not fallback:
                    raise PrecisionEscalationFailed(f"comparison unresolved at {max_prec} bits for m={m}")
                mode = "exact"
    return FastResult(params, m, B, st.b, st.trace, bseq, branches, its, engine.name, engine.precision, escalations)


def z_fast(params: Params, m: int, mode: str = "fixedpoint") -> LatticePoint:
    res = run_fast(params, m, None, mode)
    return zeta(params, m, res.b)


def y_fast(params: Params, m: int, mode: str = "fixedpoint", check: bool | None = None) -> LatticePoint:
    ml = m_ell(params, m)
    res = run_fast(params, m, ml, mode)
    y = zeta(params, m, res.b)
    if DEBUG if check is None else check:
        # y_m = p^abar z_mbar with abar = floor(log_p m - m_ell rho)
        abar = ilog(m // params.q**ml, params.p)
        z = z_fast(params, m // params.p**abar, mode)
        if LatticePoint(z.a + abar, z.b) != y:
            raise InvariantViolation(f"y_{m} = {y} but p^{abar} z_mbar = {z}")
    return y


def g_fast(params: Params, m: int, mode: str = "fixedpoint") -> int:
    return h(params, *y_fast(params, m, mode))


def kn_representation(params: Params, N: int, mode: str = "fixedpoint") -> list[tuple[int, int]]:
    """N as a sum of K_n terms: the gaps of the (b_i) run for m = q^N, aggregated."""
    if N < 1:
        raise OutOfRange("N must be >= 1")
    res = run_fast(params, params.q**N, N, mode)
    counts: Counter[int] = Counter()
    for st in res.trace:
        counts[st.d] += st.multiplicity
    if sum(d * c for d, c in counts.items()) != N:
        raise InvariantViolation(f"representation of {N} does not sum back")
    return sorted(counts.items())


def b_sequence_bruteforce(params: Params, m: int, B: int | None = None) -> list[int]:
    """(b_i) straight from its definition, over b <= B."""
    N = ilog(m, params.q)
    B = N if B is None else B
    vals = [params.p ** zeta(params, m, b).a * params.q**b for b in range(B + 1)]
    out = [0]
    for b in range(1, B + 1):
        if vals[b] > vals[out[-1]]:
            out.append(b)
    return out
