"""The boundary sequence ell and the functions phi, beta, alpha, alpha+ and m_ell.

ell_b is the least a for which p^a q^b is the only maximizer of h below
itself.  Values are read off alpha at the best-from-below denominators K_n;
floors of alpha are certified by exact integer inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .contfrac import BelowTerm, below_terms_upto, rho_bounds, table_for
from .core import LatticePoint, Params, h
from .errors import BudgetExceeded, OutOfRange
from .frontier import y_set
from .interval import Interval, ln, ln_ratio, log_base
from .intmath import floor_log_ratio, ilog

BETA_MAX_K = 10**6
_ESCALATION = (64, 128, 256)


def _frac_mul_rho(params: Params, b: int, prec: int) -> Interval:
    """Certified {b rho} for b >= 1."""
    hb = ilog(params.q**b, params.p)
    return (b * rho_bounds(params, prec + b.bit_length() + 4) - hb).round_out(prec)


def _phi_argument(params: Params, a: int, b: int) -> Fraction:
    return 1 - params.r / params.p**a * (1 - Fraction(1, params.q**b))


def phi(params: Params, a: int, b: int, prec: int = 96) -> Interval:
    """Certified phi_{a,b} = -log_p(1 - r/p^a (1 - q^-b)); zero when b = 0."""
    if a < 0 or b < 0:
        raise OutOfRange("a and b must be non-negative")
    x = _phi_argument(params, a, b)
    return log_base(x.denominator, x.numerator, params.p, prec)


def _frac_below_phi(params: Params, a: int, term: BelowTerm) -> bool:
    """{K rho} < phi_{a,K}, equivalently h(a, K) < h(a + floor(K rho), 0)."""
    for prec in _ESCALATION:
        got = _frac_mul_rho(params, term.K, prec).less_than(phi(params, a, term.K, prec))
        if got is not None:
            return got
    return h(params, a, term.K) < h(params, a + term.H, 0)


def beta(params: Params, a: int, max_k: int = BETA_MAX_K) -> int:
    """Least j >= 1 with {j rho} < phi_{a,j}; the scan runs over the K_n stream only."""
    if a < 0:
        raise OutOfRange("a must be non-negative")
    kmax = 64
    seen = 0
    while True:
        terms = below_terms_upto(params, kmax)
        for term in terms[seen:]:
            if _frac_below_phi(params, a, term):
                return term.K
        seen = len(terms)
        if kmax >= max_k:
            raise BudgetExceeded(f"beta({a}) exceeds K = {max_k}")
        kmax = min(4 * kmax, max_k)


def alpha_ratio(params: Params, b: int) -> tuple[int, int]:
    """``(num, den)`` with alpha(b) = log_p(num / den)."""
    if b < 1:
        raise OutOfRange("alpha needs b >= 1")
    p, q = params.p, params.q
    qb = q**b
    return (q - p) * (qb - 1), (q - 1) * (qb - p ** ilog(qb, p))


@dataclass(frozen=True)
class AlphaValue:
    value: Interval
    floor: int


def alpha_floor(params: Params, b: int) -> int:
    """Exact floor(alpha(b)): largest a with p^a (q-1)(q^b - p^floor(b rho)) <= (q-p)(q^b - 1)."""
    num, den = alpha_ratio(params, b)
    return floor_log_ratio(num, den, params.p)


def alpha(params: Params, b: int, prec: int = 96) -> AlphaValue:
    num, den = alpha_ratio(params, b)
    return AlphaValue(log_base(num, den, params.p, prec), floor_log_ratio(num, den, params.p))


def alpha_plus(params: Params, b: int, prec: int = 96) -> Interval:
    """log_p((q-p)/((q-1) ln p)) + log_p(1/{b rho}) + {b rho}/2."""
    if b < 1:
        raise OutOfRange("alpha+ needs b >= 1")
    p, q = params.p, params.q
    lnp = ln_ratio(p, 1, prec)
    x = _frac_mul_rho(params, b, prec)
    first = (ln_ratio(q - p, q - 1, prec) - ln(lnp, prec)) / lnp
    second = -ln(x, prec) / lnp
    return (first + second + x / 2).round_out(prec)


def alpha_plus_error_bound(params: Params, b: int, prec: int = 96, as_published: bool = False) -> Interval:
    """Upper bound on alpha+(b) - alpha(b) at b in the K_n stream.

    The second term bounds -log_p(1 - q^-b).  In base p that is
    1/((q^b - 1) ln p); ``as_published=True`` drops the ln p, which is only
    valid when p >= 3 and fails at the first K_n for p = 2.
    """
    x = _frac_mul_rho(params, b, prec)
    lnp = ln_ratio(params.p, 1, prec)
    tail = Fraction(1, params.q**b - 1)
    second = Interval.point(tail) if as_published else tail / lnp
    return (lnp / 6 * x * x + second).round_out(prec)


@lru_cache(maxsize=4096)
def ell_at_K(params: Params, K: int) -> int:
    """floor(alpha(K)) for K in the K_n stream, pre-filtered through alpha+.

    alpha lies in (alpha+ - bound, alpha+); if that window sits inside one
    integer cell the floor is read off, otherwise the exact integer test runs.
    """
    prec = 64 + 2 * K.bit_length()
    ap = alpha_plus(params, K, prec)
    err = alpha_plus_error_bound(params, K, prec)
    lo = (ap.lo - err.hi).__floor__()
    hi = -(-ap.hi).__floor__() - 1  # largest integer strictly below ap.hi
    if lo == hi:
        return lo
    return alpha_floor(params, K)


@lru_cache(maxsize=64)
def first_jump(params: Params) -> int:
    return beta(params, 0)


def ell_value(params: Params, b: int) -> int:
    if b < 0:
        raise OutOfRange("b must be non-negative")
    if b < first_jump(params):
        return 0
    table = table_for(params, b)
    s = max(i for i in range(0, table.depth, 2) if table.k[i] <= b) // 2
    t = (b - table.k[2 * s]) // table.k[2 * s + 1]
    _, K = table.mediant(s, t)
    return ell_at_K(params, K)


def ell_prefix(params: Params, n: int) -> list[int]:
    """[ell_0, ..., ell_n]."""
    return [ell_value(params, b) for b in range(n + 1)]


def ell_by_definition(params: Params, b: int, a_max: int = 64) -> int:
    """min a with Y_{p^a q^b} = {(a, b)}, straight from the frontier module."""
    for a in range(a_max + 1):
        m = params.p**a * params.q**b
        if set(y_set(params, m)) == {LatticePoint(a, b)}:
            return a
    raise BudgetExceeded(f"ell_{b} exceeds {a_max}")


@dataclass(frozen=True)
class EllTable:
    params: Params
    jumps: tuple[tuple[int, int], ...]

    def value(self, b: int) -> int:
        """ell_b, valid for b below the last listed jump plus its plateau."""
        val = 0
        for j, v in self.jumps:
            if j > b:
                break
            val = v
        return val


def jump_indices(params: Params, count: int) -> list[tuple[int, int]]:
    """First ``count`` jumps (j_k, ell_{j_k}) via j_0 = beta(0), j_{k+1} = beta(ell_{j_k})."""
    if count < 1:
        raise OutOfRange("count must be >= 1")
    out = []
    a = 0
    for _ in range(count):
        j = beta(params, a)
        a = alpha_floor(params, j)
        out.append((j, a))
    return out


def ell_table(params: Params, count: int) -> EllTable:
    return EllTable(params, tuple(jump_indices(params, count)))


@dataclass(frozen=True)
class MEllResult:
    m_ell: int
    K: int
    ell: int
    evaluations: int


def m_ell_detail(params: Params, m: int) -> MEllResult:
    """Largest b with p^{ell_b} q^b <= m, by stepping even convergents then bisecting mediants."""
    if m < 1:
        raise OutOfRange("m must be >= 1")
    p, q = params.p, params.q
    n = ilog(m, q)
    if n == 0:
        return MEllResult(0, 0, 0, 0)
    table = table_for(params, n)
    evals = 0

    def fits(K: int) -> tuple[bool, int]:
        nonlocal evals
        evals += 1
        ell = ell_at_K(params, K)
        return p**ell * q**K <= m, ell

    ok, ell = fits(1)
    if not ok:
        return MEllResult(0, 0, 0, evals)
    s = 0
    while table.k[2 * s + 2] <= n:
        ok, e2 = fits(table.k[2 * s + 2])
        if not ok:
            break
        s, ell = s + 1, e2
    a_next = table.partial_quotients[2 * s + 2]
    t_lo, t_hi = 0, min(a_next - 1, (n - table.k[2 * s]) // table.k[2 * s + 1])
    while t_lo < t_hi:
        mid = (t_lo + t_hi + 1) // 2
        ok, e2 = fits(table.mediant(s, mid)[1])
        if ok:
            t_lo, ell = mid, e2
        else:
            t_hi = mid - 1
    _, K = table.mediant(s, t_lo)
    if t_lo > 0:
        ell = ell_at_K(params, K)
    K_next = table.mediant(s, t_lo + 1)[1] if t_lo + 1 < a_next else table.k[2 * s + 2]
    b = ilog(m // p**ell, q)
    return MEllResult(min(b, K_next - 1), K, ell, evals)


def m_ell(params: Params, m: int) -> int:
    return m_ell_detail(params, m).m_ell


def m_ell_bruteforce(params: Params, m: int) -> int:
    """Definition scan: largest b with p^{ell_b} q^b <= m, ell_b computed per b."""
    best = 0
    b = 0
    while params.q**b <= m:
        if params.p ** ell_value(params, b) * params.q**b <= m:
            best = b
        b += 1
    return best
