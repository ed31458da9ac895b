"""Exact integer helpers: floor logarithms, integer roots, perfect powers.

Nothing here touches floating point except to seed a starting estimate that
is then corrected with exact powering.
"""

import math


def ilog(n: int, base: int) -> int:
    """Largest ``e`` with ``base**e <= n``.  Requires ``n >= 1`` and ``base >= 2``."""
    if n < 1:
        raise ValueError(f"ilog needs n >= 1, got {n}")
    if base < 2:
        raise ValueError(f"ilog needs base >= 2, got {base}")
    e = max(0, int((n.bit_length() - 1) / math.log2(base)) - 1)
    pw = base**e
    while pw > n:
        e -= 1
        pw //= base
    while pw * base <= n:
        e += 1
        pw *= base
    return e


def floor_log_ratio(num: int, den: int, base: int) -> int:
    """Largest integer ``e`` (possibly negative) with ``base**e <= num/den``."""
    if num <= 0 or den <= 0:
        raise ValueError("floor_log_ratio needs a positive ratio")
    if num >= den:
        return ilog(num // den, base)
    # smallest f >= 1 with base**f >= ceil(den/num)
    c = -(-den // num)
    return -(ilog(c - 1, base) + 1)


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of ``n >= 0``."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power_base(n: int) -> tuple[int, int]:
    """Return ``(c, s)`` with ``n == c**s`` and ``c`` not itself a perfect power."""
    if n < 2:
        raise ValueError("perfect_power_base needs n >= 2")
    for s in range(n.bit_length(), 1, -1):
        c = iroot(n, s)
        if c >= 2 and c**s == n:
            return c, s
    return n, 1


def is_power_of(n: int, c: int) -> bool:
    return n >= 1 and c**ilog(n, c) == n


def strip_factor(n: int, f: int) -> tuple[int, int]:
    """Divide ``f`` out of ``n`` as often as possible; return ``(exponent, rest)``."""
    e = 0
    while n % f == 0:
        n //= f
        e += 1
    return e, n
