"""Exact integer and rational primitives.

All rationals are :class:`fractions.Fraction`, which is always kept in
lowest terms with a positive denominator.
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction
from math import comb

__all__ = [
    "BernoulliConvention",
    "alternating_binomial_tail",
    "bernoulli",
    "bernoulli_in_convention",
    "binomial",
    "c_coeff",
    "format_rational",
    "parse_rational",
    "power_sum",
]

Rational = Fraction


def format_rational(x: Fraction) -> str:
    """Render as ``p/q``, or ``p`` when the denominator is 1."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    if any(ch.isspace() for ch in text):
        raise ValueError(f"whitespace in rational literal {text!r}")
    return Fraction(text)


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 for k outside [0, n]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


class BernoulliConvention(enum.Enum):
    STANDARD = "standard"
    SIGNED_TILDE = "signed-tilde"


# B_0..B_{len-1}; only ever extended, never rewritten.
_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """B_m with B_1 = -1/2 (coefficients of t/(e^t - 1)).

    Uses sum_{k=0}^{m} C(m+1, k) B_k = 0. Computing B_m caches B_0..B_m.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    cache = _bernoulli_cache
    if m < len(cache):
        return cache[m]
    with _bernoulli_lock:
        while len(cache) <= m:
            n = len(cache)
            if n >= 3 and n % 2 == 1:
                cache.append(Fraction(0))
                continue
            s = sum(comb(n + 1, k) * cache[k] for k in range(n))
            cache.append(-s / (n + 1))
    return cache[m]


def bernoulli_in_convention(m: int, conv: BernoulliConvention) -> Fraction:
    """B_m in either convention; the tilde numbers come from t e^t/(e^t - 1)."""
    b = bernoulli(m)
    if BernoulliConvention(conv) is BernoulliConvention.SIGNED_TILDE and m % 2:
        return -b
    return b


def c_coeff(m: int, p: int) -> Fraction:
    """c_(m,p) = sum_{q=1}^{p} (-1)^q C(p,q) q^m."""
    if m < 1 or p < 1:
        raise ValueError("m and p must be positive")
    return Fraction(sum((-1) ** q * comb(p, q) * q**m for q in range(1, p + 1)))


def power_sum(q: int, j: int, inclusive: bool = True) -> Fraction:
    """Sum of r^j for 1 <= r <= q (inclusive) or r < q, via Bernoulli numbers."""
    if q < 0 or j < 1:
        raise ValueError("need q >= 0 and j >= 1")
    if q == 0:
        return Fraction(0)
    total = Fraction(0)
    for m in range(j + 1):
        b = bernoulli(m)
        if inclusive and m % 2:
            b = -b
        total += b * comb(j + 1, m) * q ** (j + 1 - m)
    return total / (j + 1)


def alternating_binomial_tail(p: int, r: int) -> Fraction:
    """sum_{q=r+1}^{p} (-1)^q C(p,q), summed term by term.

    Equals (-1)^(r-1) C(p-1, r).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if not 0 <= r <= p - 1:
        raise ValueError(f"r must lie in [0, {p - 1}], got {r}")
    return Fraction(sum((-1) ** q * comb(p, q) for q in range(r + 1, p + 1)))
