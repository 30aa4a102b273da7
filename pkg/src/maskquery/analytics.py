"""Exact and approximate expected-query-count formulas.

All closed-form expectations are computed in exact rational arithmetic and
converted to floating point only at output boundaries.  `Rational` is the
standard-library Fraction: arbitrary precision, always canonical (reduced,
positive denominator).
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import NamedTuple

import gmpy2
from gmpy2 import mpz

Rational = Fraction


def ceil_log2(x: int) -> int:
    """Smallest j with 2^j >= x, by integer bit operations only."""
    if x < 1:
        raise ValueError(f"ceil_log2 needs x >= 1, got {x}")
    return (x - 1).bit_length()


class _ExpectedTrialsTable:
    """Bottom-up solver for the expected-trials recurrence.

    With m undecided bits, one trial reveals a binomial(m, 1/2) subset of
    them, so E(m) = 2^-m * sum_h C(m,h) * (1 + E(h)) with E(0) = 0; the
    h = m term is moved to the left-hand side before dividing.

    Values are kept as integers over one growing common denominator (the
    running lcm of the 2^k - 1 divisors) because the reduced denominators
    have tens of thousands of digits by m = 500; per-entry normalization
    would dominate the runtime.
    """

    def __init__(self):
        self._scaled = [mpz(0)]   # scaled[h] = E(h) * denom
        self._denom = mpz(1)
        self._cache = {0: Fraction(0)}
        self._lock = threading.Lock()

    def _extend(self, target: int) -> None:
        scaled, denom = self._scaled, self._denom
        for m in range(len(scaled), target + 1):
            d = (mpz(1) << m) - 1
            growth = d // gmpy2.gcd(denom, d)
            if growth > 1:
                for h in range(1, m):
                    scaled[h] *= growth
                denom *= growth
            total = (mpz(1) << m) * denom
            for h in range(1, m):
                total += gmpy2.bincoef(m, h) * scaled[h]
            value, rem = divmod(total, d)
            if rem:  # denominator exceeds the running lcm: grow it once more
                extra = d // gmpy2.gcd(total, d)
                for h in range(1, m):
                    scaled[h] *= extra
                denom *= extra
                value = (total * extra) // d
            scaled.append(value)
        self._denom = denom

    def value(self, m: int) -> Fraction:
        with self._lock:
            got = self._cache.get(m)
            if got is not None:
                return got
            if m >= len(self._scaled):
                self._extend(m)
            result = Fraction(int(self._scaled[m]), int(self._denom))
            self._cache[m] = result
            return result


_TABLE = _ExpectedTrialsTable()


def t_q(m: int) -> Fraction:
    """Exact expected number of quantum queries for a weight-m mask."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return _TABLE.value(m)


def t_q_series(m: int, tolerance: float = 1e-12) -> float:
    """Independent check of t_q: expected rounds until each of m independent
    fair bits has shown a one, as the tail sum of survival probabilities
    sum_t [1 - (1 - 2^-t)^m].

    The t-th term is at most m * 2^-t, so truncation at terms below
    tolerance/2 bounds the dropped tail by the tolerance.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    total = 1.0  # t = 0 term: 1 - 0^m
    t = 1
    while m * 2.0 ** (-t) >= tolerance / 2:
        total -= math.expm1(m * math.log1p(-(2.0 ** (-t))))
        t += 1
    return total


def t_q_approx(m: int) -> float:
    """Logarithmic approximation 2 + log2(m) of the quantum expectation."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return 2.0 + math.log2(m)


def _check_range(n: int, m: int) -> None:
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")


def t_cb(n: int, m: int) -> int:
    """Worst-case queries of the repeated classical binary search:
    1 + sum_{h=1..m} ceil(log2(n - h + 1))."""
    _check_range(n, m)
    return 1 + sum(ceil_log2(n - h + 1) for h in range(1, m + 1))


def t_cs(n: int, m: int) -> Fraction:
    """Exact expected queries of the classical sequential search, averaged
    over all C(n, m) masks of weight m."""
    _check_range(n, m)
    first = sum(h * math.comb(h - 2, m - 1) for h in range(m + 1, n + 1))
    second = sum((n - h) * math.comb(n - 2 - h, m - 1 - h) for h in range(m))
    return Fraction(first + second, math.comb(n, m))


def classical_lower_bound_m1(n: int) -> int:
    """Information-theoretic floor on classical queries for weight-1 masks."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return 1 + ceil_log2(n)


class EntropyBudget(NamedTuple):
    total: float
    global_part: float
    local_part: float


def entropy_budget_m1(n: int) -> EntropyBudget:
    """Information content of the weight-1 problem: log2(n) bits identify the
    mask (global), one bit identifies the output labeling (local)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    g = math.log2(n)
    return EntropyBudget(1.0 + g, g, 1.0)
