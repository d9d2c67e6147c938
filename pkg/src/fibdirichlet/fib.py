"""Exact Fibonacci arithmetic and the rank of apparition.

Fast-doubling Fibonacci values, modular Fibonacci, the rank of apparition
(least index m with n | F(m)) with its prime-power shortcut, entry exponents,
primitive prime extraction, exact Fibonacci lcms, and exact logarithms of big
integers.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Optional

from .numtheory import (
    BudgetExceededError,
    DEFAULT_FACTOR_BUDGET,
    Factorization,
    factorize,
    is_prime,
)

_LOG2_GOLDEN = math.log2((1 + math.sqrt(5.0)) / 2)


def fib(n: int) -> int:
    """F(n) by fast doubling: F(0)=0, F(1)=1, F(n+1)=F(n)+F(n−1)."""
    if n < 0:
        raise ValueError("fib expects n >= 0")
    a, b = 0, 1  # F(0), F(1)
    for bit in bin(n)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a


@dataclass(frozen=True)
class FibValue:
    """An index-value pair of the Fibonacci sequence, validated on creation.

    Pairs satisfy strong divisibility: gcd of any two held values is the
    value at the gcd of their indexes.
    """

    index: int
    value: int

    def __post_init__(self) -> None:
        if self.value != fib(self.index):
            raise ValueError(f"{self.value} is not F({self.index})")

    @classmethod
    def at(cls, n: int) -> "FibValue":
        return cls(n, fib(n))


def fib_mod(n: int, m: int) -> int:
    """F(n) mod m by doubling; m ≥ 2."""
    if m < 2:
        raise ValueError("fib_mod expects modulus >= 2")
    a, b = 0, 1
    for bit in bin(n)[2:]:
        c = a * (2 * b - a) % m
        d = (a * a + b * b) % m
        if bit == "1":
            a, b = d, (c + d) % m
        else:
            a, b = c, d
    return a


def _rank_scan(n: int) -> int:
    # The scan is bounded by 6n, a classical Pisano-period bound the source
    # material leaves implicit; exceeding it means a bug, not a bad input.
    a, b = 1 % n, 1 % n  # F(1), F(2)
    for k in range(1, 6 * n + 1):
        if a == 0:
            return k
        a, b = b, (a + b) % n
    raise RuntimeError(f"no rank of apparition found for {n} within 6n steps")


class RankCache:
    """Memoized n → rank of apparition and n → entry exponent.

    Behaves as one logical map under concurrent use: get-or-compute runs
    under a single lock, so results never depend on interleaving.
    """

    def __init__(self) -> None:
        self._ranks: dict[int, int] = {}
        self._entries: dict[int, int] = {}
        self._lock = threading.Lock()

    def rank(self, n: int) -> int:
        with self._lock:
            r = self._ranks.get(n)
            if r is None:
                r = _rank_scan(n)
                self._ranks[n] = r
            return r

    def entry_exponent(self, n: int) -> int:
        with self._lock:
            e = self._entries.get(n)
            if e is not None:
                return e
        r = self.rank(n)
        v = fib(r)
        e = 0
        while v % n == 0:
            v //= n
            e += 1
        with self._lock:
            self._entries[n] = e
        return e

    def preload(self, n: int, rank: int, entry_exponent: int) -> None:
        with self._lock:
            self._ranks[n] = rank
            self._entries[n] = entry_exponent

    def known(self) -> dict[int, tuple[int, Optional[int]]]:
        with self._lock:
            return {n: (r, self._entries.get(n)) for n, r in self._ranks.items()}


DEFAULT_RANK_CACHE = RankCache()


def rank(n: int, cache: RankCache = DEFAULT_RANK_CACHE) -> int:
    """Rank of apparition: least m ≥ 1 with n | F(m).

    Computed by scanning consecutive Fibonacci residues mod n up to 6n.
    Duality: n | F(m) if and only if rank(n) | m.
    """
    if n < 1:
        raise ValueError("rank expects n >= 1")
    return cache.rank(n)


def entry_exponent(n: int, cache: RankCache = DEFAULT_RANK_CACHE) -> int:
    """Largest m with n^m | F(rank(n)); defined for n ≥ 2."""
    if n < 2:
        raise ValueError("entry_exponent expects n >= 2")
    return cache.entry_exponent(n)


def rank_prime_power(p: int, k: int, cache: RankCache = DEFAULT_RANK_CACHE) -> int:
    """rank(p^k) via the prime-power shortcut.

    p = 2 is exceptional: 3, 6, then 3·2^(k−2).  For odd p the rank stays at
    rank(p) while k ≤ entry exponent of p and then grows by a factor p per step.
    """
    if k < 1:
        raise ValueError("rank_prime_power expects k >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        if k == 1:
            return 3
        if k == 2:
            return 6
        return 3 * 2 ** (k - 2)
    e = cache.entry_exponent(p)
    if k <= e:
        return cache.rank(p)
    return p ** (k - e) * cache.rank(p)


# --- Fibonacci factorization with a fail-fast scale guard ---

_FIB_FACTORS: dict[int, Factorization] = {}


def max_factorable_index(budget: int) -> int:
    """Largest Fibonacci index the given work budget could plausibly factor.

    Rho splits a composite m in ~m^(1/4) iterations, so the budget affords
    values of about 4·log2(budget) bits; F(n) has about 0.694·n bits.
    """
    return int(4 * math.log2(budget + 2) / _LOG2_GOLDEN)


def fib_factorization(n: int, budget: Optional[int] = None) -> Factorization:
    """Factorization of F(n), memoized; fails fast when F(n) is beyond scale."""
    cached = _FIB_FACTORS.get(n)
    if cached is not None:
        return cached
    units = DEFAULT_FACTOR_BUDGET if budget is None else budget
    if n > max_factorable_index(units):
        raise BudgetExceededError(
            f"F({n}) is beyond the factable scale for a budget of {units} "
            f"work units (index cap {max_factorable_index(units)})"
        )
    f = factorize(fib(n), budget=units)
    _FIB_FACTORS[n] = f
    return f


def preload_fib_factorization(n: int, factors: tuple[tuple[int, int], ...]) -> None:
    _FIB_FACTORS[n] = Factorization(fib(n), factors)


def known_fib_factorizations() -> dict[int, Factorization]:
    return dict(_FIB_FACTORS)


def divisor_has_rank(d: int, n: int) -> bool:
    """For d | F(n): True iff rank(d) is exactly n.

    rank(d) divides n, so it suffices that d divides no F(n/q) for the
    maximal proper divisors n/q of n; this avoids rank scans for large d.
    """
    if d == 1:
        return n == 1
    for p, _ in factorize(n).factors:
        if fib_mod(n // p, d) == 0:
            return False
    return True


def primitive_primes(n: int, budget: Optional[int] = None) -> list[tuple[int, int]]:
    """Primes p | F(n) with rank(p) = n, each with its exponent in F(n).

    The exponent of such a p in F(n) equals its entry exponent, since F(n)
    is the first Fibonacci number p divides.
    """
    if n < 1:
        raise ValueError("primitive_primes expects n >= 1")
    if n in (1, 2):
        return []
    fac = fib_factorization(n, budget)
    return [(p, e) for p, e in fac.factors if divisor_has_rank(p, n)]


def lcm_fib(x: float) -> int:
    """lcm(F(1), …, F(⌊x⌋)) by iterated gcd; no factorization involved."""
    n = math.floor(x)
    if n < 1:
        raise ValueError("lcm_fib expects x >= 1")
    out = 1
    a, b = 1, 1  # F(1), F(2)
    for _ in range(n):
        out = math.lcm(out, a)
        a, b = b, a + b
    return out


@dataclass(frozen=True)
class ExactLog:
    """log of an explicitly held positive integer, with stated relative precision."""

    integer_value: int
    log_value: float
    rel_precision: float = 1e-13

    def __post_init__(self) -> None:
        if self.integer_value < 1:
            raise ValueError("ExactLog holds logs of positive integers")


def log_of_big(v: int) -> ExactLog:
    """Exact-integer-backed logarithm.

    math.log on a Python int is evaluated from the bit length plus the
    high-order mantissa, so the result is correct to a few ulps regardless
    of magnitude — well inside the 1e−12 relative-precision contract.
    """
    if v < 1:
        raise ValueError("log_of_big expects v >= 1")
    return ExactLog(v, math.log(v))


@dataclass(frozen=True)
class Constants:
    """Floating constants used by the closed forms and asymptotics."""

    golden_ratio: float          # (1+√5)/2
    golden_conjugate: float      # (1−√5)/2
    product_tail_constant: float  # limit of Σ log(1 − (−1)^n·φ^(−2n))
    lcm_growth_constant: float   # 3·log(golden_ratio)/π²


def _product_tail_constant(golden: float, n_terms: int = 80) -> float:
    return math.fsum(
        math.log1p(-((-1) ** n) * golden ** (-2 * n)) for n in range(1, n_terms + 1)
    )


def _build_constants() -> Constants:
    golden = (1 + math.sqrt(5.0)) / 2
    return Constants(
        golden_ratio=golden,
        golden_conjugate=(1 - math.sqrt(5.0)) / 2,
        product_tail_constant=_product_tail_constant(golden),
        lcm_growth_constant=3 * math.log(golden) / math.pi**2,
    )


CONSTANTS = _build_constants()
