"""Exact elementary number theory.

Primality, factorization, divisor enumeration and the classical arithmetic
functions (μ, λ, φ, d, the von Mangoldt base) over arbitrary-precision
integers.  Everything here is exact except zeta_partial, which returns an
explicit tail bound with its floating value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional


class BudgetExceededError(Exception):
    """Factorization work budget exhausted: the input is beyond desk scale."""


# The first 13 primes decide Miller-Rabin deterministically below this bound.
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASE_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

DEFAULT_FACTOR_BUDGET = 2_000_000

_TRIAL_BOUND = 4096  # trial-divide below this, Pollard rho above


@dataclass(frozen=True)
class PrimalityPolicy:
    """Fixed, documented primality-testing policy.

    Below ``deterministic_threshold`` the 13 witnesses 2..41 give a proven
    answer.  At or above it, the first ``witness_count`` primes are used as a
    fixed witness list: still fully reproducible, probabilistic in guarantee.
    """

    deterministic_threshold: int = MR_DETERMINISTIC_BOUND
    witness_count: int = 30


DEFAULT_POLICY = PrimalityPolicy()


@lru_cache(maxsize=None)
def _first_primes(k: int) -> tuple[int, ...]:
    primes: list[int] = []
    n = 2
    while len(primes) < k:
        if all(n % p for p in primes):
            primes.append(n)
        n += 1
    return tuple(primes)


def is_prime(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> bool:
    """Miller-Rabin primality test under the given policy.

    Deterministic below policy.deterministic_threshold, fixed witness list
    above it.  1 is not prime.
    """
    if n < 2:
        return False
    for p in _MR_BASE_WITNESSES:
        if n % p == 0:
            return n == p
    if n < policy.deterministic_threshold:
        witnesses = _MR_BASE_WITNESSES
    else:
        witnesses = _first_primes(policy.witness_count)
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Exact prime factorization: value == ∏ prime**exponent, primes ascending."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


class _Budget:
    """Mutable work-unit counter shared across one factorization call tree."""

    __slots__ = ("remaining", "target")

    def __init__(self, units: int, target: int):
        self.remaining = units
        self.target = target

    def spend(self, units: int) -> None:
        self.remaining -= units
        if self.remaining < 0:
            raise BudgetExceededError(
                f"factoring {self.target} exceeded the work budget"
            )


def _brent_rho(n: int, budget: _Budget) -> int:
    """Deterministic Brent-cycle Pollard rho: returns a proper factor of composite n.

    Polynomial constants are tried in a fixed order, so repeated runs split
    identically.  Work is charged per iteration.
    """
    if n % 2 == 0:
        return 2
    # expected iterations ~ n**(1/4); refuse hopeless inputs up front
    expected = math.isqrt(math.isqrt(n)) + 1
    if expected > budget.remaining:
        budget.spend(expected)
    for c in range(1, 1000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget.spend(steps)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                budget.spend(1)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise BudgetExceededError(f"rho could not split {n}")  # pragma: no cover


def _factor_into(n: int, out: dict[int, int], budget: _Budget,
                 policy: PrimalityPolicy) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        budget.spend(m.bit_length())
        if is_prime(m, policy):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m, budget)
        stack.append(d)
        stack.append(m // d)


_FACTOR_CACHE: dict[int, tuple[tuple[int, int], ...]] = {1: ()}


def factorize(n: int, budget: Optional[int] = None,
              policy: PrimalityPolicy = DEFAULT_POLICY) -> Factorization:
    """Full prime factorization of n ≥ 1.

    Trial division up to a small fixed bound, then deterministic Brent rho.
    Raises BudgetExceededError once the configured work units are spent.
    Completed factorizations are memoized process-wide.
    """
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    cached = _FACTOR_CACHE.get(n)
    if cached is not None:
        return Factorization(n, cached)
    b = _Budget(DEFAULT_FACTOR_BUDGET if budget is None else budget, n)
    fac: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            fac[p] = fac.get(p, 0) + 1
            m //= p
    p = 5
    while p <= _TRIAL_BOUND and p * p <= m:
        b.spend(1)
        for q in (p, p + 2):
            while m % q == 0:
                fac[q] = fac.get(q, 0) + 1
                m //= q
        p += 6
    if m > 1:
        if p * p > m:
            fac[m] = fac.get(m, 0) + 1
        else:
            _factor_into(m, fac, b, policy)
    factors = tuple(sorted(fac.items()))
    _FACTOR_CACHE[n] = factors
    return Factorization(n, factors)


def divisors(f: Factorization) -> list[int]:
    """All divisors of f.value in increasing order; ∏(eᵢ+1) of them."""
    out = [1]
    for p, e in f.factors:
        powers = [p**k for k in range(1, e + 1)]
        out += [d * q for d in out for q in powers]
    return sorted(out)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    """μ(n): 0 unless n is squarefree, else (−1)^(number of prime factors)."""
    fac = factorize(n).factors
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def liouville(n: int) -> int:
    """λ(n) = (−1)^Ω(n) with Ω counting prime factors with multiplicity."""
    return -1 if sum(e for _, e in factorize(n).factors) % 2 else 1


def euler_phi(n: int) -> int:
    """φ(n), the count of 1 ≤ k ≤ n coprime to n."""
    v = n
    for p, _ in factorize(n).factors:
        v = v // p * (p - 1)
    return v


def divisor_count(n: int) -> int:
    """d(n) = ∏(eᵢ+1) over the prime factorization."""
    out = 1
    for _, e in factorize(n).factors:
        out *= e + 1
    return out


def mangoldt_base(n: int) -> Optional[int]:
    """The prime p when n = p^k (k ≥ 1), else None.

    Λ(n) is then log p.  Sums of Λ are carried as products of these bases and
    only converted to a float log at the boundary, never accumulated as floats.
    """
    fac = factorize(n).factors
    if len(fac) == 1:
        return fac[0][0]
    return None


# --- Mertens function, sieve-backed and grown on demand ---

_mu_values: list[int] = [0, 1]   # μ(0) unused, μ(1)=1
_mertens_prefix: list[int] = [0, 1]


def _grow_mu_sieve(limit: int) -> None:
    n = len(_mu_values) - 1
    if limit <= n:
        return
    limit = max(limit, 2 * n)
    mu = [0] * (limit + 1)
    mu[1] = 1
    is_comp = bytearray(limit + 1)
    primes: list[int] = []
    for i in range(2, limit + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > limit:
                break
            is_comp[i * p] = 1
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    _mu_values[:] = mu
    pref = [0] * (limit + 1)
    acc = 0
    for i in range(1, limit + 1):
        acc += mu[i]
        pref[i] = acc
    _mertens_prefix[:] = pref


def mertens(x: float) -> int:
    """M(x) = Σ_{n≤⌊x⌋} μ(n); 0 for x < 1."""
    n = math.floor(x)
    if n < 1:
        return 0
    _grow_mu_sieve(n)
    return _mertens_prefix[n]


@dataclass(frozen=True)
class ArithFn:
    """A named, deterministic, exact integer-valued arithmetic function."""

    name: str
    fn: Callable[[int], int]

    def __call__(self, n: int) -> int:
        return self.fn(n)


MU = ArithFn("mu", mobius)
LIOUVILLE = ArithFn("lambda", liouville)
PHI = ArithFn("phi", euler_phi)
ONE = ArithFn("one", lambda n: 1)
DIVISOR_COUNT = ArithFn("divisor_count", divisor_count)
IDENTITY = ArithFn("id", lambda n: n)

# Λ is not integer-valued; this member is a marker whose callable yields the
# exact base prime (or None).  Operations that support it branch on the name
# and carry the sum as a big-integer product.
MANGOLDT = ArithFn("mangoldt", mangoldt_base)  # type: ignore[arg-type]

NAMED_FUNCTIONS: dict[str, ArithFn] = {
    f.name: f for f in (MU, LIOUVILLE, PHI, ONE, DIVISOR_COUNT, IDENTITY, MANGOLDT)
}


def dirichlet_convolve(f: ArithFn, g: ArithFn, n: int) -> int:
    """(f*g)(n) = Σ_{d|n} f(d)·g(n/d), exactly."""
    return sum(f(d) * g(n // d) for d in divisors(factorize(n)))


def zeta_partial(s: float, n_terms: int) -> tuple[float, float]:
    """(Σ_{n≤N} n^−s, tail bound N^(1−s)/(s−1)) for s > 1.

    The bound is the integral estimate Σ_{n>N} n^−s ≤ ∫_N^∞ t^−s dt.
    """
    if s <= 1:
        raise ValueError("zeta_partial requires s > 1")
    if n_terms < 1:
        raise ValueError("zeta_partial requires N >= 1")
    value = math.fsum(k ** -s for k in range(1, n_terms + 1))
    tail = n_terms ** (1.0 - s) / (s - 1.0)
    return value, tail
