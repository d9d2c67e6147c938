"""The rank-of-apparition contraction operator and its summatory functions.

The contraction of an arithmetic function f sends n to the sum of f over all
m whose rank of apparition is exactly n.  By duality those m are precisely
the divisors of F(n) that divide no earlier Fibonacci number, which makes the
sum finite and exactly computable.  This module also provides the iterated
contractions of μ, the floor-weighted (T) and plain (S) summatory functions,
Möbius inversion between them, and closed forms for μ_α, μ_α², μ_α³, λ_α and
the kernel element Δ₂₃.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .fib import (
    ExactLog,
    divisor_has_rank,
    fib,
    fib_factorization,
    lcm_fib,
    log_of_big,
)
from .numtheory import (
    ArithFn,
    divisors,
    mangoldt_base,
    mobius,
)


def divisor_union_ranks(x: float, budget: Optional[int] = None) -> dict[int, int]:
    """All n with rank(n) ≤ ⌊x⌋, mapped to rank(n).

    This set is the union of the divisor sets of F(1)..F(⌊x⌋); the first
    index whose Fibonacci number a divisor divides is its rank.
    """
    ranks: dict[int, int] = {}
    for n in range(1, math.floor(x) + 1):
        for d in divisors(fib_factorization(n, budget)):
            ranks.setdefault(d, n)
    return ranks


def contributors(n: int, budget: Optional[int] = None) -> list[int]:
    """Divisors of F(n) whose rank of apparition is exactly n, ascending."""
    fac = fib_factorization(n, budget)
    return [d for d in divisors(fac) if divisor_has_rank(d, n)]


def alpha_contract(f: ArithFn, n: int,
                   budget: Optional[int] = None) -> Union[int, ExactLog]:
    """Contraction of f at n: Σ f(m) over m with rank(m) = n.

    Empty sums are 0 — in particular at n = 2, where F(2) = 1 has no divisor
    of rank 2.  For the von Mangoldt marker the sum is carried exactly as the
    product of base primes over prime-power contributors and returned as an
    ExactLog.
    """
    if n < 1:
        raise ValueError("alpha_contract expects n >= 1")
    if f.name == "mangoldt":
        prod = 1
        for m in contributors(n, budget):
            base = mangoldt_base(m)
            if base is not None:
                prod *= base
        return log_of_big(prod)
    return sum(f(m) for m in contributors(n, budget))


# --- iterated contractions of mu ---
#
# Contracting h(n) = Σ c_j·μ(n/j)·[j|n] again gives a function of the same
# shape: by duality Σ_{k|n} h_α(k) = Σ_{d|F(n)} h(d), and Σ_{d|v, j|d} μ(d/j)
# collapses to [v = j], so only dilations j that are Fibonacci values survive,
# each replaced by its Fibonacci index.  Everything used here is classical;
# no case table is assumed.


def _fib_indexes_of(value: int) -> tuple[int, ...]:
    if value == 1:
        return (1, 2)
    j = 3
    while fib(j) < value:
        j += 1
    return (j,) if fib(j) == value else ()


@lru_cache(maxsize=None)
def _mu_iterate_weights(depth: int) -> tuple[tuple[int, int], ...]:
    """Dilation weights of the depth-fold contraction of μ, as (dilate, coeff)."""
    combo = {1: 1}
    for _ in range(depth):
        nxt: dict[int, int] = {}
        for m, c in combo.items():
            for j in _fib_indexes_of(m):
                nxt[j] = nxt.get(j, 0) + c
        combo = nxt
    return tuple(sorted(combo.items()))


def _mu_iterate_fn(depth: int) -> ArithFn:
    weights = _mu_iterate_weights(depth)

    def evaluate(n: int) -> int:
        return sum(c * mobius(n // m) for m, c in weights if n % m == 0)

    return ArithFn(f"mu_iter{depth}", evaluate)


def alpha_contract_iter(f: ArithFn, depth: int, n: int,
                        budget: Optional[int] = None) -> int:
    """depth-fold contraction of f at n.

    For μ the inner iterate is evaluated through its exact dilation form, so
    arbitrarily large contributors stay cheap.  For other functions the inner
    levels recurse literally and raise the budget error once an intermediate
    Fibonacci number is unfactorable.
    """
    if depth < 1:
        raise ValueError("alpha_contract_iter expects depth >= 1")
    if depth == 1:
        return alpha_contract(f, n, budget)  # type: ignore[return-value]
    if f.name == "mu":
        inner = _mu_iterate_fn(depth - 1)
    else:
        inner = ArithFn(
            f"{f.name}_iter{depth - 1}",
            lambda m: alpha_contract_iter(f, depth - 1, m, budget),
        )
    return alpha_contract(inner, n, budget)  # type: ignore[return-value]


# --- closed forms ---


def closed_mu_alpha(n: int) -> int:
    """Contraction of μ: case table mod 4.  Multiplicative."""
    r = n % 4
    if r == 2:
        return 0
    if r == 0:
        return mobius(n // 2)
    return mobius(n)


def closed_mu_alpha2(n: int) -> int:
    """Twice-contracted μ: μ(n) plus μ(n/2) and μ(n/3) where those divide."""
    out = mobius(n)
    if n % 2 == 0:
        out += mobius(n // 2)
    if n % 3 == 0:
        out += mobius(n // 3)
    return out


def closed_mu_alpha3(n: int) -> int:
    """Thrice-contracted μ: case table mod 12; a fixed point of contraction."""
    r = n % 12
    if r in (0, 4, 8):
        return mobius(n // 2) + mobius(n // 4)
    if r in (2, 10):
        return 0
    if r in (3, 9):
        return mobius(n) + mobius(n // 3)
    if r == 6:
        return mobius(n // 3)
    return mobius(n)


def closed_lambda_alpha(n: int) -> int:
    """Contraction of λ: case table mod 12, driven by the three square
    Fibonacci numbers F(1) = F(2) = 1 and F(12) = 144."""
    if n % 2 == 1:
        return mobius(n)
    if n % 12 == 0:
        return mobius(n // 2) + mobius(n // 12)
    return mobius(n) + mobius(n // 2)


def closed_delta23(n: int) -> int:
    """μ_α² − μ_α³ in closed form: −μ(n/4) on multiples of 4, else 0.

    Lies in the kernel of the contraction operator.
    """
    return -mobius(n // 4) if n % 4 == 0 else 0


CLOSED_FORMS: dict[tuple[str, int], ArithFn] = {
    ("mu", 1): ArithFn("mu_alpha", closed_mu_alpha),
    ("mu", 2): ArithFn("mu_alpha2", closed_mu_alpha2),
    ("mu", 3): ArithFn("mu_alpha3", closed_mu_alpha3),
    ("lambda", 1): ArithFn("lambda_alpha", closed_lambda_alpha),
}

DELTA23 = ArithFn("delta23", closed_delta23)


@dataclass(frozen=True)
class ContractionTable:
    """Tabulated iterated contraction: values[n] for 1 ≤ n ≤ horizon."""

    source: str
    depth: int
    values: dict[int, int]
    horizon: int


def build_contraction_table(f: ArithFn, depth: int, horizon: int,
                            budget: Optional[int] = None) -> ContractionTable:
    """Tabulate the depth-fold contraction of f up to horizon (depth 0 = f)."""
    if depth == 0:
        values = {n: f(n) for n in range(1, horizon + 1)}
    else:
        values = {
            n: alpha_contract_iter(f, depth, n, budget)
            for n in range(1, horizon + 1)
        }
    return ContractionTable(f.name, depth, values, horizon)


# --- summatory functions and Moebius inversion between them ---


def summatory_T(f: ArithFn, x: float,
                budget: Optional[int] = None) -> Union[int, ExactLog]:
    """Floor-weighted summatory function Σ_{rank(n)≤x} f(n)·⌊x/rank(n)⌋.

    Evaluated through the double-counting identity as Σ_{n≤x} (1*f)(F(n)),
    i.e. divisor sums over Fibonacci numbers, which avoids enumerating the
    full rank-bounded set.  The von Mangoldt case telescopes to the exact
    product of F(1)..F(⌊x⌋).
    """
    n_max = math.floor(x)
    if f.name == "mangoldt":
        prod = 1
        a, b = 1, 1
        for _ in range(max(n_max, 0)):
            prod *= a
            a, b = b, a + b
        return log_of_big(prod)
    total = 0
    for n in range(1, n_max + 1):
        fac = fib_factorization(n, budget)
        total += sum(f(d) for d in divisors(fac))
    return total


def summatory_S(f: ArithFn, x: float,
                budget: Optional[int] = None) -> Union[int, ExactLog]:
    """Plain summatory function Σ_{rank(n)≤x} f(n).

    Computed as the sum of contractions up to ⌊x⌋; the von Mangoldt case is
    exactly the log of lcm(F(1)..F(⌊x⌋)).
    """
    n_max = math.floor(x)
    if f.name == "mangoldt":
        return log_of_big(lcm_fib(x)) if n_max >= 1 else log_of_big(1)
    return sum(
        alpha_contract(f, n, budget) for n in range(1, n_max + 1)  # type: ignore[misc]
    )


class MissingTableEntryError(KeyError):
    """A summatory table lacks an argument required by Moebius inversion."""


@dataclass(frozen=True)
class SummatoryTable:
    """Integer summatory values at integer arguments, for inversion checks."""

    kind: str  # "S" or "T"
    fn_name: str
    values: dict[int, int]


def build_summatory_table(kind: str, f: ArithFn, x_max: int,
                          budget: Optional[int] = None) -> SummatoryTable:
    if kind not in ("S", "T"):
        raise ValueError("table kind must be 'S' or 'T'")
    if f.name == "mangoldt":
        raise ValueError("summatory tables hold integers; the von Mangoldt "
                         "sums live in ExactLog form")
    compute = summatory_S if kind == "S" else summatory_T
    return SummatoryTable(
        kind, f.name, {n: compute(f, n, budget) for n in range(1, x_max + 1)}
    )


def invert_T_to_S(table: SummatoryTable, x: float) -> int:
    """Moebius inversion Σ_{n≤x} μ(n)·T(x/n), recovering S from a T table.

    Both summatory functions are step functions changing only at integers,
    so only the values T(⌊⌊x⌋/n⌋) are needed.
    """
    if table.kind != "T":
        raise ValueError("inversion expects a T table")
    n_max = math.floor(x)
    total = 0
    for n in range(1, n_max + 1):
        arg = n_max // n
        if arg not in table.values:
            raise MissingTableEntryError(
                f"T table for {table.fn_name} has no entry at {arg}"
            )
        total += mobius(n) * table.values[arg]
    return total
