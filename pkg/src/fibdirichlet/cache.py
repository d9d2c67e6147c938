"""Persistence for computed Fibonacci factorizations, ranks and entry exponents.

One record per line, self-describing and diff-friendly:

    n=12 fib=2^4*3^2 alpha=12 e=2

``fib`` is the factorization of F(n) (``1`` for the empty product), ``alpha``
the rank of apparition of n and ``e`` its entry exponent.  Records exist for
n ≥ 2 only; the entry exponent of 1 is unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

from .fib import (
    DEFAULT_RANK_CACHE,
    fib,
    known_fib_factorizations,
    preload_fib_factorization,
)


@dataclass(frozen=True)
class CacheRecord:
    n: int
    fib_factorization: tuple[tuple[int, int], ...]
    rank: int
    entry_exponent: int


def _format_factors(factors: tuple[tuple[int, int], ...]) -> str:
    if not factors:
        return "1"
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factors)


def _parse_factors(text: str) -> tuple[tuple[int, int], ...]:
    if text == "1":
        return ()
    factors = []
    for part in text.split("*"):
        if "^" in part:
            p, e = part.split("^", 1)
            factors.append((int(p), int(e)))
        else:
            factors.append((int(part), 1))
    return tuple(factors)


def format_record(record: CacheRecord) -> str:
    return (f"n={record.n} fib={_format_factors(record.fib_factorization)} "
            f"alpha={record.rank} e={record.entry_exponent}")


def parse_record(line: str) -> CacheRecord:
    fields = {}
    for token in line.split():
        if "=" not in token:
            raise ValueError(f"malformed token {token!r}")
        key, value = token.split("=", 1)
        fields[key] = value
    if sorted(fields) != ["alpha", "e", "fib", "n"]:
        raise ValueError(f"expected fields n, fib, alpha, e; got {sorted(fields)}")
    record = CacheRecord(
        n=int(fields["n"]),
        fib_factorization=_parse_factors(fields["fib"]),
        rank=int(fields["alpha"]),
        entry_exponent=int(fields["e"]),
    )
    product = 1
    for p, e in record.fib_factorization:
        product *= p**e
    if product != fib(record.n):
        raise ValueError(f"factorization does not reconstruct F({record.n})")
    return record


def load_cache_file(path: Union[str, Path]) -> list[CacheRecord]:
    """Parse a cache file; a corrupt line raises with its line number."""
    records = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(parse_record(line))
        except ValueError as exc:
            raise ValueError(f"{path}: line {lineno}: {exc}") from exc
    return records


def save_cache_file(path: Union[str, Path], records: Iterable[CacheRecord]) -> None:
    """Write records sorted by n; identical inputs give identical bytes."""
    unique = {r.n: r for r in records}
    lines = [format_record(unique[n]) for n in sorted(unique)]
    Path(path).write_text("".join(line + "\n" for line in lines))


def apply_records(records: Iterable[CacheRecord]) -> None:
    """Prime the in-process factorization and rank caches from records."""
    for r in records:
        preload_fib_factorization(r.n, r.fib_factorization)
        DEFAULT_RANK_CACHE.preload(r.n, r.rank, r.entry_exponent)


def collect_records() -> list[CacheRecord]:
    """Snapshot every Fibonacci index factored so far as cache records."""
    out = []
    for n, fac in sorted(known_fib_factorizations().items()):
        if n < 2:
            continue
        out.append(CacheRecord(
            n=n,
            fib_factorization=fac.factors,
            rank=DEFAULT_RANK_CACHE.rank(n),
            entry_exponent=DEFAULT_RANK_CACHE.entry_exponent(n),
        ))
    return out
