import math
import random

import pytest

from fibdirichlet.numtheory import (
    ArithFn,
    BudgetExceededError,
    MR_DETERMINISTIC_BOUND,
    dirichlet_convolve,
    divisor_count,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    liouville,
    mangoldt_base,
    mertens,
    mobius,
    MU,
    ONE,
    PHI,
    LIOUVILLE,
    zeta_partial,
)


def naive_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def test_is_prime_examples():
    assert not is_prime(1)
    assert is_prime(89)       # = F(11)
    assert not is_prime(144)  # = F(12)


def test_is_prime_matches_trial_division():
    for n in range(1, 2000):
        assert is_prime(n) == naive_is_prime(n), n


def test_is_prime_above_deterministic_threshold():
    mersenne_89 = 2**89 - 1  # prime, larger than the deterministic bound
    assert mersenne_89 > MR_DETERMINISTIC_BOUND
    assert is_prime(mersenne_89)
    mersenne_61 = 2**61 - 1
    assert not is_prime(mersenne_61**2)


def test_factorize_examples():
    assert factorize(144).factors == ((2, 4), (3, 2))
    assert factorize(1).factors == ()
    f60 = factorize(1548008755920)  # = F(60)
    assert f60.factors == ((2, 4), (3, 2), (5, 1), (11, 1), (31, 1),
                           (41, 1), (61, 1), (2521, 1))
    prod = 1
    for p, e in f60.factors:
        prod *= p**e
    assert prod == 1548008755920


def test_divisors_examples():
    assert divisors(factorize(21)) == [1, 3, 7, 21]
    assert divisors(factorize(1)) == [1]
    d144 = divisors(factorize(144))
    assert len(d144) == 15 and d144[-1] == 144


def test_factorization_and_divisor_sums_to_10000():
    # one pass over n <= 10^4: reconstruction, divisor count, and the
    # classical divisor-sum identities for mu, phi and lambda
    for n in range(1, 10_001):
        fac = factorize(n)
        prod = 1
        count = 1
        for p, e in fac.factors:
            assert is_prime(p)
            prod *= p**e
            count *= e + 1
        assert prod == n
        divs = divisors(fac)
        assert len(divs) == count
        assert sum(mobius(d) for d in divs) == (1 if n == 1 else 0)
        assert sum(euler_phi(d) for d in divs) == n
        is_square = math.isqrt(n) ** 2 == n
        assert sum(liouville(d) for d in divs) == (1 if is_square else 0)


def test_factors_strictly_increasing():
    for n in (360, 5040, 96577):
        primes = [p for p, _ in factorize(n).factors]
        assert primes == sorted(set(primes))


def test_classical_values():
    assert mobius(4) == 0
    assert euler_phi(12) == 4
    assert liouville(12) == -1  # Omega(12) = 3
    assert divisor_count(144) == 15
    assert mobius(1) == liouville(1) == euler_phi(1) == 1


def test_mangoldt_base():
    assert mangoldt_base(8) == 2
    assert mangoldt_base(12) is None
    assert mangoldt_base(89) == 89
    assert mangoldt_base(1) is None


def test_mertens_examples():
    assert mertens(1) == 1
    assert mertens(4) == -1
    assert mertens(0.5) == 0


def test_mertens_step_function():
    for x in (1.2, 3.9, 10.5, 99.99):
        assert mertens(x) == mertens(math.floor(x))
    previous = 0
    for n in range(1, 10_001):
        value = mertens(n)
        assert value - previous == mobius(n)
        previous = value


def test_dirichlet_convolve_examples():
    assert dirichlet_convolve(MU, ONE, 6) == 0
    assert dirichlet_convolve(PHI, ONE, 12) == 12
    assert dirichlet_convolve(LIOUVILLE, ONE, 9) == 1


def test_dirichlet_convolve_commutative():
    rng = random.Random(90210)
    for _ in range(1000):
        n = rng.randint(1, 60)
        table_f = {k: rng.randint(-5, 5) for k in range(1, 61)}
        table_g = {k: rng.randint(-5, 5) for k in range(1, 61)}
        f = ArithFn("table_f", table_f.__getitem__)
        g = ArithFn("table_g", table_g.__getitem__)
        assert dirichlet_convolve(f, g, n) == dirichlet_convolve(g, f, n)


def test_zeta_partial():
    value, tail = zeta_partial(2, 1)
    assert value == 1.0 and tail <= 1.0
    value, tail = zeta_partial(2, 10_000)
    assert abs(value - math.pi**2 / 6) < 1e-4
    assert tail < 2e-4
    value, tail = zeta_partial(3, 100)
    assert abs(value - 1.2020569) < 1e-4
    with pytest.raises(ValueError):
        zeta_partial(1.0, 10)


def test_factor_budget_error():
    with pytest.raises(BudgetExceededError):
        factorize(1000003 * 1000033, budget=10)
