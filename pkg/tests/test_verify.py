import math

import pytest

from fibdirichlet.fib import CONSTANTS, fib, lcm_fib
from fibdirichlet.numtheory import (
    IDENTITY,
    LIOUVILLE,
    MANGOLDT,
    MU,
    ONE,
    PHI,
)
from fibdirichlet.verify import (
    PRIMITIVE_COUNT_BOUND,
    asymptotic_mangoldt_report,
    check_T_tables,
    check_corollary_completely_mult,
    check_phi_identity,
    check_theorem1,
    constant_c,
    ep_weighted_sum,
    euler_product_check,
    logprod_closed_form,
    phi_recursive_fib,
    pi_alpha,
    pi_alpha_bound_report,
    run_suite,
    small_integer_fn,
)


def test_theorem1_mu_one():
    report = check_theorem1(MU, ONE, 2)
    assert report.passed and report.residual == 0
    assert report.details[0]["value"] == 2  # both F(1), F(2) equal 1


def test_theorem1_phi_one():
    report = check_theorem1(PHI, ONE, 4)
    assert report.passed
    assert report.details[0]["value"] == 7  # 1 + 1 + 2 + 3


def test_theorem1_random_pairs():
    for seed in (0, 1, 2):
        report = check_theorem1(small_integer_fn(seed),
                                small_integer_fn(100 + seed), 20)
        assert report.passed and report.residual == 0


def test_theorem1_exact_mangoldt():
    report = check_theorem1(MANGOLDT, ONE, 10)
    assert report.passed and report.residual == 0
    prod = 1
    for n in range(1, 11):
        prod *= fib(n)
    assert abs(report.details[0]["log_value"] - math.log(prod)) < 1e-12
    with pytest.raises(ValueError):
        check_theorem1(MANGOLDT, MU, 5)


def test_corollary_with_unit_function():
    for f in (MU, PHI, LIOUVILLE):
        report = check_corollary_completely_mult(f, ONE, 20)
        assert report.passed, f.name
    report = check_corollary_completely_mult(LIOUVILLE, ONE, 12)
    at_12 = report.details[11]
    assert at_12["lhs"] == at_12["rhs"] == "1"  # F(12) = 144 is a square


def test_corollary_with_nontrivial_completely_multiplicative():
    assert check_corollary_completely_mult(MU, LIOUVILLE, 20).passed
    assert check_corollary_completely_mult(PHI, IDENTITY, 15).passed


def test_logprod_closed_form():
    lhs, rhs, residual = logprod_closed_form(2)
    assert lhs.log_value == 0.0 and abs(rhs) <= 1e-9
    lhs, _, residual = logprod_closed_form(6)
    assert lhs.integer_value == 240 and residual <= 1e-9
    _, _, residual = logprod_closed_form(40)
    assert residual <= 1e-8


def test_constant_c():
    assert abs(constant_c(50) - 0.2043618834) <= 1e-9
    r = CONSTANTS.golden_ratio
    assert abs(constant_c(1) - math.log1p(r**-2)) < 1e-15
    assert abs(constant_c(1) - 0.3235071311574467) < 1e-12
    assert abs(constant_c(2) - constant_c(50)) < r**-4 / (1 - r**-2)
    for n in range(1, 61):
        assert abs(constant_c(n + 1) - constant_c(n)) <= r ** (-2 * n)


def test_asymptotic_mangoldt_report():
    samples = asymptotic_mangoldt_report([1, 5])
    assert samples[0].exact_as_float() == 0.0
    assert abs(samples[1].exact_as_float() - math.log(30)) < 1e-12
    assert abs(samples[1].predicted - CONSTANTS.lcm_growth_constant * 25) < 1e-12


def test_ep_weighted_sum():
    log, sample = ep_weighted_sum(5)
    assert log.integer_value == 30  # primes 2, 3, 5 each with exponent 1
    log, _ = ep_weighted_sum(2)
    assert log.integer_value == 1 and log.log_value == 0.0
    log, _ = ep_weighted_sum(12)
    assert log.integer_value == 2 * 3 * 5 * 7 * 11 * 13 * 17 * 89
    assert sample.x == 5


def test_ep_product_divides_lcm():
    for x in range(1, 61):
        log, _ = ep_weighted_sum(x)
        total = lcm_fib(x) if x >= 1 else 1
        assert total % log.integer_value == 0
        assert log.log_value <= math.log(total) + 1e-9


def test_pi_alpha():
    assert pi_alpha(5) == 3
    assert pi_alpha(12) == 8
    assert pi_alpha(2) == 0
    previous = 0
    for x in range(1, 31):
        current = pi_alpha(x)
        assert current >= previous
        previous = current


def test_pi_alpha_bounded_by_total_prime_count():
    from fibdirichlet.fib import fib_factorization
    for x in (10, 20, 30):
        total_omega = sum(
            sum(e for _, e in fib_factorization(n).factors)
            for n in range(3, x + 1)
        )
        assert pi_alpha(x) <= total_omega


def test_pi_alpha_bound_report():
    rows = pi_alpha_bound_report([2, 12])
    assert rows[0]["count"] == 0
    assert rows[1]["count"] == 8
    expected_scaled = 8 * math.log(12) / 144
    assert abs(rows[1]["scaled"] - expected_scaled) < 1e-12
    assert all(abs(r["bound"] - PRIMITIVE_COUNT_BOUND) < 1e-15 for r in rows)
    assert abs(PRIMITIVE_COUNT_BOUND - CONSTANTS.lcm_growth_constant / 2) < 1e-15


def test_phi_identity():
    report = check_phi_identity(4)
    assert report.passed
    assert report.details[0]["closed"] == 7 == fib(6) - 1
    assert check_phi_identity(1).passed
    for x in range(1, 13):
        assert check_phi_identity(x).passed


def test_phi_recursive_fib():
    assert phi_recursive_fib(4) == [1, 1, 2, 3, 5, 8]
    assert phi_recursive_fib(0) == [1, 1]
    assert phi_recursive_fib(10) == [fib(i) for i in range(1, 13)]


def test_euler_product_examples():
    report = euler_product_check("lambda", 2, 10_000)
    assert report.passed
    poly = report.details[0]["polynomial"]
    assert abs(poly - (1 + 0.25 + 1 / 144)) < 1e-15
    assert report.residual <= 1e-2

    report = euler_product_check("mu", 3, 1000)
    assert report.passed
    assert abs(report.details[0]["polynomial"] - 1.125) < 1e-15

    report = euler_product_check("mu3", 2, 10_000)
    assert report.passed
    assert abs(report.details[0]["polynomial"] - 205 / 144) < 1e-15

    with pytest.raises(ValueError):
        euler_product_check("mu", 2, 5)
    with pytest.raises(ValueError):
        euler_product_check("nope", 2, 100)


def test_check_T_tables():
    assert check_T_tables(1, 1.9).passed  # value 1
    assert check_T_tables(2, 10).passed   # value 3
    assert check_T_tables(3, 4).passed    # value 4
    report = check_T_tables(1, 1.9)
    assert report.details[0]["value"] == 1


def test_run_suite_dispatch():
    reports = run_suite("t-tables")
    assert all(r.passed for r in reports)
    with pytest.raises(ValueError):
        run_suite("not-a-check")
