"""Coefficient closed forms against their derivative oracles, the constant
term system, and the square-index consistency."""

from fractions import Fraction

import pytest
from mpmath import mp

from quadtrace.coefficients import (
    coeff_oracle_4,
    coeff_oracle_4p,
    constant_term_checks,
    deformation_b_check,
    deformation_b_infty,
    deformation_b_zero,
    neg_coeff_rational,
    sesqui4_square_coeff,
    sesqui4p_const_coeff,
    sesqui4p_neg_coeff,
    sesqui4p_nonsquare_coeff,
    sesqui4p_square_coeff,
    square_trace_consistency,
    t_divisor_sum,
    t_log_sum,
    theta_multiple_const,
)


def setup_module():
    mp.dps = 30


def test_t_divisor_sum_normalization():
    for m in range(1, 21):
        assert t_divisor_sum(1, 0, 1, m) == 1
    assert t_divisor_sum(12, 0, 1, 1) == 1
    assert t_divisor_sum(12, 0, -3, 2) == 1  # only d = 1 survives gcd(d, 12) = 1


def test_t_log_sum_values():
    assert t_log_sum(1, 1) == 0
    assert t_log_sum(12, 2) == 0
    assert abs(t_log_sum(1, 2) - mp.log(2) / 2) < mp.mpf("1e-30")


def test_t_log_sum_matches_finite_difference():
    # central difference of T^{id}_{1, 3/2-2s}(m) at s = 3/4
    for m in (2, 6, 12):
        h = mp.mpf("1e-6")
        up = t_divisor_sum(1, mp.mpf(3) / 2 - 2 * (mp.mpf(3) / 4 + h), 1, m)
        dn = t_divisor_sum(1, mp.mpf(3) / 2 - 2 * (mp.mpf(3) / 4 - h), 1, m)
        fd = -(up - dn) / (4 * h)
        assert abs(fd - t_log_sum(1, m)) < mp.mpf("1e-9"), m


def test_b_closed_vs_oracle():
    for m in range(1, 13):
        closed = sesqui4_square_coeff(m)
        oracle = coeff_oracle_4(m)
        assert abs(closed - oracle) < mp.mpf("1e-8"), m


def test_b_constant_structure():
    from quadtrace.lvalues import zeta_prime_over_zeta_2

    z = zeta_prime_over_zeta_2()
    expected = (
        2 / (3 * mp.pi) * (mp.euler - 2 * z - mp.log(4) + mp.log(mp.pi) / 2)
    )
    assert abs(sesqui4_square_coeff(1) - expected) < mp.mpf("1e-30")


def test_c_closed_vs_oracle():
    for p in (3, 5):
        assert abs(sesqui4p_const_coeff(p) - coeff_oracle_4p(p, 0)) < mp.mpf("1e-8")
        for m in range(1, 13):
            assert abs(
                sesqui4p_square_coeff(p, m) - coeff_oracle_4p(p, m)
            ) < mp.mpf("1e-8"), (p, m)


def test_negative_coefficients_exact_shape():
    # (1 - i) c(n) has exactly vanishing imaginary part by construction
    for p, n in ((3, -4), (3, -3), (7, -8), (5, -20)):
        c = sesqui4p_neg_coeff(p, n)
        prod = (1 - 1j) * c
        assert prod.imag == 0
        assert prod.real != 0 or neg_coeff_rational(p, n) == 0


def test_negative_coefficient_rational_values():
    assert neg_coeff_rational(3, -4) == -3  # (12/3)(3/4 + (3/-2) 1)
    assert neg_coeff_rational(3, -3) == Fraction(12, 3) * (
        Fraction(3, 8) + Fraction(3, -2) * Fraction(1, 3)
    )


def test_negative_two_path_sweep():
    """Class-number route vs zeta-product route, relative 1e-9."""
    for p in (3, 5, 7):
        for n in range(3, 120):
            if (-n) % 4 not in (0, 1):
                continue
            import math

            if math.isqrt(n) ** 2 == n:
                continue
            lhs = sesqui4p_neg_coeff(p, -n)
            rhs = sesqui4p_nonsquare_coeff(p, -n)
            scale = max(abs(lhs), abs(rhs), mp.mpf("1e-30"))
            assert abs(lhs - rhs) / scale < mp.mpf("1e-9"), (p, n)


def test_theta_multiple_const_positive():
    for p in (3, 5, 11):
        assert theta_multiple_const(p) != 0


def test_constant_term_checks_all_odd_primes_to_50():
    from quadtrace.arith import is_prime

    for p in range(3, 51):
        if not is_prime(p):
            continue
        reports = constant_term_checks(p)
        assert all(r.passed for r in reports), p


def test_deformation_values_and_check():
    assert abs(deformation_b_infty(3, 1) - 1) < mp.mpf("1e-30")
    assert abs(deformation_b_zero(3, 1) - 3) < mp.mpf("1e-30")
    assert abs(deformation_b_infty(5, 1) - 1) < mp.mpf("1e-30")
    r = deformation_b_check(3)
    assert r.passed
    # the recorded variant/numeric ratio is pi^2 (p^2 - 1)
    ratio = mp.mpf(r.flags["variant_vs_numeric_ratio_inf"])
    assert abs(ratio - mp.pi**2 * 8) < mp.mpf("1e-6")


def test_square_trace_consistency_sweep():
    for p in (3, 5, 7):
        for m in range(1, 11):
            assert square_trace_consistency(p, m).passed, (p, m)


def test_nonsquare_coeff_rejects_squares():
    with pytest.raises(ValueError):
        sesqui4p_nonsquare_coeff(3, 4)
    with pytest.raises(ValueError):
        sesqui4p_nonsquare_coeff(3, 0)
