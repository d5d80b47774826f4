"""Special functions: erfc, incomplete gamma, the two quadrature kernels."""

import pytest
from mpmath import mp

from quadtrace.specialfns import (
    alpha,
    alpha_companion,
    digamma_convention,
    erfc,
    inc_gamma_half,
    inc_gamma_minus_half,
)


def setup_module():
    mp.dps = 30


def test_erfc_basic():
    assert erfc(0) == 1
    assert abs(erfc(-1) - (2 - erfc(1))) < mp.mpf("1e-28")
    # series + continued-fraction style cross-check via direct quadrature
    direct = (2 / mp.sqrt(mp.pi)) * mp.quad(lambda t: mp.exp(-t * t), [1, mp.inf])
    assert abs(erfc(1) - direct) < mp.mpf("1e-25")


def test_inc_gamma_half():
    x = mp.mpf("0.7")
    assert abs(inc_gamma_half(x) / (mp.sqrt(mp.pi) * erfc(mp.sqrt(x))) - 1) < mp.mpf(
        "1e-30"
    )
    # x -> 0+ limit is Gamma(1/2) = sqrt(pi)
    assert abs(inc_gamma_half(mp.mpf("1e-30")) - mp.sqrt(mp.pi)) < mp.mpf("1e-14")
    # quadrature oracle at x = 4 pi
    x = 4 * mp.pi
    direct = mp.quad(lambda t: mp.exp(-t) / mp.sqrt(t), [x, mp.inf])
    assert abs(inc_gamma_half(x) - direct) < mp.mpf("1e-20")
    with pytest.raises(ValueError):
        inc_gamma_half(-1)


def test_inc_gamma_minus_half_recurrence():
    x = mp.mpf("2.3")
    lhs = inc_gamma_half(x)
    rhs = -mp.mpf(1) / 2 * inc_gamma_minus_half(x) + mp.exp(-x) / mp.sqrt(x)
    assert abs(lhs - rhs) < mp.mpf("1e-30")


def test_alpha_decay_and_positivity():
    big = alpha(10**4)
    assert abs(big.value) < mp.mpf("1e-3")
    vals = [alpha(y).value for y in ("0.1", "0.5", "1", "5", "20", "100")]
    assert all(v > 0 for v in vals)
    assert all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))


def test_alpha_two_scheme_agreement():
    # independent single-interval quadrature with explicit singular weight
    y = mp.mpf(1)
    res = alpha(y)
    direct = mp.sqrt(y) * mp.quad(
        lambda t: mp.log(t + 1) / mp.sqrt(t) * mp.exp(-mp.pi * y * t), [0, 1, mp.inf]
    )
    assert abs(res.value - direct) < mp.mpf("1e-10")
    assert res.error_bound < mp.mpf("1e-10")


def test_companion_relation_grid():
    """sup over the 36-point grid of |-2 F(2 m sqrt(pi N v)) - alpha(4 N m^2 v)|."""
    worst = mp.mpf(0)
    for big_n in (1, 3, 5):
        for v in (mp.mpf("0.3"), mp.mpf("0.5"), mp.mpf(1), mp.mpf(2)):
            for m in (1, 2, 3):
                lhs = -2 * alpha_companion(2 * m * mp.sqrt(mp.pi * big_n * v)).value
                rhs = alpha(4 * big_n * m * m * v).value
                worst = max(worst, abs(lhs - rhs))
    assert worst < mp.mpf("1e-8")


def test_companion_small_argument_limit():
    t = mp.mpf("1e-12")
    val = alpha_companion(t).value - mp.log(t)
    assert abs(val - (mp.log(2) + mp.euler / 2)) < mp.mpf("1e-10")


def test_companion_large_argument_no_overflow():
    # the exp(w^2) erfc(w) kernel stays finite out to t = 50
    res = alpha_companion(50)
    assert mp.isfinite(res.value)


def test_quadrature_self_consistency():
    # halving the target tolerance moves the value by less than the bound
    y = mp.mpf("0.7")
    r1 = alpha(y)
    mp.dps = 45
    r2 = alpha(y)
    mp.dps = 30
    assert abs(r1.value - r2.value) <= r1.error_bound * 10


def test_digamma_convention():
    assert abs(digamma_convention(0) + mp.euler) < mp.mpf("1e-30")
    assert abs(digamma_convention(1) + mp.euler) < mp.mpf("1e-30")
    # series oracle for psi(1) = -gamma
    n = 4000
    psi1 = mp.fsum(mp.mpf(1) / k - mp.log((k + 1) / mp.mpf(k)) for k in range(1, n))
    psi1 = -(psi1 - mp.log(1))  # harmonic-log partial sums converge to gamma
    assert abs(digamma_convention(1) - psi1) < mp.mpf("1e-3")
    with pytest.raises(ValueError):
        digamma_convention(2)
