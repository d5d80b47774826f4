"""Kloosterman machinery: local sums, closed forms, truncations, factorization."""

import math

import pytest
from mpmath import mp

from quadtrace.kloosterman import (
    assembled_product,
    kzeta_coprime_closed,
    kzeta_level_closed,
    kzeta_level_truncated,
    local_factor_2_exact,
    local_factor_p_exact,
    local_series_2,
    local_series_p,
    local_sum_2,
    local_sum_2_exp,
    local_sum_p,
    local_sum_p_exp,
    plus_term,
    plus_zeta_batch,
    plus_zeta_truncated,
)


def setup_module():
    mp.dps = 25


def test_local_sum_case_table():
    assert local_sum_2(1) == 1
    assert local_sum_2(2) == 1 + 1j
    assert local_sum_2(3) == 0
    assert local_sum_2(4) == (1 + 1j) * 4
    assert local_sum_p(3, 1) == 0
    assert local_sum_p(3, 2) == 6  # phi(9)
    assert local_sum_p(5, 2) == 20
    with pytest.raises(ValueError):
        local_sum_2(2, n=5)


def test_exponential_sums_match_case_table():
    for j in range(1, 14):
        assert abs(local_sum_2_exp(j, 0) - complex(local_sum_2(j))) < 1e-8
    for p in (3, 5):
        for j in range(1, 7):
            assert abs(local_sum_p_exp(p, j, 0) - complex(local_sum_p(p, j))) < 1e-7


def test_j_weighted_series_closed_values():
    # sum_{j>=2} a(2^j,0) j 2^{-3j/2} = 1+i ; sum_{j>=1} a(p^j,0) j p^{-3j/2} = 2/(p-1)
    s2 = mp.fsum(mp.mpc(local_sum_2(j)) * j * mp.power(2, -1.5 * j) for j in range(2, 220))
    assert abs(s2 - (1 + 1j)) < mp.mpf("1e-20")
    for p in (3, 5):
        sp = mp.fsum(
            mp.mpc(local_sum_p(p, j)) * j * mp.power(p, -1.5 * j) for j in range(1, 140)
        )
        assert abs(sp - mp.mpf(2) / (p - 1)) < mp.mpf("1e-20")


def test_local_series_closed_vs_term_sums():
    # the n != 0 sums terminate at j = nu(n) + 3; a couple of extra terms
    # double as vanishing checks
    for n in (0, 1, 4, 36, 144):
        for sigma in (mp.mpf(3) / 2, mp.mpf("2.2")):
            closed = local_series_2(n, sigma)
            if n == 0:
                direct = mp.fsum(
                    mp.mpc(local_sum_2(j)) * mp.power(2, -j * sigma)
                    for j in range(2, 60)
                )
            else:
                jmax = (n & -n).bit_length() + 6
                direct = sum(
                    local_sum_2_exp(j, n) / 2 ** (j * float(sigma))
                    for j in range(2, jmax)
                )
            assert abs(complex(closed) - complex(direct)) < 1e-7, (n, sigma)
    for p in (3, 5):
        for n in (0, 1, 9, 36):
            for sigma in (mp.mpf(3) / 2, mp.mpf("2.2")):
                closed = local_series_p(p, n, sigma)
                if n == 0:
                    direct = mp.fsum(
                        mp.mpc(local_sum_p(p, j)) * mp.power(p, -j * sigma)
                        for j in range(1, 60)
                    )
                else:
                    nu = 0
                    while n % p ** (nu + 1) == 0:
                        nu += 1
                    direct = sum(
                        local_sum_p_exp(p, j, n) / p ** (j * float(sigma))
                        for j in range(1, nu + 5)
                    )
                assert abs(complex(closed) - complex(direct)) < 1e-7, (p, n, sigma)


def test_local_factor_tables_match_exponential_sums():
    """The rational tables equal the local series at the special point."""
    for p, n in ((3, 12), (3, 13), (3, 24), (3, -4), (3, 45), (5, 24), (5, -3), (3, -8)):
        f2 = sum(local_sum_2_exp(j, n) / 2 ** (1.5 * j) for j in range(2, 10)) + (
            1 + 1j
        ) / 8
        table2 = complex(3 * (1 + 1j) / 8) * float(local_factor_2_exact(n))
        assert abs(f2 - table2) < 1e-9, n
        fp = sum(local_sum_p_exp(p, j, n) / p ** (1.5 * j) for j in range(1, 8))
        assert abs(fp - float(local_factor_p_exact(p, n))) < 1e-9, (p, n)


def test_local_factor_examples():
    from fractions import Fraction

    assert local_factor_2_exact(17) == 1  # nu = 0, 17 = 1 mod 8
    assert local_factor_2_exact(8) == Fraction(1, 2)  # odd nu branch
    assert local_factor_p_exact(3, 5) == Fraction(1, 3) - Fraction(2, 3)


def test_plus_term_small_cases():
    v = plus_term(1, 0, 1)
    assert abs(v - (2 + 2j)) < mp.mpf("1e-20")
    # weight vanishes at no c (odd c carry weight 2, even c weight 1)
    v3 = plus_term(3, 1, 1)
    direct = mp.mpc(0)
    m_mod = 12
    from quadtrace.arith import eps_odd, kronecker

    for r in range(1, m_mod):
        if math.gcd(r, m_mod) != 1:
            continue
        direct += kronecker(m_mod, r) * mp.mpc(eps_odd(r)) * mp.e ** (
            2j * mp.pi * r / m_mod
        )
    assert abs(v3 - 2 * direct) < mp.mpf("1e-18")


def test_plus_term_phase_and_symmetry():
    """Every inner sum lies on the (1+i)-ray: S = i conj(S).

    The naive |S(n)| = |S(-n)| symmetry holds on the plus-space support
    (n = 0 mod 4, where -n is also supported) but fails for n = 1 mod 4
    with even c (counterexample N = 3, c = 2, n = 1), so only the supported
    half is asserted.
    """
    for big_n, c in ((1, 3), (3, 2), (3, 5), (5, 4)):
        for n in (1, 4, 5, 8):
            s_pos = plus_term(big_n, n, c)
            assert abs(s_pos - 1j * mp.conj(s_pos)) < mp.mpf("1e-18")
            if n % 4 == 0:
                s_neg = plus_term(big_n, -n, c)
                assert abs(abs(s_pos) - abs(s_neg)) < mp.mpf("1e-18")


def test_plus_zeta_truncated_edges():
    kv = plus_zeta_truncated(3, 5, 2.5, 0)
    assert kv.value == 0
    kv = plus_zeta_truncated(3, 5, 2.5, 50)
    assert kv.tail_bound is not None and kv.tail_bound > 0


def test_plus_zeta_tail_decay_empirical():
    """Partial-sum increments shrink with the cutoff at s = 2.5."""
    a = plus_zeta_truncated(3, 5, 2.5, 50).value
    b = plus_zeta_truncated(3, 5, 2.5, 100).value
    c = plus_zeta_truncated(3, 5, 2.5, 200).value
    assert abs(c - b) < abs(b - a) + 1e-12


def test_factorization_at_convergent_point():
    """Truncated series equals the assembled product within the tail bound."""
    for p in (3, 5):
        values = plus_zeta_batch(p, [-4, -3, 5, 8], 2.5, 400)
        for kv in values:
            prod = assembled_product(p, kv.params["n"], 2.5)
            assert abs(kv.value - prod) <= kv.tail_bound, (p, kv.params)
            # and far inside it
            assert abs(kv.value - prod) < 1e-4


def test_kzeta_closed_forms():
    # complementary closed forms sum to the zeta ratio
    for p in (3, 5):
        s = mp.mpf("1.25")
        total = kzeta_level_closed(p, s) + kzeta_coprime_closed(p, s)
        assert abs(total - mp.zeta(2 * s - 1) / mp.zeta(2 * s)) < mp.mpf("1e-25")
    assert mp.isfinite(kzeta_level_closed(5, mp.mpf("1.5")))
    with pytest.raises(ValueError):
        kzeta_level_closed(3, 1)


def test_kzeta_truncation_within_bound():
    for p in (3, 5):
        kv = kzeta_level_truncated(p, 1.25, 5000)
        closed = kzeta_level_closed(p, 1.25)
        assert abs(kv.value - complex(closed)) <= kv.tail_bound
