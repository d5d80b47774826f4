"""Trace identities over Gamma_0(p)."""

import math
from fractions import Fraction

from mpmath import mp

from quadtrace.traces import (
    pin_convention,
    real_trace_rhs,
    trace_imaginary,
    trace_real_nonsquare,
    verify_imaginary_trace_identity,
    verify_real_trace_identity,
)


def setup_module():
    mp.dps = 30


def test_convention_pinned_by_seed_cases():
    assert pin_convention() == "both-signs"


def test_trace_imaginary_values():
    assert trace_imaginary(3, -3) == Fraction(2, 3)
    assert trace_imaginary(3, -4) == 0
    assert trace_imaginary(5, -4) == 2
    assert trace_imaginary(3, -12) == Fraction(8, 3)


def test_trace_denominators_divide_six():
    for p in (3, 5):
        for n in range(-60, 0):
            if n % 4 not in (0, 1):
                continue
            assert 6 % trace_imaginary(p, n).denominator == 0


def test_imaginary_identity_sweep():
    for p in (3, 5, 7):
        for n in range(-150, 0):
            if n % 4 not in (0, 1):
                continue
            assert verify_imaginary_trace_identity(p, n).passed, (p, n)


def test_imaginary_invariant_under_rep_permutation(monkeypatch):
    import quadtrace.quadforms as qf

    base = {(p, n): trace_imaginary(p, n) for p, n in ((3, -20), (5, -24), (7, -47))}
    orig = qf.class_reps

    def reversed_reps(d, include_imprimitive=False):
        return list(reversed(orig(d, include_imprimitive)))

    monkeypatch.setattr(qf, "class_reps", reversed_reps)
    for (p, n), expected in base.items():
        assert trace_imaginary(p, n) == expected


def test_real_trace_empty_sets():
    # 5 is not a square mod 12, so no forms of discriminant 5 carry 3 | a
    assert trace_real_nonsquare(3, 5) == 0
    assert abs(real_trace_rhs(3, 5)) < mp.mpf("1e-25")


def test_real_trace_seed_values():
    from quadtrace.quadforms import automorph_unit

    # two orbits of discriminant 12 at p = 3, both with unit stabilizer index
    expected = 2 * automorph_unit(12).log_value()
    assert abs(trace_real_nonsquare(3, 12) - expected) < mp.mpf("1e-25")


def test_real_trace_translate_invariance():
    from quadtrace.quadforms import (
        QuadForm,
        automorph_unit,
        gamma0_orbits,
        gamma0_stabilizer_index,
    )

    p, n = 3, 40
    total = mp.mpf(0)
    for oc in gamma0_orbits(p, n):
        translate = oc.rep.apply((1, 0, p, 1))  # a Gamma_0(p) element
        d0 = n // (translate.content() ** 2)
        total += gamma0_stabilizer_index(p, translate) * automorph_unit(d0).log_value()
    assert abs(total - trace_real_nonsquare(p, n)) < mp.mpf("1e-25")


def test_real_identity_sweep():
    for p in (3, 5):
        for n in range(5, 150):
            if n % 4 in (2, 3) or math.isqrt(n) ** 2 == n:
                continue
            rep = verify_real_trace_identity(p, n)
            assert rep.passed, (p, n, rep.rel_err)


def test_real_identity_unit_route_matches_l_value_route():
    for p, n in ((3, 13), (3, 45), (5, 24)):
        a = real_trace_rhs(p, n, via_l_value=True)
        b = real_trace_rhs(p, n, via_l_value=False)
        assert abs(a - b) < mp.mpf("1e-25")
