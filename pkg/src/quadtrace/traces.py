"""Quadratic traces over Gamma_0(p) and machine verification of the two
trace identities.

Imaginary side (n < 0): the weighted orbit count sum 1/|stab| equals
    4(p+1)/p H_{1,p}(-n) - 2(p+1)/(p-1) H_{p,p}(-n)
exactly, under the both-signs convention pinned by the seed cases.

Real side (n > 0 nonsquare): each Gamma_0(p)-orbit contributes
kappa * 2 log(eps) to the geodesic-length sum, where eps is the automorph
unit of the primitive discriminant n/f^2 (f the content of the orbit) and
kappa is the index of the Gamma_0(p)-stabilizer in the full automorph
group (kappa = 1 unless p divides the content).  Writing n = t m^2 the
half-sum evaluates in closed form as

    2 pi (p+1)/p * h*(n)
      + 4 p m (1 - chi_t(2)/2)(1 - chi_t(p)/p) T^{chi_t}_{4p,0}(m)
        * A2(n) Ap(p, n) * log(fund unit of t) * h(t),

with the local tables A2/Ap shared with the Kloosterman special value.
This normalization was pinned against the orbit/geodesic machinery; variant
normalizations with sqrt(n)-weighted terms fail the sweep (see README).
The verifier computes the t-atom through L(1, chi_t) by finite character
sums, so the two sides share no L-value code.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp

from .classnumbers import generalized_hurwitz, regulator_class_sum
from .kloosterman import local_factor_2_exact, local_factor_p_exact, t_sum_special
from .lvalues import chi, fundamental_decomposition, l_value_at_1
from .precision import hp, to_mpf
from .quadforms import (
    automorph_unit,
    class_number,
    gamma0_orbits,
    gamma0_stabilizer_index,
    weighted_orbit_count,
)
from .report import VerificationReport, fmt_exact, numeric_report

PINNED_CONVENTION = "both-signs"
_SEED_CASES = ((3, -3), (3, -4), (5, -4))


def _imaginary_rhs(p: int, n: int) -> Fraction:
    a = -n
    return Fraction(4 * (p + 1), p) * generalized_hurwitz(1, p, a) - Fraction(
        2 * (p + 1), p - 1
    ) * generalized_hurwitz(p, p, a)


def pin_convention() -> str:
    """Re-run the seed cases and return the definiteness convention they pin."""
    for conv in ("both-signs", "pos-def"):
        if all(
            weighted_orbit_count(p, n, conv) == _imaginary_rhs(p, n)
            for p, n in _SEED_CASES
        ):
            return conv
    raise AssertionError("no convention satisfies the seed identities")


def trace_imaginary(p: int, n: int, convention: str = PINNED_CONVENTION) -> Fraction:
    """Weighted orbit count of the discriminant-n forms with p | a, n < 0."""
    if n >= 0 or n % 4 not in (0, 1):
        raise ValueError("requires a negative discriminant")
    return weighted_orbit_count(p, n, convention)


def trace_real_nonsquare(p: int, n: int):
    """Half the geodesic-length sum over Gamma_0(p)-classes, n > 0 nonsquare.

    Per orbit: kappa * log(automorph unit of the primitive discriminant).
    """
    with hp():
        total = mp.mpf(0)
        for oc in gamma0_orbits(p, n):
            d0 = n // (oc.content**2)
            kappa = gamma0_stabilizer_index(p, oc.rep)
            total += kappa * automorph_unit(d0).log_value()
        return +total


def real_trace_rhs(p: int, n: int, via_l_value: bool = True):
    """Closed form for the real-trace half-sum (see module docstring).

    via_l_value evaluates the fundamental atom as (sqrt(t)/2) L(1, chi_t)
    by finite character sums (the default, keeping the check two-sided);
    otherwise the unit logarithm and class number are used directly.
    """
    split = fundamental_decomposition(n)
    t, m = split.t, split.m
    with hp():
        term1 = 2 * mp.pi * (p + 1) / p * regulator_class_sum(n)
        rational = (
            4
            * p
            * m
            * (1 - Fraction(chi(t, 2), 2))
            * (1 - Fraction(chi(t, p), p))
            * t_sum_special(p, t, m)
            * local_factor_2_exact(n)
            * local_factor_p_exact(p, n)
        )
        if via_l_value:
            atom = mp.sqrt(t) / 2 * l_value_at_1(t)
        else:
            from .quadforms import fundamental_unit

            atom = fundamental_unit(t).log_value() * class_number(t)
        return +(term1 + to_mpf(rational) * atom)


def verify_imaginary_trace_identity(p: int, n: int) -> VerificationReport:
    """Exact rational comparison of the weighted orbit count with the
    H_{1,p}/H_{p,p} combination."""
    lhs = trace_imaginary(p, n)
    rhs = _imaginary_rhs(p, n)
    return VerificationReport(
        check="imaginary-trace",
        params={"p": p, "n": n},
        lhs=fmt_exact(lhs),
        rhs=fmt_exact(rhs),
        abs_err="0" if lhs == rhs else fmt_exact(abs(lhs - rhs)),
        rel_err="0" if lhs == rhs else "1",
        passed=lhs == rhs,
    )


def verify_real_trace_identity(p: int, n: int) -> VerificationReport:
    """Geodesic-length sum against the closed form, relative 1e-9."""
    lhs = trace_real_nonsquare(p, n)
    rhs = real_trace_rhs(p, n)
    return numeric_report("real-trace", {"p": p, "n": n}, lhs, rhs, "1e-9")
