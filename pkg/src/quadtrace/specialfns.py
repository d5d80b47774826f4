"""Transcendental kernels: erfc, incomplete gamma at 1/2, the two special
functions carrying the harmonic part of the weight-1/2 series, and a small
certified-quadrature wrapper.

alpha(y) = sqrt(y) * int_0^infty log(t+1)/sqrt(t) * exp(-pi y t) dt, y > 0.

alpha_companion(t) = log(t) - sqrt(pi) * int_0^t exp(w^2) erfc(w) dw
                     + log(2) + gamma/2,  t > 0,

and the two are linked by  -2 * alpha_companion(sqrt(pi * y)) = alpha(y),
equivalently -2 * alpha_companion(2 m sqrt(pi N v)) = alpha(4 N m^2 v);
the test grid checks this to 1e-8 with both sides computed by independent
quadratures.

The alpha integrand's endpoint singularity t^{-1/2} is removed by t = u^2
on [0, 1]; the tail is truncated where exp(-pi y T) certifies the remainder.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .precision import hp


@dataclass
class QuadratureResult:
    value: mpf
    error_bound: mpf
    evaluations: int


def erfc(w) -> mpf:
    with hp():
        return +mp.erfc(mp.mpf(w))


def inc_gamma_half(x) -> mpf:
    """Upper incomplete gamma Gamma(1/2, x) = sqrt(pi) * erfc(sqrt(x)), x > 0."""
    with hp():
        x = mp.mpf(x)
        if x <= 0:
            raise ValueError("requires x > 0")
        return +(mp.sqrt(mp.pi) * mp.erfc(mp.sqrt(x)))


def inc_gamma_minus_half(x) -> mpf:
    """Gamma(-1/2, x) via the recurrence with Gamma(1/2, x)."""
    with hp():
        x = mp.mpf(x)
        if x <= 0:
            raise ValueError("requires x > 0")
        return +(2 * (mp.exp(-x) / mp.sqrt(x) - inc_gamma_half(x)))


def quad_certified(f, points, target=mpf("1e-12"), extra_dps=10) -> QuadratureResult:
    """mp.quad with its error estimate surfaced; counts integrand evaluations."""
    count = 0

    def wrapped(t):
        nonlocal count
        count += 1
        return f(t)

    with hp(extra=extra_dps):
        val, err = mp.quad(wrapped, points, error=True)
        err = mp.mpf(err)
        if not (err < target):
            # one refinement pass at higher degree before reporting failure
            val, err = mp.quad(wrapped, points, error=True, maxdegree=10)
            err = mp.mpf(err)
        return QuadratureResult(value=+val, error_bound=+err, evaluations=count)


def alpha(y) -> QuadratureResult:
    """Certified evaluation of the decaying special function alpha(y), y > 0."""
    with hp(extra=10):
        y = mp.mpf(y)
        if y <= 0:
            raise ValueError("requires y > 0")
        target = mp.mpf("1e-14")
        # head: t = u^2 on [0, 1] removes the 1/sqrt(t) endpoint singularity
        head = quad_certified(
            lambda u: 2 * mp.log(1 + u * u) * mp.exp(-mp.pi * y * u * u),
            [0, 1],
            target=target,
        )
        # tail: log(1+t)/sqrt(t) <= sqrt(t) <= e^{(pi y /2) t} decay control;
        # truncate at T with remainder <= exp(-pi y T) / (pi y)
        t_cut = mp.mpf(1)
        while mp.exp(-mp.pi * y * t_cut) / (mp.pi * y) > target and t_cut < 500:
            t_cut += 1
        tail = quad_certified(
            lambda t: mp.log(1 + t) / mp.sqrt(t) * mp.exp(-mp.pi * y * t),
            [1, t_cut],
            target=target,
        )
        trunc = mp.exp(-mp.pi * y * t_cut) / (mp.pi * y)
        val = mp.sqrt(y) * (head.value + tail.value)
        err = mp.sqrt(y) * (head.error_bound + tail.error_bound + trunc)
        return QuadratureResult(
            value=+val,
            error_bound=+err,
            evaluations=head.evaluations + tail.evaluations,
        )


def alpha_companion(t) -> QuadratureResult:
    """The log-plus-erfc-integral companion of alpha, certified quadrature."""
    with hp(extra=10):
        t = mp.mpf(t)
        if t <= 0:
            raise ValueError("requires t > 0")
        # exp(w^2) erfc(w) is evaluated directly; mpmath keeps the scales exact
        res = quad_certified(
            lambda w: mp.exp(w * w) * mp.erfc(w), [0, t], target=mp.mpf("1e-14")
        )
        val = mp.log(t) - mp.sqrt(mp.pi) * res.value + mp.log(2) + mp.euler / 2
        return QuadratureResult(
            value=+val,
            error_bound=+(mp.sqrt(mp.pi) * res.error_bound),
            evaluations=res.evaluations,
        )


def digamma_convention(k: int) -> mpf:
    """psi at the only arguments in scope: psi(0) := -gamma (convention), psi(1) = -gamma."""
    if k not in (0, 1):
        raise ValueError("only psi(0) and psi(1) are defined here")
    with hp():
        return +(-mp.euler)
