"""Working-precision configuration shared by the high-precision routines.

All transcendental quantities are computed with mpmath at a configurable
number of decimal digits (default 64) plus a fixed guard margin, independent
of the ambient mpmath state.  Exact quantities never go through here.
"""

from __future__ import annotations

import contextlib
from fractions import Fraction

from mpmath import mp

DEFAULT_DPS = 64
GUARD_DPS = 10

_working_dps = DEFAULT_DPS


def set_working_dps(dps: int) -> None:
    """Set the global working precision in decimal digits (minimum 30)."""
    global _working_dps
    dps = int(dps)
    if dps < 30:
        raise ValueError("working precision below 30 digits is not supported")
    _working_dps = dps


def working_dps() -> int:
    return _working_dps


@contextlib.contextmanager
def hp(extra: int = 0):
    """mpmath context pinned at the configured working precision + guard."""
    with mp.workdps(_working_dps + GUARD_DPS + extra):
        yield mp


def to_mpf(x):
    """Convert int/float/Fraction/mpf to mpf at the current context precision."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)
