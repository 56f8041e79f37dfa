"""Analytic oracle: leading value of the Dedekind zeta function at s = 0.

The zeta function of a quadratic field factors as the Riemann zeta function
times the L-function of the attached real character, so the value at 0 only
needs finite character sums: an exact rational first-moment sum for odd
characters and a log-gamma sum for the derivative in the even case.  No
class number, regulator, or unit enters anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .number_field import (
    RATIONAL_FIELD,
    DiscriminantError,
    KroneckerCharacter,
    is_fundamental_discriminant,
)

__all__ = [
    "ZetaStarValue",
    "ParityError",
    "log_gamma",
    "L_at_zero",
    "L_prime_at_zero",
    "zeta_star_at_zero",
    "ZETA_AT_ZERO",
]

# zeta(0); the test suite re-derives this from a numeric continuation.
ZETA_AT_ZERO = Fraction(-1, 2)

_DPS = 30
_STIRLING_SHIFT = 24

# B_2, B_4, ..., B_20
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
    Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
]


class ParityError(ValueError):
    """Character parity does not match the requested L-value."""


@dataclass(frozen=True)
class ZetaStarValue:
    """Order of vanishing at s = 0 and the leading Taylor coefficient."""

    order: int
    leading: float
    exact: Optional[Fraction] = None  # set when the leading value is rational


def log_gamma(x, dps: int = _DPS):
    """log Gamma(x) for x > 0 by upward recurrence and the Stirling series.

    Accepts Fractions (evaluated exactly at working precision).  Accuracy is
    far below 1e-13 absolute for the arguments used here; the test suite
    checks the reflection and duplication identities.
    """
    with mpmath.workdps(dps + 10):
        if isinstance(x, Fraction):
            z = mpmath.mpf(x.numerator) / x.denominator
        else:
            z = mpmath.mpf(x)
        if z <= 0:
            raise ValueError("log_gamma requires a positive argument")
        shift = mpmath.mpf(0)
        while z < _STIRLING_SHIFT:
            shift -= mpmath.log(z)
            z += 1
        out = (z - mpmath.mpf(1) / 2) * mpmath.log(z) - z \
            + mpmath.log(2 * mpmath.pi) / 2
        zpow = z
        z2 = z * z
        for k, b in enumerate(_BERNOULLI, start=1):
            out += mpmath.mpf(b.numerator) / (b.denominator * 2 * k * (2 * k - 1) * zpow)
            zpow *= z2
        return out + shift


def L_at_zero(chi: KroneckerCharacter) -> Fraction:
    """L(0, chi) for an odd character, as an exact rational first moment."""
    if not chi.is_odd:
        raise ParityError("L(0, chi) by finite sum needs an odd character")
    q = chi.modulus
    return Fraction(-sum(chi(a) * a for a in range(1, q)), q)


def L_prime_at_zero(chi: KroneckerCharacter, dps: int = _DPS) -> float:
    """L'(0, chi) for an even nontrivial character, as a log-gamma sum."""
    if chi.is_odd:
        raise ParityError("L'(0, chi) by log-gamma sum needs an even character")
    q = chi.modulus
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for a in range(1, q):
            v = chi(a)
            if v:
                total += v * log_gamma(Fraction(a, q), dps)
        return float(total)


def zeta_star_at_zero(d) -> ZetaStarValue:
    """Leading coefficient of the field zeta function at s = 0."""
    if d == RATIONAL_FIELD:
        return ZetaStarValue(order=0, leading=float(ZETA_AT_ZERO),
                             exact=ZETA_AT_ZERO)
    if not is_fundamental_discriminant(d):
        raise DiscriminantError(f"{d!r} is not a fundamental discriminant")
    chi = KroneckerCharacter.from_discriminant(d)
    if d < 0:
        exact = ZETA_AT_ZERO * L_at_zero(chi)
        return ZetaStarValue(order=0, leading=float(exact), exact=exact)
    return ZetaStarValue(order=1,
                         leading=float(ZETA_AT_ZERO) * L_prime_at_zero(chi))
