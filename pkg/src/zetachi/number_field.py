"""Classical invariants of the rational field and quadratic fields.

Class numbers come from reduced binary quadratic forms (counts of reduced
forms in the imaginary case, cycles of reduced indefinite forms in the real
case), fundamental units from the periodic continued fraction of the
standard generator of the ring of integers.  Nothing here evaluates an
L-function, so these invariants stay independent of the analytic oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

import mpmath

__all__ = [
    "RATIONAL_FIELD",
    "DiscriminantError",
    "QuadraticFieldInvariants",
    "KroneckerCharacter",
    "is_fundamental_discriminant",
    "fundamental_discriminants",
    "kronecker_symbol",
    "enumerate_reduced_forms",
    "enumerate_reduced_forms_recount",
    "continued_fraction_unit",
    "field_invariants",
]

# Marker for the rational field; kept distinct from any discriminant value.
RATIONAL_FIELD = "Q"

_LOG_DPS = 40


class DiscriminantError(ValueError):
    """The argument is not a fundamental discriminant (message says why)."""


@dataclass(frozen=True)
class QuadraticFieldInvariants:
    """Signature, roots of unity, class number, fundamental unit, regulator."""

    d: object  # fundamental discriminant, or RATIONAL_FIELD
    r1: int
    r2: int
    w: int
    h: int
    fundamental_unit: Optional[tuple]  # (x, y) meaning (x + y*sqrt(d)) / 2
    unit_norm: Optional[int]
    regulator: float

    @property
    def unit_rank(self):
        return self.r1 + self.r2 - 1


@dataclass(frozen=True)
class KroneckerCharacter:
    """The real character attached to a quadratic field, tabulated mod |d|."""

    discriminant: int
    modulus: int
    values: tuple

    @classmethod
    def from_discriminant(cls, d):
        if not is_fundamental_discriminant(d):
            raise DiscriminantError(_fundamental_failure(d))
        q = abs(d)
        return cls(d, q, tuple(kronecker_symbol(d, a) for a in range(q)))

    def __call__(self, a):
        return self.values[a % self.modulus]

    @property
    def is_odd(self):
        return self.discriminant < 0


def _squarefree(n):
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 1
    return True


def _fundamental_failure(d):
    if not isinstance(d, int):
        return f"{d!r} is not an integer discriminant"
    if d in (0, 1):
        return f"{d} is not the discriminant of a quadratic field"
    if d % 4 == 1:
        return f"{d} = 1 mod 4 but is not squarefree"
    if d % 4 != 0:
        return f"{d} = {d % 4} mod 4; discriminants are 0 or 1 mod 4"
    m = d // 4
    if m % 4 not in (2, 3):
        return f"{d} = 4*{m} with {m} = {m % 4} mod 4"
    return f"{d} = 4*{m} but {m} is not squarefree"


def is_fundamental_discriminant(d) -> bool:
    if not isinstance(d, int) or d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def fundamental_discriminants(bound):
    """All fundamental discriminants with |d| <= bound, sorted by (|d|, sign)."""
    out = [d for a in range(2, bound + 1) for d in (-a, a)
           if is_fundamental_discriminant(d)]
    return sorted(out, key=lambda d: (abs(d), d))


# ---------------------------------------------------------------------------
# Kronecker symbol


def _jacobi(a, m):
    # m odd positive
    a %= m
    r = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                r = -r
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            r = -r
        a %= m
    return r if m == 1 else 0


def kronecker_symbol(d, n: int) -> int:
    """The Kronecker symbol (d / n) for n >= 0."""
    if d == RATIONAL_FIELD:
        d = 1
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1 if d in (1, -1) else 0
    r = 1
    e = 0
    m = n
    while m % 2 == 0:
        m //= 2
        e += 1
    if e:
        if d % 2 == 0:
            return 0
        if e % 2 and d % 8 in (3, 5):
            r = -r
    return r * _jacobi(d, m)


# ---------------------------------------------------------------------------
# binary quadratic forms


def _require_fundamental(d):
    if d == RATIONAL_FIELD or not is_fundamental_discriminant(d):
        raise DiscriminantError(_fundamental_failure(d))


def _reduced_forms_imaginary(d):
    """Reduced positive definite forms (a, b, c): |b| <= a <= c, with b >= 0
    when |b| = a or a = c.  Swept over b, then divisors a of (b^2 - d)/4."""
    forms = []
    for b in range(abs(d) % 2, isqrt(abs(d) // 3) + 1, 2):
        m = (b * b - d) // 4
        for a in range(max(b, 1), isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            forms.append((a, b, c))
            if b and a != b and a != c:
                forms.append((a, -b, c))
    return forms


def _reduced_forms_imaginary_recount(d):
    """Same set swept over a, then b in (-a, a]."""
    forms = []
    for a in range(1, isqrt(abs(d) // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == -b or a == c):
                continue
            forms.append((a, b, c))
    return forms


def _is_reduced_indefinite(a, b, c, d):
    # 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b, checked exactly
    if b <= 0 or b * b >= d:
        return False
    t = 2 * abs(a)
    # sqrt(d) - b < t  <=>  d < (t + b)^2 ; t < sqrt(d) + b  <=>  (t - b)^2 < d
    return d < (t + b) ** 2 and (t - b) ** 2 < d


def _reduced_forms_real(d):
    """Reduced indefinite forms of discriminant d > 0, swept over b."""
    forms = []
    for b in range(2 - d % 2, isqrt(d) + 1, 2):
        m = (d - b * b) // 4  # = -a*c > 0
        for a in range(1, isqrt(m) + 1):
            if m % a:
                continue
            for aa in {a, m // a}:
                if _is_reduced_indefinite(aa, b, -(m // aa), d):
                    forms.append((aa, b, -(m // aa)))
                    forms.append((-aa, b, m // aa))
    return sorted(set(forms))


def _reduced_forms_real_recount(d):
    """Same set swept over |a|, then b."""
    forms = []
    s = isqrt(d)
    for a in range(1, s + 1):
        for b in range(1, s + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            if _is_reduced_indefinite(a, b, num // (4 * a), d):
                forms.append((a, b, num // (4 * a)))
                forms.append((-a, b, -(num // (4 * a))))
    return sorted(set(forms))


def _rho(form, d, s):
    """Reduction step on reduced indefinite forms (cycles these forms)."""
    a, b, c = form
    t = 2 * abs(c)
    b2 = s - (s + b) % t
    c2 = (b2 * b2 - d) // (4 * c)
    return (c, b2, c2)


def _count_cycles(forms, d, *, backward=False):
    forms = list(forms)
    step = {f: _rho(f, d, isqrt(d)) for f in forms}
    for f, g in step.items():
        if g not in step:
            raise AssertionError(f"reduction left the reduced set: {f} -> {g}")
    if backward:
        step = {g: f for f, g in step.items()}
        forms = forms[::-1]
    seen = set()
    cycles = 0
    for f in forms:
        if f in seen:
            continue
        cycles += 1
        while f not in seen:
            seen.add(f)
            f = step[f]
    return cycles


def enumerate_reduced_forms(d) -> int:
    """Class count from reduced forms: number of reduced positive definite
    forms for d < 0, number of cycles of reduced indefinite forms (the
    narrow class number) for d > 0."""
    _require_fundamental(d)
    if d < 0:
        return len(_reduced_forms_imaginary(d))
    return _count_cycles(_reduced_forms_real(d), d)


def enumerate_reduced_forms_recount(d) -> int:
    """Independent recount with a different sweep (and, in the real case,
    the inverse reduction step)."""
    _require_fundamental(d)
    if d < 0:
        return len(_reduced_forms_imaginary_recount(d))
    return _count_cycles(_reduced_forms_real_recount(d), d, backward=True)


# ---------------------------------------------------------------------------
# fundamental units


def continued_fraction_unit(d):
    """Smallest unit > 1 of the real quadratic order of discriminant d > 0.

    Returns ((x, y), regulator, norm) with the unit (x + y*sqrt(d)) / 2 and
    regulator log of the unit, from the periodic continued fraction of
    (b0 + sqrt(d)) / 2 where b0 is the parity of d.
    """
    _require_fundamental(d)
    if d < 0:
        raise DiscriminantError("fundamental unit requires a real field (d > 0)")
    s = isqrt(d)
    b0 = d % 2
    P, Q = b0, 2
    p_prev, p_curr = 0, 1  # p_{-2}, p_{-1}
    q_prev, q_curr = 1, 0
    for _ in range(16 * d + 64):
        if Q <= 0:
            raise AssertionError("continued fraction left the positive branch")
        a = (P + s) // Q
        p_prev, p_curr = p_curr, a * p_curr + p_prev
        q_prev, q_curr = q_curr, a * q_curr + q_prev
        x, y = 2 * p_curr - b0 * q_curr, q_curr
        norm4 = x * x - d * y * y
        if norm4 in (4, -4):
            with mpmath.workdps(_LOG_DPS):
                reg = mpmath.log((x + y * mpmath.sqrt(d)) / 2)
                regulator = float(reg)
            return (x, y), regulator, norm4 // 4
        P = a * Q - P
        Q = (d - P * P) // Q
    raise AssertionError(f"no unit found for d = {d}")


# ---------------------------------------------------------------------------
# assembled invariants


def field_invariants(d) -> QuadraticFieldInvariants:
    """h, R, w and the signature, from the oracles above."""
    if d == RATIONAL_FIELD:
        return QuadraticFieldInvariants(
            d=RATIONAL_FIELD, r1=1, r2=0, w=2, h=1,
            fundamental_unit=None, unit_norm=None, regulator=1.0,
        )
    _require_fundamental(d)
    if d < 0:
        w = 6 if d == -3 else 4 if d == -4 else 2
        return QuadraticFieldInvariants(
            d=d, r1=0, r2=1, w=w, h=enumerate_reduced_forms(d),
            fundamental_unit=None, unit_norm=None, regulator=1.0,
        )
    unit, regulator, norm = continued_fraction_unit(d)
    h_plus = enumerate_reduced_forms(d)
    if norm == 1:
        if h_plus % 2:
            raise AssertionError("narrow class number must be even when N(e) = +1")
        h = h_plus // 2
    else:
        h = h_plus
    return QuadraticFieldInvariants(
        d=d, r1=2, r2=0, w=2, h=h,
        fundamental_unit=unit, unit_norm=norm, regulator=regulator,
    )
