from math import gcd, isqrt

import pytest
from hypothesis import given, settings, strategies as st

from zetachi.number_field import (
    RATIONAL_FIELD,
    DiscriminantError,
    KroneckerCharacter,
    is_fundamental_discriminant,
    fundamental_discriminants,
    kronecker_symbol,
    enumerate_reduced_forms,
    enumerate_reduced_forms_recount,
    continued_fraction_unit,
    field_invariants,
)

CORPUS = fundamental_discriminants(300)


def test_kronecker_spot_values():
    assert kronecker_symbol(-4, 2) == 0
    assert kronecker_symbol(5, 4) == 1
    assert kronecker_symbol(-4, 3) == -1


def primes_below(n):
    sieve = [True] * n
    sieve[:2] = [False, False]
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = [False] * len(sieve[p * p::p])
    return [p for p, ok in enumerate(sieve) if ok]


def test_kronecker_matches_euler_criterion():
    for d in (-23, -4, -3, 5, 8, 13, 60, -163):
        for p in primes_below(100):
            if p == 2 or d % p == 0:
                continue
            euler = pow(d % p, (p - 1) // 2, p)
            euler = -1 if euler == p - 1 else euler
            assert kronecker_symbol(d, p) == euler, (d, p)


@given(st.sampled_from([d for d in CORPUS if abs(d) <= 60]),
       st.integers(0, 400), st.integers(0, 400))
@settings(max_examples=120, deadline=None)
def test_character_multiplicative(d, a, b):
    chi = KroneckerCharacter.from_discriminant(d)
    assert chi(a * b) == chi(a) * chi(b)
    assert (chi(a) == 0) == (gcd(a, chi.modulus) > 1)


def test_character_parity():
    for d in (-3, -4, -23, 5, 8, 12):
        chi = KroneckerCharacter.from_discriminant(d)
        assert chi(chi.modulus - 1) == (1 if d > 0 else -1)
        assert chi.is_odd == (d < 0)


def test_fundamental_discriminant_predicate():
    assert is_fundamental_discriminant(5)
    assert is_fundamental_discriminant(-4)
    assert is_fundamental_discriminant(-8)
    for bad in (0, 1, 2, 3, 4, 6, -1, -2, -5, -9, 25, 45, "Q"):
        assert not is_fundamental_discriminant(bad)


def test_reduced_form_counts():
    assert enumerate_reduced_forms(-4) == 1
    assert enumerate_reduced_forms(-23) == 3
    assert enumerate_reduced_forms(-47) == 5
    assert enumerate_reduced_forms(5) == 1


def test_reduced_forms_reject_non_fundamental():
    with pytest.raises(DiscriminantError):
        enumerate_reduced_forms(6)
    with pytest.raises(DiscriminantError):
        enumerate_reduced_forms(RATIONAL_FIELD)


def test_recount_matches_over_corpus():
    for d in CORPUS:
        assert enumerate_reduced_forms(d) == enumerate_reduced_forms_recount(d), d


def test_continued_fraction_units():
    for d, x, y, norm, reg in [
        (5, 1, 1, -1, 0.4812118250596),
        (8, 2, 1, -1, 0.8813735870195),
        (12, 4, 1, 1, 1.3169578969248),
    ]:
        unit, regulator, n = continued_fraction_unit(d)
        assert unit == (x, y)
        assert n == norm
        assert regulator == pytest.approx(reg, abs=1e-12)


def test_unit_norm_equation_exact():
    for d in [d for d in CORPUS if d > 0]:
        (x, y), regulator, norm = continued_fraction_unit(d)
        assert x * x - d * y * y == 4 * norm
        assert abs(norm) == 1
        assert regulator > 0


def test_field_invariants_rational():
    inv = field_invariants(RATIONAL_FIELD)
    assert (inv.r1, inv.r2, inv.w, inv.h, inv.regulator) == (1, 0, 2, 1, 1.0)
    assert inv.unit_rank == 0


def test_field_invariants_minus_three():
    inv = field_invariants(-3)
    assert (inv.w, inv.h, inv.regulator) == (6, 1, 1.0)


def test_field_invariants_five():
    inv = field_invariants(5)
    assert (inv.w, inv.h) == (2, 1)
    assert inv.regulator == pytest.approx(0.4812118, abs=1e-6)


def test_narrow_wide_relation():
    for d in [d for d in CORPUS if d > 0]:
        inv = field_invariants(d)
        h_plus = enumerate_reduced_forms(d)
        if inv.unit_norm == -1:
            assert h_plus == inv.h
        else:
            assert h_plus == 2 * inv.h


def test_corpus_class_numbers_positive():
    for d in CORPUS:
        assert field_invariants(d).h >= 1


def test_invalid_discriminant_message_names_criterion():
    with pytest.raises(DiscriminantError, match="mod 4"):
        field_invariants(6)
    with pytest.raises(DiscriminantError, match="squarefree"):
        field_invariants(45)
