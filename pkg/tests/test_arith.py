import math

import pytest
from pydantic import ValidationError
from sympy import isprime, primefactors

from app.schemas.arith import PrimePower
from app.services.arith_service import (
    ArithmeticService, build_spf_table, is_unitary_divisor, smallest_prime_not_dividing,
)
from app.utils.exceptions import DomainError


def values(components):
    return {q.value for q in components}


# ========== Prime powers ==========

def test_prime_power_value_and_label():
    q = PrimePower(prime=2, exponent=3)
    assert q.value == 8
    assert str(q) == "2^3"


@pytest.mark.parametrize("prime, exponent", [(4, 1), (1, 1), (3, 0)])
def test_prime_power_rejects_non_prime_powers(prime, exponent):
    with pytest.raises(ValidationError):
        PrimePower(prime=prime, exponent=exponent)


# ========== Unitary components ==========

@pytest.mark.parametrize("m, expected", [(1, set()), (12, {4, 3}), (30, {2, 3, 5})])
def test_unitary_components(arith, m, expected):
    assert values(arith.unitary_components(m)) == expected


def test_unitary_components_sorted_by_prime(arith):
    assert [q.prime for q in arith.unitary_components(2**4 * 3 * 7**2)] == [2, 3, 7]
    assert arith.component_values(2**4 * 3 * 7**2) == [16, 3, 49]


def test_unitary_components_rejects_zero(arith):
    with pytest.raises(DomainError):
        arith.unitary_components(0)


def test_factorization_beyond_the_sieve():
    small = ArithmeticService(sieve_limit=1000)
    assert values(small.unitary_components(8 * 1009 * 1013)) == {8, 1009, 1013}
    assert values(small.unitary_components(1009**2)) == {1009**2}


def test_components_multiply_back(arith, rng):
    for _ in range(200):
        m = rng.randint(1, 10**6)
        components = arith.unitary_components(m)
        assert math.prod(q.value for q in components) == m
        assert len({q.prime for q in components}) == len(components)


# ========== Unitary divisors ==========

@pytest.mark.parametrize("d, m, expected", [(1, 12, True), (4, 12, True), (2, 12, False), (5, 12, False)])
def test_is_unitary_divisor(d, m, expected):
    assert is_unitary_divisor(d, m) is expected


def test_is_unitary_divisor_domain():
    with pytest.raises(DomainError):
        is_unitary_divisor(0, 12)


@pytest.mark.parametrize("m, expected", [
    (1, [1]),
    (12, [1, 3, 4, 12]),
    (30, [1, 2, 3, 5, 6, 10, 15, 30]),
])
def test_unitary_divisors(arith, m, expected):
    assert arith.unitary_divisors(m) == expected


def test_unitary_divisors_match_trial_division(arith):
    for m in range(1, 2001):
        brute = [d for d in range(1, m + 1) if m % d == 0 and math.gcd(d, m // d) == 1]
        divisors = arith.unitary_divisors(m)
        assert divisors == brute
        assert len(divisors) == 2 ** len(primefactors(m))


@pytest.mark.parametrize("m, expected", [(1, 2), (6, 5), (30, 7), (2 * 3 * 5 * 7 * 11, 13)])
def test_smallest_prime_not_dividing(m, expected):
    assert smallest_prime_not_dividing(m) == expected


# ========== SPF table ==========

def test_spf_table_small():
    table = build_spf_table(10)
    assert table.smallest_factor(9) == 3
    assert table.smallest_factor(10) == 2
    assert table.smallest_factor(7) == 7
    assert not table.spf.flags.writeable


def test_spf_table_invariants():
    table = build_spf_table(2000)
    for m in range(2, 2001):
        p = table.smallest_factor(m)
        assert m % p == 0 and isprime(p)
        assert table.is_prime(m) == isprime(m)


def test_spf_table_rejects_small_limit():
    with pytest.raises(DomainError):
        build_spf_table(1)


def test_spf_table_grows_on_demand():
    service = ArithmeticService(sieve_limit=10**6)
    assert service.spf_table(100).limit >= 100
    assert service.spf_table(200000).limit >= 200000
    assert service.spf_table(10**7).limit == 10**6


def test_prime_powers_upto(arith):
    assert arith.prime_powers_upto(10) == [2, 3, 4, 5, 7, 8, 9]
    assert len(arith.prime_powers_upto(30)) == 16
    assert arith.prime_powers_upto(1) == []
