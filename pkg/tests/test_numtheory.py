from math import prod

import pytest
from hypothesis import given, strategies as st
from sympy import factorint as sp_factorint, isprime as sp_isprime

from ribetor.numtheory import (
    divisors,
    factorint,
    is_prime,
    ladic_valuation,
    lcm,
    order_from_multiple,
    prime_divisors,
)


@given(st.integers(min_value=-10, max_value=10**12))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sp_isprime(n)


@pytest.mark.parametrize("n", [2**61 - 1, 1000000007, 561, 3215031751, 3825123056546413051])
def test_is_prime_hard_cases(n):
    assert is_prime(n) == sp_isprime(n)


@given(st.integers(min_value=1, max_value=10**10))
def test_factorint_matches_sympy(n):
    fac = factorint(n)
    assert dict(fac) == sp_factorint(n)
    assert prod(p**e for p, e in fac) == n
    assert [p for p, _ in fac] == sorted(p for p, _ in fac)


def test_small_values():
    assert factorint(1) == ()
    assert factorint(360) == ((2, 3), (3, 2), (5, 1))
    assert prime_divisors(360) == [2, 3, 5]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert lcm(4, 6, 10) == 60
    assert lcm() == 1
    assert ladic_valuation(48, 2) == 4
    assert ladic_valuation(7, 3) == 0


@given(st.integers(min_value=2, max_value=500), st.integers(min_value=1, max_value=499))
def test_order_from_multiple_modular(m, a):
    a %= m
    if a == 0 or lcm(a, m) != a * m:
        return
    # order of a in (Z/m)^* by brute force
    k, x = 1, a
    while x != 1:
        x = x * a % m
        k += 1
    phi = sum(1 for j in range(1, m + 1) if lcm(j, m) == j * m)
    got = order_from_multiple(lambda v: v == 1, lambda e: pow(a, e, m), phi)
    assert got == k
