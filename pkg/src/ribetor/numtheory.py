"""Small integer helpers: primality, trial-division factoring, orders."""

from functools import lru_cache
from math import gcd

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n):
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorint(n):
    """Factor ``n`` by trial division; returns a tuple of (prime, exponent).

    The loop stops as soon as the remaining cofactor is prime, so only
    products of two large primes are slow.
    """
    if n < 1:
        raise ValueError("factorint needs a positive integer")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    step = 2
    cofactor_prime = is_prime(n)
    while n > 1 and not cofactor_prime and f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
            cofactor_prime = is_prime(n)
        f += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(sorted(out))


def prime_divisors(n):
    return [p for p, _ in factorint(n)]


def divisors(n):
    divs = [1]
    for p, e in factorint(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def order_from_multiple(is_identity, power, multiple):
    """Exact order of an element, given a multiple of that order.

    ``power(k)`` must return the element raised to ``k`` and
    ``is_identity`` test the result.  Descends through the prime factors
    of ``multiple``.
    """
    m = multiple
    for p, e in factorint(multiple):
        for _ in range(e):
            if is_identity(power(m // p)):
                m //= p
            else:
                break
    return m


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def ladic_valuation(n, p):
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v
