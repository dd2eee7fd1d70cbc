"""Small integer helpers: prime factors, p-parts, gcd over sets."""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    n = abs(int(n))
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def pi_part(n: int, pi: Iterable[int]) -> int:
    return math.prod(p_part(n, p) for p in set(pi))


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def gcd_all(values: Iterable[int]) -> int:
    """gcd over a set; the empty gcd is 0."""
    return reduce(math.gcd, values, 0)


def congruent_one(k: int, m: int) -> bool:
    """``k = 1 (mod m)`` with the convention that modulus 0 means equality."""
    return k == 1 if m == 0 else (k - 1) % m == 0
