"""Primitive prime divisors of ``p^n - 1``.

Every primitive prime divisor ``r`` of ``p^n - 1`` divides the cyclotomic
value ``Phi_n(p)`` and satisfies ``r = 1 (mod n)``; the only other prime that
can divide ``Phi_n(p)`` is the largest prime factor of ``n``.  So we strip
that prime and trial-divide the remainder along the progression ``kn + 1``.
"""

from __future__ import annotations

from ..errors import DomainError
from ..numbers import is_prime, prime_factors


def _mobius(n: int) -> int:
    ps = prime_factors(n)
    m = n
    for p in ps:
        m //= p
        if m % p == 0:
            return 0
    return -1 if len(ps) % 2 else 1


def cyclotomic_value(n: int, x: int) -> int:
    """``Phi_n(x) = prod_{d | n} (x^d - 1)^mu(n/d)`` as an exact integer."""
    num, den = 1, 1
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _mobius(n // d)
        if mu == 1:
            num *= x**d - 1
        elif mu == -1:
            den *= x**d - 1
    return num // den


def multiplicative_order(a: int, r: int) -> int:
    k, acc = 1, a % r
    while acc != 1:
        acc = acc * a % r
        k += 1
    return k


def zsigmondy_prime(p: int, n: int) -> int | None:
    """Smallest prime dividing ``p^n - 1`` but no ``p^j - 1`` with ``j < n``."""
    if not is_prime(p) or n < 1:
        raise DomainError("need a prime p and n >= 1")
    if p**n > 2**63:
        raise DomainError("p^n exceeds 2^63")
    if n == 1:
        return prime_factors(p - 1)[0] if p > 2 else None
    value = cyclotomic_value(n, p)
    for ell in prime_factors(n):
        while value % ell == 0 and multiplicative_order(p, ell) != n:
            value //= ell
    if value == 1:
        return None
    # the remaining prime factors are primitive: odd and = 1 (mod n)
    step = n if n % 2 == 0 else 2 * n
    r = step + 1
    while r * r <= value:
        if value % r == 0 and is_prime(r):
            return r
        r += step
    return value
