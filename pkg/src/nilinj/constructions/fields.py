"""Prime-power finite fields with integer-coded elements.

An element of GF(p^n) is coded as ``c0 + c1*p + ... + c_{n-1}*p^(n-1)``
where ``c0 + c1 x + ...`` is its polynomial representative modulo the
field's defining polynomial.  The defining polynomial is the least primitive
monic polynomial of degree ``n`` in that same coding.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import DomainError, ResourceLimitError
from ..numbers import is_prime, prime_factors

MAX_FIELD_ORDER = 2**16


class GaloisField:
    def __init__(self, p: int, n: int):
        if not is_prime(p) or n < 1:
            raise DomainError(f"GF({p}^{n}) is not a field order")
        if p**n > MAX_FIELD_ORDER:
            raise ResourceLimitError(f"field order {p}^{n} exceeds {MAX_FIELD_ORDER}")
        self.p, self.n, self.q = p, n, p**n
        self.digits = np.array(
            [[(a // p**i) % p for i in range(n)] for a in range(self.q)], dtype=np.int64
        ).reshape(self.q, n)
        self._weights = p ** np.arange(n, dtype=np.int64)
        for low in range(self.q):
            exp = self._powers_of_x(low)
            if exp is not None:
                self.modulus = tuple(int(c) for c in self.digits[low]) + (1,)
                break
        else:  # pragma: no cover - primitive polynomials always exist
            raise AssertionError("no primitive polynomial found")
        self.exp = np.array(exp, dtype=np.int64)
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.q - 1)
        self.generator = int(self.exp[1]) if self.q > 2 else 1

    def _powers_of_x(self, low: int):
        """Successive powers of ``x`` modulo ``x^n + low``; None unless primitive."""
        p, n, q = self.p, self.n, self.q
        f = [int(c) for c in self.digits[low]]
        if f[0] == 0:
            return None
        cur = [1] + [0] * (n - 1)
        out = []
        seen_one = False
        for k in range(q - 1):
            val = sum(c * p**i for i, c in enumerate(cur))
            if k > 0 and val == 1:
                seen_one = True
                break
            out.append(val)
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * fi) % p for c, fi in zip(cur, f)]
        if seen_one or sum(c * p**i for i, c in enumerate(cur)) != 1:
            return None
        return out

    # -- arithmetic on integer codes (vectorized over numpy arrays) --------

    def _encode(self, digits):
        return digits @ self._weights

    def add(self, a, b):
        return self._encode((self.digits[a] + self.digits[b]) % self.p)

    def neg(self, a):
        return self._encode((-self.digits[a]) % self.p)

    def sub(self, a, b):
        return self._encode((self.digits[a] - self.digits[b]) % self.p)

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        zero = (a == 0) | (b == 0)
        res = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        res = np.where(zero, 0, res)
        return int(res) if res.ndim == 0 else res

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        res = self.exp[(-self.log[a]) % (self.q - 1)]
        return int(res) if res.ndim == 0 else res

    def pow(self, a, k: int):
        a = np.asarray(a)
        res = np.where(a == 0, 0 if k > 0 else 1, self.exp[(self.log[a] * k) % (self.q - 1)])
        return int(res) if res.ndim == 0 else res

    def frobenius(self, a, times: int = 1):
        """``a -> a^(p^times)``."""
        return self.pow(a, self.p**times)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        k = int(self.log[a])
        m = self.q - 1
        return m // np.gcd(k, m)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def elements(self):
        return [FieldElement(self, v) for v in range(self.q)]

    def is_primitive_modulus(self) -> bool:
        """Self-test: ``x`` has multiplicative order ``q - 1``."""
        m = self.q - 1
        if m == 1:
            return True
        x = int(self.exp[1])
        return all(self.pow(x, m // r) != 1 for r in prime_factors(m)) and self.pow(x, m) == 1

    def __repr__(self):
        return f"GF({self.p}^{self.n})"


class FieldElement:
    """Convenience value type over a :class:`GaloisField`."""

    __slots__ = ("field", "value")

    def __init__(self, field: GaloisField, value: int):
        if not 0 <= int(value) < field.q:
            raise DomainError(f"{value} is not an element code of {field}")
        self.field = field
        self.value = int(value)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits[self.value])

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise DomainError("elements of different fields")
            return other.value
        return int(other) % self.field.p

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldElement(self.field, self.field.inv(self._coerce(other)))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __repr__(self):
        return f"{self.field}({self.value})"


@lru_cache(maxsize=None)
def gf(p: int, n: int = 1) -> GaloisField:
    """The field of order ``p^n`` (cached; fields are immutable)."""
    return GaloisField(p, n)
