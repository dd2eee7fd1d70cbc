"""Counting data for the soluble group ``A W`` with ``A = AGammaL_1(2^p)`` and
``W`` the permutation module over ``F_p`` on the field elements.

The group itself has order above a million and is never built.  Orders come
from closed forms; orbit and stabilizer sizes come from the action of ``A``
on subsets of the field, which is small.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .families import agammal1


@dataclass(frozen=True)
class ThmDStatistics:
    p: int
    order_G: int
    order_H: int
    class_size: int
    class_meet_H: int
    stabilizer_order: int
    centralizer_order: int
    nu: int
    divisor: int
    hyperplanes: int
    hyperplanes_containing_one: int
    hyperplane_X: tuple[int, ...]

    @property
    def divisor_divides_nu(self) -> bool:
        return self.nu % self.divisor == 0


def index_two_subgroups(p: int) -> list[frozenset[int]]:
    """Index-2 subgroups of the additive group of GF(2^p): kernels of the
    functionals ``x -> popcount(c & x) mod 2`` for ``c = 1 .. 2^p - 1``."""
    q = 2**p
    xs = np.arange(q)
    out = []
    for c in range(1, q):
        parity = np.array([bin(int(v)).count("1") % 2 for v in (xs & c)])
        out.append(frozenset(int(x) for x in xs[parity == 0]))
    return out


def thm_d_statistics(p: int) -> ThmDStatistics:
    if p not in (3, 5):
        raise DomainError("supported for p in {3, 5}")
    q = 2**p
    A = agammal1(q)
    w_order = p**q
    order_G = p * (q - 1) * q * w_order
    if A.order * w_order != order_G:
        raise AssertionError("|A| |W| disagrees with the closed form")
    # C_W(V_2): vectors constant on the orbits {x, x + 1}
    order_H = 2 * p * p ** (q // 2)

    hyper = index_two_subgroups(p)
    containing_one = [K for K in hyper if 1 in K]
    X = containing_one[0]
    x_mask = np.zeros(q, dtype=bool)
    x_mask[sorted(X)] = True

    # image of X under each a in A, encoded as a bitmask
    perms = A.perms.astype(np.int64)
    weights = np.int64(1) << np.arange(q, dtype=np.int64)
    images = np.zeros(A.order, dtype=np.int64)
    for x in sorted(X):
        images |= weights[perms[:, x]]
    x_code = int(weights[x_mask].sum())
    stabilizer = int(np.count_nonzero(images == x_code))
    orbit = {int(c) for c in np.unique(images)}

    all_ones = (1 << q) - 1
    cosets = set()
    for K in hyper:
        code = sum(1 << x for x in K)
        cosets |= {code, all_ones ^ code}
    if orbit != cosets:
        raise AssertionError("A-orbit of X is not the set of hyperplane cosets")
    if len(orbit) * stabilizer != A.order:
        raise AssertionError("orbit-stabilizer fails")

    # e_S lies in H iff S + 1 = S
    add_one = A.field.add(np.arange(q), 1)

    def shift_invariant(code: int) -> bool:
        pts = [x for x in range(q) if (code >> x) & 1]
        return all((code >> int(add_one[x])) & 1 for x in pts)

    meet = sum(1 for code in orbit if shift_invariant(code))
    centralizer_order = stabilizer * w_order
    numerator = centralizer_order * meet
    if numerator % order_H:
        raise AssertionError("nu is not an integer")
    return ThmDStatistics(
        p=p,
        order_G=order_G,
        order_H=order_H,
        class_size=len(orbit),
        class_meet_H=meet,
        stabilizer_order=stabilizer,
        centralizer_order=centralizer_order,
        nu=numerator // order_H,
        divisor=p ** (2 ** (p - 1) + 1),
        hyperplanes=len(hyper),
        hyperplanes_containing_one=len(containing_one),
        hyperplane_X=tuple(sorted(X)),
    )
