"""Concrete groups: named families, affine semilinear groups and JRV groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, ResourceLimitError
from ..groups import (
    FiniteGroup,
    Permutation,
    Subgroup,
    centralizer,
    generate,
    group_from_generators,
    join,
    normalizer,
)
from ..numbers import is_prime, prime_factors
from .fields import gf
from .zsigmondy import zsigmondy_prime

MAX_AGAMMAL1_Q = 512


def _prime_power(q: int) -> tuple[int, int]:
    ps = prime_factors(q)
    if len(ps) != 1:
        raise DomainError(f"{q} is not a prime power")
    p, n = ps[0], 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# ---------------------------------------------------------------------------
# affine semilinear group


def semilinear_map(q: int, frob_power: int, a: int, b: int) -> Permutation:
    """``x -> a * tau(x) + b`` on GF(q) with ``tau = x -> x^(p^frob_power)``."""
    p, n = _prime_power(q)
    F = gf(p, n)
    xs = np.arange(q)
    return Permutation(F.add(F.mul(a, F.frobenius(xs, frob_power)), b))


def agammal1(q: int) -> FiniteGroup:
    """AGammaL_1(q) acting on the field elements, with subgroups J, M, V labelled."""
    if q > MAX_AGAMMAL1_Q:
        raise ResourceLimitError(f"q = {q} exceeds {MAX_AGAMMAL1_Q}")
    p, n = _prime_power(q)
    F = gf(p, n)
    translations = [semilinear_map(q, 0, 1, p**i) for i in range(n)]
    scaling = semilinear_map(q, 0, F.generator, 0)
    frob = semilinear_map(q, 1, 1, 0)
    G = group_from_generators(q, translations + [scaling, frob], name=f"AGammaL1({q})")
    G.labels["J"] = generate(G, [G.index_of(frob)])
    G.labels["M"] = generate(G, [G.index_of(scaling)])
    G.labels["V"] = generate(G, [G.index_of(t) for t in translations])
    G.field = F
    return G


@dataclass(frozen=True)
class JRV:
    group: FiniteGroup
    J: Subgroup
    R: Subgroup
    V: Subgroup
    r: int


def jrv_group(p: int, a: int) -> JRV:
    """The group ``JRV`` inside AGammaL_1(p^n), ``n = p^a``, with ``|R| = r`` a
    Zsigmondy prime for ``(p, n)``."""
    if not is_prime(p) or a < 1:
        raise DomainError("need a prime p and a >= 1")
    n = p**a
    q = p**n
    if q > MAX_AGAMMAL1_Q:
        raise ResourceLimitError(f"q = {q} exceeds {MAX_AGAMMAL1_Q}")
    r = zsigmondy_prime(p, n)
    if r is None:
        raise DomainError(f"no Zsigmondy prime for ({p}, {n})")
    F = gf(p, n)
    rho = F.pow(F.generator, (q - 1) // r)
    translations = [semilinear_map(q, 0, 1, p**i) for i in range(n)]
    frob = semilinear_map(q, 1, 1, 0)
    scale = semilinear_map(q, 0, rho, 0)
    G = group_from_generators(q, [frob, scale] + translations, name=f"JRV({p},{a})")
    J = generate(G, [G.index_of(frob)])
    R = generate(G, [G.index_of(scale)])
    V = generate(G, [G.index_of(t) for t in translations])
    if G.order != p ** (a + n) * r:
        raise AssertionError(f"|JRV| = {G.order}, expected {p ** (a + n) * r}")
    if normalizer(G, R) != join(J, R) or centralizer(G, R) != R:
        raise AssertionError("N_G(R) = JR and C_G(R) = R fail")
    G.labels.update(J=J, R=R, V=V)
    return JRV(G, J, R, V, r)


# ---------------------------------------------------------------------------
# standard families


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("n >= 1")
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles(n, [0, 1]), Permutation.from_cycles(n, list(range(n)))]
    return group_from_generators(n, gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [Permutation.from_cycles(n, [0, 1, k]) for k in range(2, n)]
    return group_from_generators(max(n, 1), gens, name=f"A{n}")


def cyclic(n: int) -> FiniteGroup:
    gens = [Permutation.from_cycles(n, list(range(n)))] if n > 1 else []
    return group_from_generators(n, gens, name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` acting on an ``n``-gon (``n >= 3``);
    ``n = 2`` gives the Klein four-group on 4 points."""
    if n == 2:
        return group_from_generators(4, [Permutation.from_cycles(4, [0, 1], [2, 3]),
                                          Permutation.from_cycles(4, [0, 2], [1, 3])], name="D4")
    if n < 3:
        raise DomainError("dihedral(n) needs n >= 2")
    rot = Permutation.from_cycles(n, list(range(n)))
    refl = Permutation([(-i) % n for i in range(n)])
    return group_from_generators(n, [rot, refl], name=f"D{2 * n}")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """``C_p^k`` as translations of ``F_p^k`` (a regular action on ``p^k`` points)."""
    if not is_prime(p):
        raise DomainError("p must be prime")
    size = p**k
    pts = np.arange(size)
    gens = []
    for i in range(k):
        digit = (pts // p**i) % p
        gens.append(Permutation(pts + ((digit + 1) % p - digit) * p**i))
    return group_from_generators(size, gens, name=f"C{p}^{k}")


def quaternion() -> FiniteGroup:
    # regular representation of Q8 on {1, i, j, k, -1, -i, -j, -k}
    i = Permutation([1, 4, 3, 6, 5, 0, 7, 2])
    j = Permutation([2, 7, 4, 1, 6, 3, 0, 5])
    return group_from_generators(8, [i, j], name="Q8")


def _vectors(n: int, p: int) -> np.ndarray:
    pts = np.arange(p**n)
    return np.stack([(pts // p**i) % p for i in range(n)], axis=1)


def _linear_generators(n: int, p: int) -> list[np.ndarray]:
    """Elementary transvections and one diagonal matrix: generators of GL_n(p)."""
    mats = []
    for i, j in itertools.permutations(range(n), 2):
        m = np.eye(n, dtype=np.int64)
        m[i, j] = 1
        mats.append(m)
    if p > 2:
        d = np.eye(n, dtype=np.int64)
        d[0, 0] = gf(p, 1).generator
        mats.append(d)
    return mats


def _matrix_perm(m: np.ndarray, p: int) -> Permutation:
    n = m.shape[0]
    vecs = _vectors(n, p)
    imgs = (vecs @ m.T) % p
    return Permutation(imgs @ (p ** np.arange(n)))


def agl(n: int, p: int) -> FiniteGroup:
    """AGL_n(p) acting on ``F_p^n``."""
    if not is_prime(p):
        raise DomainError("p must be prime")
    size = p**n
    vecs = _vectors(n, p)
    trans = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        trans.append(Permutation(((vecs + e) % p) @ (p ** np.arange(n))))
    gens = trans + [_matrix_perm(m, p) for m in _linear_generators(n, p)]
    return group_from_generators(size, gens, name=f"AGL{n}({p})")


def gl(n: int, p: int) -> FiniteGroup:
    """GL_n(p) acting on ``F_p^n`` (the zero vector is fixed)."""
    gens = [_matrix_perm(m, p) for m in _linear_generators(n, p)]
    if n == 1 and p == 2:
        gens = []
    return group_from_generators(p**n, gens, name=f"GL{n}({p})")


def frobenius21() -> FiniteGroup:
    """``C7 x| C3``: the maps ``x -> 2^i x + b`` on ``Z/7``."""
    shift = Permutation([(x + 1) % 7 for x in range(7)])
    mult = Permutation([(2 * x) % 7 for x in range(7)])
    return group_from_generators(7, [shift, mult], name="F21")


def standard(name: str, *params: int) -> FiniteGroup:
    """Build a named group; e.g. ``standard("symmetric", 4)``."""
    builders = {
        "symmetric": symmetric,
        "alternating": alternating,
        "cyclic": cyclic,
        "dihedral": dihedral,
        "elementary_abelian": elementary_abelian,
        "quaternion": quaternion,
        "frobenius21": frobenius21,
        "agl": agl,
        "gl": gl,
        "agammal1": agammal1,
        "jrv": lambda p, a: jrv_group(p, a).group,
    }
    if name not in builders:
        raise DomainError(f"unknown construction {name!r}")
    return builders[name](*params)


# ---------------------------------------------------------------------------
# the order-54 group with a core-free Carter subgroup


def _gl2_3_order_dividing_6() -> list[np.ndarray]:
    mats = []
    for entries in itertools.product(range(3), repeat=4):
        m = np.array(entries, dtype=np.int64).reshape(2, 2)
        if (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]) % 3 == 0:
            continue
        power = np.eye(2, dtype=np.int64)
        for _ in range(6):
            power = (power @ m) % 3
        if np.array_equal(power, np.eye(2, dtype=np.int64)):
            mats.append(m)
    return mats


def _group_signature(G: FiniteGroup) -> tuple:
    from ..reports import abelian_invariants

    orders = np.bincount(G.element_orders)
    return G.order, tuple(abelian_invariants(G)), tuple(int(c) for c in orders)


def small_54_5() -> FiniteGroup:
    """The group ``(C3 x C3) x| C6`` with a core-free cyclic Carter subgroup of
    order 6, found by searching all actions of ``C6`` on ``C3 x C3``."""
    from ..carter import carter_subgroups
    from ..groups import normal_core, semidirect_product

    N = elementary_abelian(3, 2)
    C = cyclic(6)
    # N acts regularly on 9 points, so an element is determined by where it sends 0
    vec_of = np.array([[N.perms[g][0] % 3, N.perms[g][0] // 3] for g in range(9)])
    id_of = {(int(a), int(b)): g for g, (a, b) in enumerate(vec_of)}
    gen = C.generators[0]
    hits = []
    for m in _gl2_3_order_dividing_6():
        images = np.array([id_of[tuple(int(v) for v in (m @ vec_of[g]) % 3)] for g in range(9)])
        G = semidirect_product(N, C, {gen: images}, name="SmallGroup(54,5)")
        prof = carter_subgroups(G)
        K = prof.carter
        if K.order == 6 and K.is_abelian() and G.element_orders[K.ids].max() == 6 \
                and normal_core(G, K).order == 1:
            hits.append(G)
    if not hits:
        raise AssertionError("no action of C6 gives a core-free cyclic Carter subgroup")
    signatures = {_group_signature(G) for G in hits}
    if len(signatures) != 1:
        raise AssertionError(f"candidate groups differ: {signatures}")
    return hits[0]


def nilpotent_theta(G: FiniteGroup | Subgroup) -> int:
    """Möbius sum from 1 over the poset of all nilpotent subgroups."""
    from ..injectors import nilpotent_subgroup_poset

    return nilpotent_subgroup_poset(G).theta(0)
