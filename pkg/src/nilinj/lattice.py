"""Subgroup lattices and the structural subgroups of a finite group.

Lattices are enumerated up to conjugacy and then expanded class by class.
Soluble groups use cyclic extension (every nontrivial subgroup of a soluble
group has a normal subgroup of prime index); other groups fall back to
closing class representatives under joins with prime-power cyclic
subgroups.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator

import numpy as np

from . import limits
from .errors import DomainError, ResourceLimitError
from .groups import (
    FiniteGroup,
    Subgroup,
    ambient,
    centralizer,
    conjugacy_class,
    derived_subgroup,
    generate,
    ids_to_bits,
    join,
    normal_closure,
    normal_core,
    normalizer,
)
from .numbers import is_p_power, p_part, pi_part, prime_factors

__all__ = [
    "SubgroupLattice",
    "all_subgroups",
    "sylow_subgroup",
    "sylow_subgroups",
    "count_sylow_containing",
    "hall_subgroups",
    "count_hall_containing",
    "pcore",
    "pi_core",
    "fitting_subgroup",
    "is_nilpotent",
    "is_soluble",
    "is_subnormal",
    "is_n_constrained",
    "has_sylow_tower",
    "generated_by_elements",
    "cyclic_subgroup",
]


class SubgroupLattice:
    """All subgroups of a group, deduplicated and sorted by (order, bitset).

    ``classes[k]`` lists the indices of one conjugacy class and
    ``class_of[i]`` is the class index of subgroup ``i``.
    """

    def __init__(self, group: Subgroup, subgroups: list[Subgroup], class_of: list[int]):
        self.group = group
        perm = sorted(range(len(subgroups)), key=lambda i: (subgroups[i].order, subgroups[i].bits))
        self.subgroups = [subgroups[i] for i in perm]
        self.class_of = [class_of[i] for i in perm]
        self.index = {S.bits: i for i, S in enumerate(self.subgroups)}
        n_classes = max(self.class_of) + 1 if self.class_of else 0
        classes: list[list[int]] = [[] for _ in range(n_classes)]
        for i, c in enumerate(self.class_of):
            classes[c].append(i)
        # renumber classes by first member so the numbering is deterministic
        classes.sort(key=lambda members: members[0])
        self.classes = classes
        self.class_of = [0] * len(self.subgroups)
        for k, members in enumerate(classes):
            for i in members:
                self.class_of[i] = k
        self._flags: dict[str, list[bool]] = {}

    @property
    def parent(self) -> FiniteGroup:
        return self.group.parent

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self) -> Iterator[Subgroup]:
        return iter(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def find(self, S: Subgroup) -> int:
        try:
            return self.index[S.bits]
        except KeyError:
            raise DomainError("not a subgroup in this lattice") from None

    def canonical(self, S: Subgroup) -> Subgroup:
        """The lattice's own object for ``S`` (carries cached generators)."""
        return self.subgroups[self.find(S)]

    def contains(self, i: int, j: int) -> bool:
        """Whether subgroup ``i`` is contained in subgroup ``j``."""
        a, b = self.subgroups[i].bits, self.subgroups[j].bits
        return a & b == a

    def is_normal(self, i: int) -> bool:
        return len(self.classes[self.class_of[i]]) == 1

    def normal_subgroups(self) -> list[Subgroup]:
        return [S for i, S in enumerate(self.subgroups) if self.is_normal(i)]

    def filter(self, pred: Callable[[Subgroup], bool]) -> list[int]:
        return [i for i, S in enumerate(self.subgroups) if pred(S)]

    def within(self, Y: Subgroup) -> list[int]:
        """Indices of the subgroups contained in ``Y``."""
        yb = Y.bits
        return [i for i, S in enumerate(self.subgroups) if S.bits & yb == S.bits]

    def above(self, X: Subgroup) -> list[int]:
        xb = X.bits
        return [i for i, S in enumerate(self.subgroups) if S.bits & xb == xb]

    def flags(self, name: str) -> list[bool]:
        """Per-subgroup predicate values, evaluated once per conjugacy class."""
        if name not in self._flags:
            pred = {"nilpotent": is_nilpotent, "subnormal": lambda S: is_subnormal(self.group, S)}[name]
            by_class = [pred(self.subgroups[members[0]]) for members in self.classes]
            self._flags[name] = [by_class[c] for c in self.class_of]
        return self._flags[name]

    def containment_matrix(self, indices: list[int] | None = None) -> np.ndarray:
        """Dense ``leq[a, b] = (S_a <= S_b)`` over the chosen subgroups."""
        idx = list(range(len(self))) if indices is None else list(indices)
        subs = [self.subgroups[i] for i in idx]
        return containment_matrix(subs)


def containment_matrix(subs: list[Subgroup]) -> np.ndarray:
    if not subs:
        return np.zeros((0, 0), dtype=bool)
    n = subs[0].parent.order
    M = np.zeros((len(subs), n), dtype=np.float32)
    for k, S in enumerate(subs):
        M[k, S.ids] = 1.0
    meet = M @ M.T
    orders = np.array([S.order for S in subs], dtype=np.float32)
    return meet == orders[:, None]


# ---------------------------------------------------------------------------
# elementary subgroups


def cyclic_subgroup(G: FiniteGroup | Subgroup, g: int) -> Subgroup:
    P = G if isinstance(G, FiniteGroup) else G.parent
    return generate(P, [int(g)])


def generated_by_elements(G: FiniteGroup | Subgroup, elements: Iterable[int]) -> Subgroup:
    """Subgroup generated by an arbitrary (possibly large) set of elements."""
    P = G if isinstance(G, FiniteGroup) else G.parent
    current = P.trivial
    for x in elements:
        x = int(x)
        if x not in current:
            current = generate(P, [x], start=current)
    return current


def _p_element_mask(P: FiniteGroup, p: int) -> np.ndarray:
    key = ("pel", p)
    if key not in P._cache:
        orders = P.element_orders.copy()
        while True:
            div = orders % p == 0
            if not div.any():
                break
            orders[div] //= p
        P._cache[key] = orders == 1
    return P._cache[key]


def _pi_element_mask(P: FiniteGroup, pi: Iterable[int]) -> np.ndarray:
    orders = P.element_orders.copy()
    for p in set(pi):
        while True:
            div = orders % p == 0
            if not div.any():
                break
            orders[div] //= p
    return orders == 1


# ---------------------------------------------------------------------------
# lattice enumeration


def all_subgroups(G: FiniteGroup | Subgroup, max_order: int | None = None,
                  max_subgroups: int | None = None) -> SubgroupLattice:
    """Every subgroup of ``G`` exactly once, with conjugacy-class structure."""
    Y = ambient(G)
    lim = limits.current()
    max_order = max_order or lim.max_lattice_order
    max_subgroups = max_subgroups or lim.max_subgroups
    if Y.order > max_order:
        raise ResourceLimitError(f"order {Y.order} exceeds lattice cap {max_order}")
    P = Y.parent
    key = ("lattice", Y.bits)
    if key in P._cache:
        return P._cache[key]
    if is_soluble(Y):
        subs, class_of = _cyclic_extension(Y, max_subgroups)
    else:
        subs, class_of = _join_closure(Y, max_subgroups)
    lat = SubgroupLattice(Y, subs, class_of)
    P._cache[key] = lat
    return lat


class _Registry:
    def __init__(self, Y: Subgroup, cap: int):
        self.Y = Y
        self.P = Y.parent
        self.cap = cap
        self.subs: list[Subgroup] = []
        self.class_of: list[int] = []
        self.seen: dict[int, int] = {}
        self.reps: list[Subgroup] = []

    def add_class(self, S: Subgroup) -> bool:
        if S.bits in self.seen:
            return False
        k = len(self.reps)
        self.reps.append(S)
        P, n = self.P, self.P.order
        gens = self.Y.gens
        frontier = [S]
        self._record(S, k)
        while frontier:
            nxt = []
            for T in frontier:
                for g in gens:
                    ids = P.conj(T.ids, g)
                    bits = ids_to_bits(ids, n)
                    if bits not in self.seen:
                        U = Subgroup(P, bits, [P.conj(s, g) for s in T.gens])
                        U._ids = np.sort(ids)
                        self._record(U, k)
                        nxt.append(U)
            frontier = nxt
        return True

    def _record(self, S: Subgroup, k: int):
        self.seen[S.bits] = len(self.subs)
        self.subs.append(S)
        self.class_of.append(k)
        if len(self.subs) > self.cap:
            raise ResourceLimitError(f"more than {self.cap} subgroups")


def _prime_power_elements(Y: Subgroup):
    P = Y.parent
    ids = Y.ids
    orders = P.element_orders[ids]
    out = []
    for p in prime_factors(Y.order):
        sel = ids[(orders > 1) & _p_element_mask(P, p)[ids]]
        power = sel.copy()
        for _ in range(p - 1):
            power = P.mul(power, sel)
        out.extend((int(x), p, int(xp)) for x, xp in zip(sel, power))
    out.sort()
    return out


def _cyclic_extension(Y: Subgroup, cap: int):
    P = Y.parent
    reg = _Registry(Y, cap)
    reg.add_class(P.trivial)
    pp = _prime_power_elements(Y)
    pp_ids = np.array([x for x, _, _ in pp], dtype=np.int64)
    i = 0
    while i < len(reg.reps):
        K = reg.reps[i]
        i += 1
        nk = normalizer(Y, K)
        nk_mask = nk.mask
        kmask = K.mask
        covered = 0
        for x, p, xp in (pp[j] for j in np.flatnonzero(nk_mask[pp_ids] & ~kmask[pp_ids])):
            if not kmask[xp] or (covered >> x) & 1:
                continue
            # K<x> with x normalizing K and x^p in K: the cosets K x^i, i < p
            powers = [0, x]
            for _ in range(p - 2):
                powers.append(P.mul(powers[-1], x))
            ids = P.mul(K.ids[None, :], np.asarray(powers)[:, None]).ravel()
            bits = ids_to_bits(ids, P.order)
            covered |= bits
            if bits not in reg.seen:
                J = Subgroup(P, bits, K.gens + [x])
                J._ids = np.sort(ids)
                reg.add_class(J)
    return reg.subs, reg.class_of


def _join_closure(Y: Subgroup, cap: int):
    P = Y.parent
    reg = _Registry(Y, cap)
    reg.add_class(P.trivial)
    cyclics = {}
    for x, _, _ in _prime_power_elements(Y):
        Z = generate(P, [x])
        cyclics.setdefault(Z.bits, Z)
    cyclics = list(cyclics.values())
    i = 0
    while i < len(reg.reps):
        K = reg.reps[i]
        i += 1
        for Z in cyclics:
            if Z.bits & K.bits == Z.bits:
                continue
            J = generate(P, Z.gens, start=K)
            if J.bits not in reg.seen:
                reg.add_class(J)
    return reg.subs, reg.class_of


# ---------------------------------------------------------------------------
# Sylow and Hall subgroups


def sylow_subgroup(G: FiniteGroup | Subgroup, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup, grown from a ``p``-element of maximal order by
    adjoining normalizing ``p``-elements."""
    Y = ambient(G)
    P = Y.parent
    key = ("sylow", Y.bits, p)
    if key in P._cache:
        return P._cache[key]
    target = p_part(Y.order, p)
    if target == 1:
        return P.trivial
    ids = Y.ids
    pel = ids[_p_element_mask(P, p)[ids]]
    orders = P.element_orders[pel]
    x = int(pel[np.flatnonzero(orders == orders.max())[0]])
    S = generate(P, [x])
    while S.order < target:
        nmask = normalizer(Y, S).mask
        smask = S.mask
        cand = pel[nmask[pel] & ~smask[pel]]
        S = generate(P, [int(cand[0])], start=S)
    P._cache[key] = S
    return S


def sylow_subgroups(G: FiniteGroup | Subgroup, p: int) -> list[Subgroup]:
    Y = ambient(G)
    return conjugacy_class(sylow_subgroup(Y, p), Y)


def _require_within(Y: Subgroup, X: Subgroup):
    Y._check_parent(X)
    if not X <= Y:
        raise DomainError("X is not a subgroup of G")


def count_sylow_containing(G: FiniteGroup | Subgroup, X: Subgroup, p: int) -> int:
    """Number of Sylow ``p``-subgroups of ``G`` containing the ``p``-subgroup ``X``."""
    Y = ambient(G)
    _require_within(Y, X)
    if not is_p_power(X.order, p):
        raise DomainError(f"X is not a {p}-group")
    xb = X.bits
    return sum(1 for S in sylow_subgroups(Y, p) if S.bits & xb == xb)


def hall_subgroups(G: FiniteGroup | Subgroup, pi: Iterable[int],
                   lattice: SubgroupLattice | None = None) -> list[Subgroup]:
    """All Hall ``pi``-subgroups of a soluble group.

    One Hall subgroup is assembled from Sylow subgroups and its conjugacy
    class returned.  When a lattice is supplied the subgroups of the right
    order are also filtered from it and the two answers must agree.
    """
    Y = ambient(G)
    if not is_soluble(Y):
        raise DomainError("Hall subgroups are only computed for soluble groups")
    pi = sorted({p for p in pi if Y.order % p == 0})
    P = Y.parent
    key = ("hall", Y.bits, tuple(pi))
    if key not in P._cache:
        H = P.trivial
        for p in pi:
            if H.order == 1:
                H = sylow_subgroup(Y, p)
                continue
            want = H.order * p_part(Y.order, p)
            for Q in sylow_subgroups(Y, p):
                J = join(H, Q)
                if J.order == want:
                    H = J
                    break
            else:  # pragma: no cover - impossible in soluble groups
                raise DomainError("no Hall subgroup found")
        P._cache[key] = sorted(conjugacy_class(H, Y), key=lambda S: S.bits)
    result = P._cache[key]
    if lattice is not None:
        target = pi_part(Y.order, pi)
        filtered = sorted((S for S in lattice if S.order == target), key=lambda S: S.bits)
        if [S.bits for S in filtered] != [S.bits for S in result]:
            raise AssertionError("Hall subgroup routes disagree")
    return result


def count_hall_containing(G: FiniteGroup | Subgroup, X: Subgroup, pi: Iterable[int]) -> int:
    Y = ambient(G)
    _require_within(Y, X)
    pi = set(pi)
    if pi_part(X.order, pi) != X.order:
        raise DomainError("X is not a pi-group")
    xb = X.bits
    return sum(1 for H in hall_subgroups(Y, pi) if H.bits & xb == xb)


# ---------------------------------------------------------------------------
# Fitting subgroup and predicates


def pcore(G: FiniteGroup | Subgroup, p: int) -> Subgroup:
    """``O_p(G)``: the intersection of all Sylow ``p``-subgroups."""
    Y = ambient(G)
    return normal_core(Y, sylow_subgroup(Y, p))


def pi_core(G: FiniteGroup | Subgroup, pi: Iterable[int]) -> Subgroup:
    """``O_pi(G)`` of a soluble group (core of a Hall ``pi``-subgroup)."""
    Y = ambient(G)
    H = hall_subgroups(Y, pi)[0]
    return normal_core(Y, H)


def fitting_subgroup(G: FiniteGroup | Subgroup) -> Subgroup:
    """Largest normal nilpotent subgroup, the product of the ``O_p(G)``."""
    Y = ambient(G)
    P = Y.parent
    key = ("fitting", Y.bits)
    if key not in P._cache:
        F = P.trivial
        for p in prime_factors(Y.order):
            F = join(F, pcore(Y, p))
        P._cache[key] = F
    return P._cache[key]


def is_nilpotent(S: FiniteGroup | Subgroup) -> bool:
    """Every Sylow subgroup is normal, i.e. each prime's elements number exactly the p-part."""
    S = ambient(S)
    P = S.parent
    ids = S.ids
    for p in prime_factors(S.order):
        if int(_p_element_mask(P, p)[ids].sum()) != p_part(S.order, p):
            return False
    return True


def is_soluble(G: FiniteGroup | Subgroup) -> bool:
    Y = ambient(G)
    P = Y.parent
    key = ("soluble", Y.bits)
    if key not in P._cache:
        D = Y
        while D.order > 1:
            D2 = derived_subgroup(D)
            if D2.order == D.order:
                break
            D = D2
        P._cache[key] = D.order == 1
    return P._cache[key]


def is_subnormal(G: FiniteGroup | Subgroup, S: Subgroup) -> bool:
    """Iterated normal closures descend to ``S`` exactly when ``S`` is subnormal."""
    Y = ambient(G)
    _require_within(Y, S)
    K = Y
    while True:
        if K.order == S.order:
            return True
        K2 = normal_closure(K, S)
        if K2.order == K.order:
            return False
        K = K2


def is_n_constrained(G: FiniteGroup | Subgroup) -> bool:
    Y = ambient(G)
    F = fitting_subgroup(Y)
    return centralizer(Y, F) <= F


def has_sylow_tower(G: FiniteGroup | Subgroup) -> bool:
    """Some ordering of the primes gives a chain of normal Hall subgroups."""
    Y = ambient(G)
    P = Y.parent
    primes = prime_factors(Y.order)
    ids = Y.ids
    normal_hall: dict[frozenset, bool] = {}

    def has_normal_hall(pi: frozenset) -> bool:
        if pi not in normal_hall:
            elems = ids[_pi_element_mask(P, pi)[ids]]
            K = generated_by_elements(P, elems)
            normal_hall[pi] = K.order == pi_part(Y.order, pi)
        return normal_hall[pi]

    memo: dict[frozenset, bool] = {frozenset(): True}

    def reachable(pi: frozenset) -> bool:
        if pi not in memo:
            memo[pi] = has_normal_hall(pi) and any(reachable(pi - {p}) for p in pi)
        return memo[pi]

    return reachable(frozenset(primes))
