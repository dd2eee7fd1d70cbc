"""Nilpotent injectors of N-constrained groups and the arithmetic around them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainError
from .groups import (
    FiniteGroup,
    Subgroup,
    ambient,
    centralizer,
    conjugacy_class,
    intersection,
    join,
)
from .lattice import (
    _p_element_mask,
    all_subgroups,
    count_sylow_containing,
    fitting_subgroup,
    hall_subgroups,
    is_n_constrained,
    is_nilpotent,
    pcore,
    pi_core,
    sylow_subgroup,
)
from .numbers import gcd_all, is_p_power, p_part, pi_part, prime_factors
from .posets import Poset
from .reports import VerificationReport, describe, fingerprint


@dataclass(frozen=True)
class PrimeData:
    p: int
    fitting_complement: Subgroup  # F_{p'}
    centralizer: Subgroup  # C_G(F_{p'})
    sylow: Subgroup  # chosen Sylow p-subgroup of the centralizer


@dataclass
class InjectorProfile:
    group: Subgroup
    fitting: Subgroup
    injector: Subgroup
    all_injectors: list[Subgroup]
    m_G: int
    primes: dict[int, PrimeData] = field(default_factory=dict)

    @property
    def index(self) -> int:
        return self.group.order // self.injector.order


def _fp(G) -> dict:
    return fingerprint(G) if isinstance(G, FiniteGroup) else {"order": str(G.order), "provenance": "subgroup"}


def _lcm0(a: int, b: int) -> int:
    """lcm where a zero argument (an empty gcd) is ignored."""
    if a == 0 or b == 0:
        return a or b
    return math.lcm(a, b)


def _divides(d: int, n: int) -> bool:
    return n % d == 0 if d else n == 0


def modulus_from_index(index: int) -> int:
    """gcd of ``p - 1`` over the primes dividing ``index`` (0 when none do)."""
    return gcd_all(p - 1 for p in prime_factors(index))


def _pi_elements_subgroup(S: Subgroup, p: int) -> Subgroup:
    """The unique Sylow ``p``-subgroup of a nilpotent subgroup."""
    P = S.parent
    ids = S.ids
    return P.subgroup(ids[_p_element_mask(P, p)[ids]])


# ---------------------------------------------------------------------------
# construction


def mann_injector(G: FiniteGroup | Subgroup) -> InjectorProfile:
    """Nilpotent injector as a product of Sylow subgroups of the centralizers
    ``C_G(F_{p'})``, chosen greedily in increasing prime order so that they
    centralize each other."""
    Y = ambient(G)
    P = Y.parent
    key = ("mann", Y.bits)
    if key in P._cache:
        return P._cache[key]
    if not is_n_constrained(Y):
        raise DomainError("group is not N-constrained")
    F = fitting_subgroup(Y)
    primes = prime_factors(F.order)
    data: dict[int, PrimeData] = {}
    chosen_centralizer = Y
    injector = P.trivial
    for p in primes:
        Fp_prime = P.trivial
        for q in primes:
            if q != p:
                Fp_prime = join(Fp_prime, pcore(Y, q))
        Cp = centralizer(Y, Fp_prime)
        room = intersection(Cp, chosen_centralizer)
        Sp = sylow_subgroup(room, p)
        if Sp.order != p_part(Cp.order, p):
            raise AssertionError(f"no Sylow {p}-subgroup of C_p centralizes the earlier choices")
        data[p] = PrimeData(p, Fp_prime, Cp, Sp)
        chosen_centralizer = intersection(chosen_centralizer, centralizer(Y, Sp))
        injector = join(injector, Sp)
    if not (F <= injector and is_nilpotent(injector)):
        raise AssertionError("Mann construction did not give a nilpotent overgroup of F")
    index = Y.order // injector.order
    m = 1 if index == 1 else modulus_from_index(index)
    profile = InjectorProfile(Y, F, injector, sorted(conjugacy_class(injector, Y), key=lambda S: S.bits), m, data)
    P._cache[key] = profile
    return profile


def modulus_m(profile: InjectorProfile) -> int:
    return profile.m_G


def injectors_definitional(G: FiniteGroup | Subgroup) -> list[Subgroup]:
    """Maximal nilpotent subgroups ``I`` with ``S & I`` maximal nilpotent in
    ``S`` for every subnormal ``S`` (brute force over the lattice)."""
    Y = ambient(G)
    if not is_n_constrained(Y):
        raise DomainError("group is not N-constrained")
    L = all_subgroups(Y)
    nil_flags = L.flags("nilpotent")
    sub_flags = L.flags("subnormal")
    nil = [i for i in range(len(L)) if nil_flags[i]]
    leq = L.containment_matrix(nil)
    strict = leq & ~np.eye(len(nil), dtype=bool)

    def maximal_within(S: Subgroup) -> set[int]:
        sb = S.bits
        inside = np.array([L[i].bits & sb == L[i].bits for i in nil])
        above = strict[:, inside][inside]  # above[a, b]: a < b, both in S
        return {L[nil[k]].bits for k, a in zip(np.flatnonzero(inside), above) if not a.any()}

    candidates = [L[i] for i in nil]
    top = maximal_within(Y)
    candidates = [I for I in candidates if I.bits in top]
    for i in range(len(L)):
        if not sub_flags[i] or L[i].order == Y.order:
            continue
        S = L[i]
        maxnil = maximal_within(S)
        candidates = [I for I in candidates if (I.bits & S.bits) in maxnil]
    return sorted(candidates, key=lambda S: S.bits)


def count_injectors_containing(G: FiniteGroup | Subgroup, H: Subgroup) -> int:
    """Number of conjugates of the injector that contain ``H``."""
    profile = mann_injector(G)
    hb = H.bits
    return sum(1 for J in profile.all_injectors if J.bits & hb == hb)


def product_formula_count(profile: InjectorProfile, H: Subgroup) -> int:
    """Product over ``p`` of the number of Sylow ``p``-subgroups of ``C_p``
    containing the Sylow ``p``-subgroup of ``H``."""
    if not is_nilpotent(H):
        raise DomainError("H must be nilpotent")
    if any(p not in profile.primes for p in prime_factors(H.order)):
        return 0
    total = 1
    for p, d in profile.primes.items():
        Hp = _pi_elements_subgroup(H, p)
        if not Hp <= d.centralizer:
            return 0
        total *= count_sylow_containing(d.centralizer, Hp, p)
        if total == 0:
            return 0
    return total


def _containing_counts(subs: list[Subgroup], containers: list[Subgroup]) -> np.ndarray:
    """``counts[i]`` = number of containers holding ``subs[i]``."""
    if not subs or not containers:
        return np.zeros(len(subs), dtype=np.int64)
    n = subs[0].parent.order
    A = np.zeros((len(subs), n), dtype=np.float32)
    for k, S in enumerate(subs):
        A[k, S.ids] = 1
    B = np.zeros((n, len(containers)), dtype=np.float32)
    for k, S in enumerate(containers):
        B[S.ids, k] = 1
    orders = np.array([S.order for S in subs], dtype=np.float32)
    return ((A @ B) == orders[:, None]).sum(axis=1).astype(np.int64)


# ---------------------------------------------------------------------------
# verification


def verify_thm_a(G: FiniteGroup | Subgroup) -> VerificationReport:
    """Every subgroup lies in 0 or ``1 (mod m_G)`` injectors."""
    profile = mann_injector(G)
    m = profile.m_G
    L = all_subgroups(profile.group)
    counts = _containing_counts(list(L), profile.all_injectors)
    values = {"m_G": m, "injector_order": profile.injector.order, "index": profile.index,
              "subgroups": len(L), "max_count": int(counts.max())}
    for i, c in enumerate(counts):
        if c and (c - 1) % m:
            values["count"] = int(c)
            return VerificationReport("thmA", "fail", _fp(G), values, [describe(L[i])])
    return VerificationReport("thmA", "pass", _fp(G), values)


def injector_poset(G: FiniteGroup | Subgroup) -> Poset:
    """Subgroups lying in some conjugate of the injector, with F marked."""
    profile = mann_injector(G)
    L = all_subgroups(profile.group)
    inside = _containing_counts(list(L), profile.all_injectors) > 0
    subs = [L[i] for i in np.flatnonzero(inside)]
    poset = Poset.from_subgroups(subs, provenance="contained in a conjugate of the nilpotent injector")
    poset.marks["fitting"] = poset.index(profile.fitting)
    return poset


def verify_thm_b(G: FiniteGroup | Subgroup) -> VerificationReport:
    """``(I : F)`` divides the theta sum at ``F`` over the injector poset."""
    profile = mann_injector(G)
    X = injector_poset(G)
    f = X.marks["fitting"]
    t = X.theta(f)
    n = profile.injector.order // profile.fitting.order
    # restricting to overgroups of F does not change theta at F
    Yp = X.restrict(X.up_set(f), provenance="overgroups of F in the injector poset")
    t_restricted = Yp.theta(0)
    chi = X.restrict(X.up_set(f, strict=True)).reduced_euler_characteristic()
    values = {"theta_at_F": t, "index_I_F": n, "theta_restricted": t_restricted,
              "reduced_euler_above_F": chi, "poset_size": X.n}
    if n == 1:
        values["boundary_n_equals_1"] = True
    witness = [describe(profile.fitting)]
    if t_restricted != t:
        return VerificationReport("thmB-restriction", "fail", _fp(G), values, witness)
    if t != -chi:
        return VerificationReport("thmB-euler", "fail", _fp(G), values, witness)
    if t % n:
        return VerificationReport("thmB", "fail", _fp(G), values, witness)
    return VerificationReport("thmB", "pass", _fp(G), values)


def _class_poset(Y: Subgroup, pred, provenance: str) -> Poset:
    L = all_subgroups(Y)
    return Poset.from_subgroups([S for S in L if pred(S)], provenance=provenance)


def p_subgroup_poset(G: FiniteGroup | Subgroup, p: int) -> Poset:
    return _class_poset(ambient(G), lambda S: is_p_power(S.order, p), f"{p}-subgroups (with 1)")


def pi_subgroup_poset(G: FiniteGroup | Subgroup, pi: Iterable[int]) -> Poset:
    pi = set(pi)
    return _class_poset(ambient(G), lambda S: pi_part(S.order, pi) == S.order, f"{sorted(pi)}-subgroups (with 1)")


def nilpotent_subgroup_poset(G: FiniteGroup | Subgroup) -> Poset:
    Y = ambient(G)
    L = all_subgroups(Y)
    flags = L.flags("nilpotent")
    return Poset.from_subgroups([S for S, f in zip(L, flags) if f], provenance="nilpotent subgroups (with 1)")


def verify_cor_first(G: FiniteGroup | Subgroup, p: int) -> VerificationReport:
    """``lcm(|G|_p, m_p)`` divides theta at 1 over the ``p``-subgroups."""
    Y = ambient(G)
    if Y.order % p:
        raise DomainError(f"{p} does not divide |G|")
    t = p_subgroup_poset(Y, p).theta(0)
    m_p = gcd_all(q - 1 for q in prime_factors(Y.order) if q != p)
    d = _lcm0(p_part(Y.order, p), m_p)
    values = {"p": p, "theta": t, "p_part": p_part(Y.order, p), "m_p": m_p, "divisor": d}
    status = "pass" if _divides(d, t) else "fail"
    return VerificationReport(f"cor1[p={p}]", status, _fp(G), values,
                              [] if status == "pass" else [describe(Y.parent.trivial)])


def verify_cor_second(G: FiniteGroup | Subgroup, pi: Iterable[int]) -> VerificationReport:
    """``lcm(|K|, m)`` divides theta at 1 over the ``pi``-subgroups, with
    ``K`` a Hall ``pi``-subgroup and ``m`` built from ``(G : N_G(K))``."""
    Y = ambient(G)
    pi = sorted(set(pi))
    K = hall_subgroups(Y, pi)[0]
    n = len(hall_subgroups(Y, pi))
    m = modulus_from_index(n)
    t = pi_subgroup_poset(Y, pi).theta(0)
    d = _lcm0(K.order, m)
    values = {"pi": pi, "theta": t, "hall_order": K.order, "hall_count": n, "m": m, "divisor": d}
    status = "pass" if _divides(d, t) else "fail"
    return VerificationReport(f"cor2[pi={','.join(map(str, pi))}]", status, _fp(G), values,
                              [] if status == "pass" else [describe(K)])


def verify_cor_third(G: FiniteGroup | Subgroup) -> VerificationReport:
    """If ``n = (I : F) > 1`` then ``lcm(m_G, n)`` divides theta at F."""
    profile = mann_injector(G)
    X = injector_poset(G)
    t = X.theta(X.marks["fitting"])
    n = profile.injector.order // profile.fitting.order
    m = profile.m_G
    values = {"theta_at_F": t, "n": n, "m_G": m}
    if n == 1:
        return VerificationReport("cor3", "boundary", _fp(G), values, note="n = 1: no assertion")
    d = math.lcm(m, n)
    values["divisor"] = d
    if t % d:
        return VerificationReport("cor3", "fail", _fp(G), values, [describe(profile.fitting)])
    return VerificationReport("cor3", "pass", _fp(G), values)


def fitting_class_sum(G: FiniteGroup | Subgroup, class_id) -> VerificationReport:
    """``|G_F|`` divides the Möbius sum over the members of a Fitting class.

    ``class_id`` is ``"nilpotent"``, ``("p-groups", p)`` or ``("pi-groups", pi)``.
    """
    Y = ambient(G)
    if class_id == "nilpotent":
        radical = fitting_subgroup(Y)
        poset = nilpotent_subgroup_poset(Y)
        label = "nilpotent"
    elif isinstance(class_id, (tuple, list)) and class_id[0] == "p-groups":
        p = int(class_id[1])
        radical = pcore(Y, p)
        poset = p_subgroup_poset(Y, p)
        label = f"{p}-groups"
    elif isinstance(class_id, (tuple, list)) and class_id[0] == "pi-groups":
        pi = sorted(set(class_id[1]))
        radical = pi_core(Y, pi)
        poset = pi_subgroup_poset(Y, pi)
        label = f"pi-groups{pi}"
    else:
        raise DomainError(f"unknown Fitting class {class_id!r}")
    t = poset.theta(0)
    values = {"class": label, "radical_order": radical.order, "theta": t}
    status = "pass" if t % radical.order == 0 else "fail"
    return VerificationReport(f"fitting-class[{label}]", status, _fp(G), values,
                              [] if status == "pass" else [describe(radical)])


def question_one_data(G: FiniteGroup | Subgroup) -> dict:
    """``|I|`` and the nilpotent theta sum at 1 (no assertion made)."""
    profile = mann_injector(G)
    t = nilpotent_subgroup_poset(G).theta(0)
    ratio = None
    if t and profile.injector.order % t == 0:
        ratio = profile.injector.order // t
    return {"injector_order": profile.injector.order, "theta_nilpotent": t, "ratio": ratio}
