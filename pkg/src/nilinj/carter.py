"""Carter subgroups of soluble groups and the counting results around them."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .groups import (
    FiniteGroup,
    Subgroup,
    ambient,
    centralizer,
    conjugacy_class,
    intersection,
    is_normal,
    join,
    normalizer,
)
from .injectors import _containing_counts, _fp, modulus_from_index
from .lattice import (
    _p_element_mask,
    _pi_element_mask,
    all_subgroups,
    count_sylow_containing,
    generated_by_elements,
    has_sylow_tower,
    is_nilpotent,
    is_soluble,
)
from .numbers import congruent_one, is_p_power, p_part, prime_factors
from .posets import Poset
from .reports import VerificationReport, describe


@dataclass
class CarterProfile:
    group: Subgroup
    carters: list[Subgroup]
    m_hat: int  # gcd{p - 1 : p | (G:C)}, 0 when C = G

    @property
    def carter(self) -> Subgroup:
        return self.carters[0]

    @property
    def index(self) -> int:
        return self.group.order // self.carter.order


def carter_subgroups(G: FiniteGroup | Subgroup) -> CarterProfile:
    """All nilpotent self-normalizing subgroups, filtered from the lattice."""
    Y = ambient(G)
    P = Y.parent
    key = ("carter", Y.bits)
    if key in P._cache:
        return P._cache[key]
    if not is_soluble(Y):
        raise DomainError("Carter subgroups are only computed for soluble groups")
    L = all_subgroups(Y)
    found = []
    for members in L.classes:
        rep = L[members[0]]
        if is_nilpotent(rep) and normalizer(Y, rep) == rep:
            found.append(members)
    if len(found) != 1:
        raise AssertionError(f"expected one conjugacy class of Carter subgroups, found {len(found)}")
    carters = sorted((L[i] for i in found[0]), key=lambda S: S.bits)
    if len(carters) != Y.order // carters[0].order:
        raise AssertionError("|Cart(G)| differs from (G : C)")
    profile = CarterProfile(Y, carters, modulus_from_index(Y.order // carters[0].order))
    P._cache[key] = profile
    return profile


def carter_poset(G: FiniteGroup | Subgroup) -> Poset:
    """Subgroups lying in some Carter subgroup, ordered by inclusion."""
    prof = carter_subgroups(G)
    L = all_subgroups(prof.group)
    inside = _containing_counts(list(L), prof.carters) > 0
    subs = [S for S, flag in zip(L, inside) if flag]
    return Poset.from_subgroups(subs, provenance="contained in a Carter subgroup")


def carters_containing(G: FiniteGroup | Subgroup, X: Subgroup) -> list[Subgroup]:
    xb = X.bits
    return [C for C in carter_subgroups(G).carters if C.bits & xb == xb]


def count_carter_containing(G: FiniteGroup | Subgroup, X: Subgroup) -> int:
    return len(carters_containing(G, X))


def _sylow_of_nilpotent(S: Subgroup, p: int) -> Subgroup:
    P = S.parent
    ids = S.ids
    return P.subgroup(ids[_p_element_mask(P, p)[ids]])


def _check_factorization(Y: Subgroup, N: Subgroup, C: Subgroup) -> None:
    if not is_normal(Y, N):
        raise DomainError("N is not normal")
    if intersection(N, C).order != 1 or N.order * C.order != Y.order:
        raise DomainError("G is not the semidirect product of N and C")


def lemma_semidirect_count(G: FiniteGroup | Subgroup, N: Subgroup, C: Subgroup, X: Subgroup) -> int:
    """``(C_N(X) : C_N(C))`` for ``G = N x| C`` and ``X <= C``: the number of
    conjugates of ``C`` containing ``X``."""
    Y = ambient(G)
    _check_factorization(Y, N, C)
    if not X <= C:
        raise DomainError("X is not contained in C")
    cx = intersection(centralizer(Y, X), N)
    cc = intersection(centralizer(Y, C), N)
    return cx.order // cc.order


def conjugates_containing(G: FiniteGroup | Subgroup, C: Subgroup, X: Subgroup) -> int:
    xb = X.bits
    return sum(1 for D in conjugacy_class(C, ambient(G)) if D.bits & xb == xb)


def normal_hall_complement(G: FiniteGroup | Subgroup, q: int) -> Subgroup | None:
    """The normal Hall ``q'``-subgroup, if one exists."""
    Y = ambient(G)
    P = Y.parent
    primes = [p for p in prime_factors(Y.order) if p != q]
    ids = Y.ids
    K = generated_by_elements(P, ids[_pi_element_mask(P, primes)[ids]])
    return K if K.order == Y.order // p_part(Y.order, q) else None


def _check_normal_hall(Y: Subgroup, N: Subgroup) -> int:
    """Return the prime ``q`` for which ``N`` is a normal Hall ``q'``-subgroup."""
    if not is_normal(Y, N):
        raise DomainError("N is not normal")
    index = Y.order // N.order
    qs = prime_factors(index)
    if len(qs) != 1 or N.order % qs[0] == 0:
        raise DomainError("N is not a Hall q'-subgroup for a single prime q")
    return qs[0]


def isaacs_decomposition(G: FiniteGroup | Subgroup, N: Subgroup, Q: Subgroup) -> list[Subgroup]:
    """``{QU : U in Cart(C_N(Q))}`` for a normal Hall ``q'``-subgroup ``N`` and
    a Sylow ``q``-subgroup ``Q``."""
    Y = ambient(G)
    q = _check_normal_hall(Y, N)
    if Q.order != p_part(Y.order, q) or not is_p_power(Q.order, q) or not Q <= Y:
        raise DomainError("Q is not a Sylow q-subgroup")
    return isaacs_general(Y, N, Q)


def isaacs_general(G: FiniteGroup | Subgroup, N: Subgroup, D: Subgroup) -> list[Subgroup]:
    """``{DU : U in Cart(C_N(D))}`` for a normal Hall subgroup ``N`` and a
    Carter subgroup ``D`` of a Hall complement."""
    Y = ambient(G)
    CN = intersection(centralizer(Y, D), N)
    return sorted((join(D, U) for U in carter_subgroups(CN).carters), key=lambda S: S.bits)


def thm_e_count(G: FiniteGroup | Subgroup, N: Subgroup, X: Subgroup) -> int:
    """``|Syl_q(A, X_q)| * n_C(C_N(C_q), X_q')`` with ``A = C_G(X_q')``."""
    Y = ambient(G)
    q = _check_normal_hall(Y, N)
    over = carters_containing(Y, X)
    if not over:
        return 0
    C = over[0]
    X_qp = intersection(X, N)
    X_q = _sylow_of_nilpotent(X, q)
    C_q = _sylow_of_nilpotent(C, q)
    A = centralizer(Y, X_qp)
    syl = count_sylow_containing(A, X_q, q)
    inner = count_carter_containing(intersection(centralizer(Y, C_q), N), X_qp)
    return syl * inner


def property_star_check(G: FiniteGroup | Subgroup) -> VerificationReport:
    """``n_C(G, X)`` divides ``(G : C)`` for every ``X <= C``."""
    Y = ambient(G)
    prof = carter_subgroups(Y)
    C = prof.carter
    L = all_subgroups(Y)
    inside = [L[i] for i in L.within(C)]
    counts = _containing_counts(inside, prof.carters)
    tower = has_sylow_tower(Y)
    values = {"index": prof.index, "sylow_tower": tower, "subgroups_checked": len(inside)}
    for S, c in zip(inside, counts):
        if prof.index % int(c):
            values["count"] = int(c)
            if tower:
                return VerificationReport("star", "fail", _fp(G), values, [describe(S)],
                                          note="Sylow-tower group violates (*)")
            return VerificationReport("star", "empirical", _fp(G), values, [describe(S)],
                                      note="(*) fails; group has no Sylow tower")
    return VerificationReport("star", "pass", _fp(G), values)


def question_congruence_scan(G: FiniteGroup | Subgroup) -> VerificationReport:
    """Record whether every nonzero ``n_C(G, X)`` is ``1 mod m_hat``; never fails."""
    Y = ambient(G)
    prof = carter_subgroups(Y)
    L = all_subgroups(Y)
    flags = L.flags("nilpotent")
    nil = [S for S, f in zip(L, flags) if f]
    counts = _containing_counts(nil, prof.carters)
    m = prof.m_hat
    bad = [S for S, c in zip(nil, counts) if c and not congruent_one(int(c), m)]
    values = {"m_hat": m, "nilpotent_subgroups": len(nil), "consistent": not bad,
              "counterexamples": len(bad)}
    return VerificationReport("question-scan", "empirical", _fp(G), values, [describe(S) for S in bad[:5]])
