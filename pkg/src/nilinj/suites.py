"""Verification suites over single groups or the generated family.

Each suite id maps to a function ``(G, spec) -> list[VerificationReport]``.
Groups are rebuilt from their specs inside worker processes, and results are
merged in input order, so output does not depend on the worker count.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

import numpy as np

from . import limits
from .carter import (
    carter_subgroups,
    carters_containing,
    conjugates_containing,
    count_carter_containing,
    isaacs_decomposition,
    isaacs_general,
    lemma_semidirect_count,
    normal_hall_complement,
    property_star_check,
    question_congruence_scan,
    thm_e_count,
)
from .constructions.thm_d import thm_d_statistics
from .errors import ResourceLimitError
from .groups import FiniteGroup, centralizer, intersection
from .injectors import (
    _fp,
    fitting_class_sum,
    injector_poset,
    injectors_definitional,
    mann_injector,
    nilpotent_subgroup_poset,
    p_subgroup_poset,
    pi_subgroup_poset,
    product_formula_count,
    question_one_data,
    verify_cor_first,
    verify_cor_second,
    verify_cor_third,
    verify_thm_a,
    verify_thm_b,
)
from .lattice import all_subgroups, hall_subgroups, is_n_constrained, is_soluble
from .numbers import prime_factors
from .posets import Poset
from .reports import VerificationReport, describe
from .spec import GroupSpec, build_group, parse_group_spec

log = logging.getLogger(__name__)

SUITE_IDS = ("thmA", "thmB", "thmC", "thmD", "thmE", "cor1", "cor2", "cor3", "fitting-class",
             "carter-lemmas", "star", "question-scan", "stretch", "all")


class SylowTowerViolation(RuntimeError):
    """Property (*) failed on a group with a Sylow tower."""


# ---------------------------------------------------------------------------
# the generated family


def _s(construct: str, **params) -> GroupSpec:
    return parse_group_spec({"construct": construct, **params})


def _d(*factors: GroupSpec) -> GroupSpec:
    return GroupSpec("direct", {"factors": list(factors)})


def generated_family(max_order: int = 400, extras: bool = True) -> list[GroupSpec]:
    """Every named construction of order at most ``max_order`` and a few small
    direct products; ``extras`` appends S3 x S4 and jrv(2,2) regardless of order."""
    S3, S4 = _s("symmetric", n=3), _s("symmetric", n=4)
    C = lambda n: _s("cyclic", n=n)  # noqa: E731
    specs = (
        [_s("symmetric", n=n) for n in range(1, 6)]
        + [_s("alternating", n=n) for n in (4, 5)]
        + [C(n) for n in (2, 3, 4, 5, 6, 8, 9, 12)]
        + [_s("dihedral", n=n) for n in range(2, 13)]
        + [_s("elementary_abelian", p=p, k=k) for p, k in ((2, 3), (2, 4), (3, 2), (3, 3), (5, 2))]
        + [_s("quaternion"), _s("frobenius21"), _s("small_54_5")]
        + [_s("agl", n=1, p=p) for p in (5, 7, 11, 13, 17, 19)]
        + [_s("agl", n=2, p=2), _s("gl", n=2, p=3)]
        + [_s("agammal1", q=q) for q in (4, 8, 9)]
        + [_s("jrv", p=2, a=1)]
        + [_d(S3, C(3)), _d(S3, S3), _d(S4, C(2)), _d(S4, C(3)), _d(_s("dihedral", n=4), C(3)),
           _d(_s("quaternion"), C(3)), _d(_s("alternating", n=4), C(2)), _d(_s("frobenius21"), C(2)),
           _d(S3, C(5)), _d(S4, C(5)), _d(_s("alternating", n=4), C(3))]
    )
    fam = [s for s in specs if _order_of(s) <= max_order]
    for extra in (_d(S3, S4), _s("jrv", p=2, a=2)):
        if extras and extra not in fam:
            fam.append(extra)
    return fam


def _order_of(spec: GroupSpec) -> int:
    return build_group(spec).order


# ---------------------------------------------------------------------------
# per-group checks


def _report(check, ok, G, values, witness=None, note="") -> VerificationReport:
    return VerificationReport(check, "pass" if ok else "fail", _fp(G), values,
                              [] if ok else [describe(witness) if witness is not None else "group"], note)


def hall_identity_report(P: Poset, G: FiniteGroup, check: str = "hall-identity") -> VerificationReport:
    chi = P.reduced_euler_characteristic()
    B = P.bounded_extension()
    mu = B.mobius(0, B.n - 1)
    return _report(check, chi == mu, G, {"reduced_euler": chi, "mobius_bounds": mu, "size": P.n,
                                         "poset": P.provenance})


def check_thm_a(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if G.order == 1 or not is_n_constrained(G):
        return [VerificationReport("thmA", "boundary", _fp(G), {"n_constrained": is_n_constrained(G)},
                                   note="not a nontrivial N-constrained group")]
    out = [verify_thm_a(G)]
    prof = mann_injector(G)
    oracle = injectors_definitional(G)
    same = [S.bits for S in oracle] == [S.bits for S in prof.all_injectors]
    out.append(_report("oracle-injectors", same, G,
                       {"definitional": len(oracle), "mann_class": len(prof.all_injectors)}, prof.injector))
    L = all_subgroups(G)
    flags = L.flags("nilpotent")
    bad, checked = None, 0
    for S, f in zip(L, flags):
        if not f:
            continue
        checked += 1
        direct = sum(1 for J in prof.all_injectors if J.bits & S.bits == S.bits)
        if product_formula_count(prof, S) != direct:
            bad = S
            break
    out.append(_report("lemma-product", bad is None, G, {"nilpotent_subgroups": checked}, bad))
    return out


def check_thm_b(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if G.order == 1 or not is_n_constrained(G):
        return [VerificationReport("thmB", "boundary", _fp(G), {}, note="not a nontrivial N-constrained group")]
    return [verify_thm_b(G), hall_identity_report(injector_poset(G), G)]


def check_thm_c(G: FiniteGroup, spec: GroupSpec | None = None) -> list[VerificationReport]:
    if spec is None or spec.construct != "jrv":
        return []
    p, a = spec.params["p"], spec.params["a"]
    data = question_one_data(G)
    theta, order = data["theta_nilpotent"], data["injector_order"]
    ratio = order // theta if theta and order % theta == 0 else None
    values = {"p": p, "a": a, "theta": theta, "injector_order": order, "ratio": ratio}
    return [_report("thmC", ratio == -(p**a), G, values, mann_injector(G).injector)]


def check_thm_d(p: int = 3) -> list[VerificationReport]:
    s = thm_d_statistics(p)
    ok = (
        s.order_G == p * (2**p - 1) * 2**p * p ** (2**p)
        and s.order_H == 2 * p * p ** (2 ** (p - 1))
        and s.class_size == 2 * (2**p - 1)
        and s.class_meet_H == 2 * (2 ** (p - 1) - 1)
        and s.class_meet_H % p == 0
        and s.hyperplanes == 2**p - 1
        and s.hyperplanes_containing_one == 2 ** (p - 1) - 1
        and s.divisor_divides_nu
    )
    values = {k: getattr(s, k) for k in ("p", "order_G", "order_H", "class_size", "class_meet_H",
                                         "stabilizer_order", "centralizer_order", "nu", "divisor")}
    values["hyperplane_X"] = list(s.hyperplane_X)
    fp = {"order": str(s.order_G), "abelian_invariants": [], "provenance": f"AGammaL1(2^{p}) W (not built)"}
    return [VerificationReport(f"thmD[p={p}]", "pass" if ok else "fail", fp, values,
                               [] if ok else [f"e_X for X = {list(s.hyperplane_X)}"])]


def check_thm_e(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if not is_soluble(G):
        return []
    out = []
    L = all_subgroups(G)
    for q in prime_factors(G.order):
        N = normal_hall_complement(G, q)
        if N is None:
            continue
        bad = None
        for X in L:
            if thm_e_count(G, N, X) != count_carter_containing(G, X):
                bad = X
                break
        out.append(_report(f"thmE[q={q}]", bad is None, G, {"q": q, "subgroups": len(L)}, bad))
    return out


def _subsets(primes: list[int]):
    for k in range(1, len(primes) + 1):
        yield from itertools.combinations(primes, k)


def check_cor1(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    out = []
    for p in prime_factors(G.order):
        out.append(verify_cor_first(G, p))
        out.append(hall_identity_report(p_subgroup_poset(G, p), G, f"hall-identity[p={p}]"))
    return out


def check_cor2(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if not is_soluble(G):
        return []
    out = []
    for pi in _subsets(prime_factors(G.order)):
        out.append(verify_cor_second(G, pi))
        out.append(hall_identity_report(pi_subgroup_poset(G, pi), G, f"hall-identity[pi={','.join(map(str, pi))}]"))
    return out


def check_cor3(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if G.order == 1 or not is_n_constrained(G):
        return []
    return [verify_cor_third(G)]


def check_fitting_class(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if not is_soluble(G):
        return []
    primes = prime_factors(G.order)
    out = [fitting_class_sum(G, "nilpotent"),
           hall_identity_report(nilpotent_subgroup_poset(G), G, "hall-identity[nilpotent]")]
    out += [fitting_class_sum(G, ("p-groups", p)) for p in primes]
    out += [fitting_class_sum(G, ("pi-groups", pi)) for pi in _subsets(primes) if len(pi) > 1]
    return out


def check_carter_lemmas(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if not is_soluble(G):
        return []
    out = []
    L = all_subgroups(G)
    prof = carter_subgroups(G)
    n = G.order
    # semidirect factorizations G = N x| K with K a lattice subgroup (one per class)
    normals = [L[i] for i in range(len(L)) if L.is_normal(i) and 1 < L[i].order < n]
    factorizations = 0
    bad = None
    for N in normals:
        for members in L.classes:
            K = L[members[0]]
            if K.order * N.order != n or intersection(N, K).order != 1:
                continue
            factorizations += 1
            is_carter = K.bits in {D.bits for D in prof.carters}
            for i in L.within(K):
                X = L[i]
                lemma = lemma_semidirect_count(G, N, K, X)
                if lemma != conjugates_containing(G, K, X):
                    bad = ("lemma", X)
                    break
                if is_carter:
                    cn = intersection(centralizer(G, X), N).order
                    if not (lemma == cn == count_carter_containing(G, X) and prof.index % cn == 0):
                        bad = ("semidirect-carter", X)
                        break
            if bad:
                break
        if bad:
            break
    out.append(_report("lemma-semidirect", bad is None, G, {"factorizations": factorizations},
                       bad[1] if bad else None, bad[0] if bad else ""))
    # one-prime Isaacs decomposition
    for q in prime_factors(n):
        N = normal_hall_complement(G, q)
        if N is None or N.order == n:
            continue
        Q = hall_subgroups(G, [q])[0]
        via = [S.bits for S in isaacs_decomposition(G, N, Q)]
        direct = [S.bits for S in carters_containing(G, Q)]
        full_q = all(D.order % Q.order == 0 for D in prof.carters)
        out.append(_report(f"isaacs[q={q}]", via == direct and full_q, G,
                           {"q": q, "count": len(direct)}, Q))
    # general form: normal Hall pi-subgroup N, Carter subgroup D of a Hall pi'-subgroup
    primes = prime_factors(n)
    for pi in _subsets(primes):
        if len(pi) == len(primes):
            continue
        N = hall_subgroups(G, pi)
        if len(N) != 1:
            continue
        N = N[0]
        Q = hall_subgroups(G, [p for p in primes if p not in pi])[0]
        D = carter_subgroups(Q).carter
        via = [S.bits for S in isaacs_general(G, N, D)]
        direct = [S.bits for S in carters_containing(G, D)]
        out.append(_report(f"isaacs-general[pi={','.join(map(str, pi))}]", via == direct, G,
                           {"count": len(direct)}, D))
    return out


def check_star(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if not is_soluble(G):
        return []
    rep = property_star_check(G)
    if rep.status == "fail":
        log.error("property (*) fails on a Sylow-tower group %s", G.name)
    return [rep]


def check_question(G: FiniteGroup, spec=None) -> list[VerificationReport]:
    if not is_soluble(G):
        return []
    return [question_congruence_scan(G)]


def check_stretch(G: FiniteGroup | None = None, spec=None) -> list[VerificationReport]:
    """AGL_3(2) x C3: odd injector index and odd n_I(G, <g>) for every element
    ``g`` lying in an injector."""
    from .constructions.families import agl, cyclic
    from .groups import direct_product

    if G is None:
        G = direct_product(agl(3, 2), cyclic(3), name="AGL3(2)xC3")
    prof = mann_injector(G)
    inj = np.zeros(G.order, dtype=np.int64)
    for J in prof.all_injectors:
        inj[J.ids] += 1
    inside = np.flatnonzero(inj > 0)
    even = inside[inj[inside] % 2 == 0]
    values = {"order": G.order, "injector_order": prof.injector.order, "index": prof.index,
              "m_G": prof.m_G, "elements_checked": G.order, "elements_in_injectors": len(inside),
              "injectors": len(prof.all_injectors)}
    ok = prof.index % 2 == 1 and even.size == 0
    return [_report("stretch-parity", ok, G, values, int(even[0]) if even.size else None)]


_GROUP_CHECKS: dict[str, Callable] = {
    "thmA": check_thm_a,
    "thmB": check_thm_b,
    "thmC": check_thm_c,
    "thmE": check_thm_e,
    "cor1": check_cor1,
    "cor2": check_cor2,
    "cor3": check_cor3,
    "fitting-class": check_fitting_class,
    "carter-lemmas": check_carter_lemmas,
    "star": check_star,
    "question-scan": check_question,
}


def _run_one(args) -> list[dict]:
    suite, spec_json, caps = args
    spec = parse_group_spec(spec_json)
    with limits.override(**caps):
        try:
            G = build_group(spec)
            names = list(_GROUP_CHECKS) if suite == "all" else [suite]
            reports = []
            for name in names:
                reports += _GROUP_CHECKS[name](G, spec)
        except ResourceLimitError as exc:
            reports = [VerificationReport(suite, "skipped-cap", {"provenance": spec.label}, {}, note=str(exc))]
    for r in reports:
        r.fingerprint.setdefault("provenance", spec.label)
        r.fingerprint["provenance"] = spec.label
    return [r.to_dict() for r in reports]


def run_suite(suite: str, specs: Iterable[GroupSpec] | None = None, caps: dict | None = None,
              jobs: int = 1, thm_d_primes: Iterable[int] = (3,)) -> list[dict]:
    """Run ``suite`` on ``specs`` (default: the generated family) and return
    report dicts in input order."""
    if suite not in SUITE_IDS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_IDS)}")
    caps = {k: v for k, v in (caps or {}).items() if v is not None}
    out: list[dict] = []
    if suite in ("thmD", "all"):
        for p in thm_d_primes:
            out += [r.to_dict() for r in check_thm_d(p)]
    if suite == "stretch":
        with limits.override(**caps):
            try:
                G = build_group(specs[0]) if specs else None
                return out + [r.to_dict() for r in check_stretch(G)]
            except ResourceLimitError as exc:
                return out + [VerificationReport("stretch", "skipped-cap", {}, {}, note=str(exc)).to_dict()]
    if suite == "thmD":
        return out
    specs = list(specs) if specs is not None else generated_family()
    tasks = [(suite, s.to_json(), caps) for s in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    for res in results:
        out += res
    if suite in ("star", "all"):
        for r in out:
            if r["check"] == "star" and r["status"] == "fail":
                raise SylowTowerViolation(f"property (*) fails on Sylow-tower group {r['fingerprint']}")
    return out


def exit_status(reports: list[dict]) -> int:
    """0 when nothing failed, 1 on any failure, else 2 if some cap was hit."""
    statuses = {r["status"] for r in reports}
    if "fail" in statuses:
        return 1
    if "skipped-cap" in statuses:
        return 2
    return 0
