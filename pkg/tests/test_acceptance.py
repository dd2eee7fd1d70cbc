"""Acceptance criteria 1-11, checked at exact equality with runtime bounds.

Each criterion prints one ``PASS``/``FAIL`` line (shown in the pytest terminal
summary, or on stdout when run as ``python3 tests/test_acceptance.py``).
"""

from __future__ import annotations

import sys
import time

import numpy as np
import pytest

from nilinj.carter import carter_poset, carter_subgroups
from nilinj.constructions import families, jrv_group, nilpotent_theta, small_54_5, thm_d_statistics
from nilinj.groups import direct_product, group_from_generators, normal_core, normalizer
from nilinj.injectors import injector_poset, mann_injector
from nilinj.posets import Poset
from nilinj.reports import abelian_invariants
from nilinj.suites import run_suite

RESULTS: list[str] = []


class Criterion:
    """Collects named sub-checks; the criterion passes when all of them do and
    the wall time stays under ``bound`` seconds."""

    def __init__(self, number: int, title: str, bound: float):
        self.number, self.title, self.bound = number, title, bound
        self.checks: list[tuple[str, bool]] = []
        self.start = time.perf_counter()

    def check(self, label: str, ok) -> None:
        self.checks.append((label, bool(ok)))

    def finish(self) -> tuple[bool, str]:
        elapsed = time.perf_counter() - self.start
        self.check(f"runtime {elapsed:.2f}s < {self.bound:g}s", elapsed < self.bound)
        ok = all(flag for _, flag in self.checks)
        failed = [label for label, flag in self.checks if not flag]
        line = f"criterion {self.number:>2} {'PASS' if ok else 'FAIL'}  {self.title}  [{elapsed:.2f}s]"
        if failed:
            line += "  failed: " + "; ".join(failed)
        RESULTS.append(line)
        print(line)
        return ok, line


def _statuses(reports, checks=None):
    return {r["status"] for r in reports if checks is None or r["check"].split("[")[0] in checks}


def _failures(reports):
    return [f"{r['check']} on {r['fingerprint']['provenance']}" for r in reports if r["status"] == "fail"]


def criterion_1():
    c = Criterion(1, "jrv(2,1): theta_N(1) = -4, |I| = 8, ratio -2", 1.0)
    G = jrv_group(2, 1).group
    theta = nilpotent_theta(G)
    inj = mann_injector(G).injector.order
    c.check(f"theta_N(1) = {theta} == -4", theta == -4)
    c.check(f"|I| = {inj} == 8", inj == 8)
    c.check(f"|I|/theta = {inj / theta:g} == -2", inj == -2 * theta)
    return c.finish()


def criterion_2():
    c = Criterion(2, "jrv(3,1): order 1053, theta_N(1) = -27, |I| = 81, ratio -3", 120.0)
    X = jrv_group(3, 1)
    G = X.group
    theta = nilpotent_theta(G)
    inj = mann_injector(G).injector.order
    c.check(f"|G| = {G.order} == 1053", G.order == 1053)
    c.check(f"theta_N(1) = {theta} == -27", theta == -27)
    index = G.order // normalizer(G, X.R).order
    c.check(f"theta_N(1) == -(G : N_G(R)) = {-index}", theta == -index)
    c.check(f"|I| = {inj} == 81", inj == 81)
    c.check(f"|I|/theta = {inj / theta:g} == -3", inj == -3 * theta)
    return c.finish()


def criterion_3():
    c = Criterion(3, "order-54 group: core-free cyclic Carter subgroup of order 6, theta = -2", 5.0)
    G = small_54_5()
    C = carter_subgroups(G).carter
    c.check(f"|G| = {G.order} == 54", G.order == 54)
    c.check(f"|C| = {C.order} == 6 and cyclic", C.order == 6 and G.element_orders[C.ids].max() == 6)
    c.check("Core_G(C) = 1", normal_core(G, C).order == 1)
    theta = carter_poset(G).theta(0)
    c.check(f"theta(1) over subgroups of Carter conjugates = {theta} == -2", theta == -2)
    return c.finish()


def _as_group(G, S):
    return group_from_generators(G.perms.shape[1], [G.perms[g] for g in S.gens])


def criterion_4():
    c = Criterion(4, "S3 x S4: |I| = 24 (C3 x D8), theta_X(1) = -12, |I| does not divide it, "
                     "(I:F) = 2 divides theta_X(F)", 30.0)
    G = direct_product(families.symmetric(3), families.symmetric(4))
    prof = mann_injector(G)
    I = prof.injector
    ref = direct_product(families.cyclic(3), families.dihedral(4))
    same_shape = (I.order == ref.order
                  and abelian_invariants(_as_group(G, I)) == abelian_invariants(ref)
                  and sorted(np.bincount(G.element_orders[I.ids])) == sorted(np.bincount(ref.element_orders)))
    c.check(f"|I| = {I.order} == 24", I.order == 24)
    c.check("I has the C3 x D8 fingerprint", same_shape)
    X = injector_poset(G)
    theta_one = X.theta(0)
    theta_F = X.theta(X.marks["fitting"])
    n = I.order // prof.fitting.order
    c.check(f"theta_X(1) = {theta_one} == -12", theta_one == -12)
    c.check(f"|I| = 24 does not divide theta_X(1) = {theta_one}", theta_one % I.order != 0)
    c.check(f"(I:F) = {n} == 2", n == 2)
    c.check(f"(I:F) divides theta_X(F) = {theta_F}", theta_F % n == 0)
    return c.finish()


def criterion_5():
    c = Criterion(5, "F21: m_G = 2, theta_X(F) = 1, (I:F) = 1", 1.0)
    G = families.frobenius21()
    prof = mann_injector(G)
    X = injector_poset(G)
    theta_F = X.theta(X.marks["fitting"])
    c.check(f"m_G = {prof.m_G} == 2", prof.m_G == 2)
    c.check(f"theta_X(F) = {theta_F} == 1", theta_F == 1)
    c.check(f"(I:F) = {prof.injector.order // prof.fitting.order} == 1", prof.injector == prof.fitting)
    return c.finish()


def criterion_6():
    c = Criterion(6, "order_G, order_H, class sizes, stabilizer, nu for p = 3", 5.0)
    s = thm_d_statistics(3)
    c.check(f"order_G = {s.order_G} == 1102248", s.order_G == 1_102_248)
    c.check(f"order_H = {s.order_H} == 486 = 2*3^5", s.order_H == 486 == 2 * 3**5)
    c.check(f"class_size = {s.class_size} == 14", s.class_size == 14)
    c.check(f"class_meet_H = {s.class_meet_H} == 6", s.class_meet_H == 6)
    c.check(f"stabilizer = {s.stabilizer_order} == 12", s.stabilizer_order == 12)
    c.check(f"nu = {s.nu} == 972", s.nu == 972)
    c.check(f"243 divides nu (divisor {s.divisor})", s.divisor == 243 and s.nu % 243 == 0)
    return c.finish()


_FAMILY_CACHE: dict[str, list] = {}


def _thm_a_reports():
    if "thmA" not in _FAMILY_CACHE:
        _FAMILY_CACHE["thmA"] = run_suite("thmA", jobs=2)
    return _FAMILY_CACHE["thmA"]


def criterion_7():
    c = Criterion(7, "every subgroup count n_I(G,H) is 0 or 1 mod m_G over the family", 300.0)
    reports = _thm_a_reports()
    thm_a = [r for r in reports if r["check"] == "thmA"]
    c.check(f"{sum(r['status'] == 'pass' for r in thm_a)} groups pass, "
            f"{sum(r['status'] == 'boundary' for r in thm_a)} outside the hypothesis",
            _statuses(thm_a) <= {"pass", "boundary"} and any(r["status"] == "pass" for r in thm_a))
    c.check("no failures: " + ", ".join(_failures(thm_a)), not _failures(thm_a))
    return c.finish()


def criterion_8():
    c = Criterion(8, "definitional injectors = Mann class; product formula = direct count", 300.0)
    reports = _thm_a_reports()
    oracle = [r for r in reports if r["check"] == "oracle-injectors"]
    product = [r for r in reports if r["check"] == "lemma-product"]
    c.check(f"oracle agreement on {len(oracle)} groups", oracle and _statuses(oracle) == {"pass"})
    c.check(f"product formula on {len(product)} groups", product and _statuses(product) == {"pass"})
    return c.finish()


def criterion_9():
    c = Criterion(9, "Carter counts: product formula, semidirect lemmas, property (*) on Sylow towers", 300.0)
    thm_e = run_suite("thmE", jobs=2)
    lemmas = run_suite("carter-lemmas", jobs=2)
    star = run_suite("star", jobs=2)
    c.check(f"{len(thm_e)} product-formula checks", thm_e and _statuses(thm_e) == {"pass"})
    semidirect = [r for r in lemmas if r["check"] == "lemma-semidirect"]
    factorizations = sum(int(r["values"]["factorizations"]) for r in semidirect)
    c.check(f"semidirect lemmas over {factorizations} factorizations", _statuses(semidirect) == {"pass"})
    c.check(f"Isaacs decompositions ({len(lemmas) - len(semidirect)})", _statuses(lemmas) == {"pass"})
    towers = [r for r in star if r["values"].get("sylow_tower") is True]
    c.check(f"(*) holds on {len(towers)} Sylow-tower groups", towers and _statuses(towers) == {"pass"})
    c.check("no star failures", "fail" not in _statuses(star))
    return c.finish()


def _random_poset(rng, n):
    relabel = rng.permutation(n)
    leq = np.eye(n, dtype=bool)
    density = rng.uniform(0.05, 0.6)
    upper = np.triu(rng.random((n, n)) < density, 1)
    leq[np.ix_(relabel, relabel)] |= upper
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


def criterion_10():
    c = Criterion(10, "Hall identity on 1000 random posets and all subgroup posets; Cor divisibility", 180.0)
    rng = np.random.default_rng(20240611)
    bad = 0
    for _ in range(1000):
        P = Poset(_random_poset(rng, int(rng.integers(0, 13))))
        B = P.bounded_extension()
        bad += P.reduced_euler_characteristic() != B.mobius(0, B.n - 1)
    c.check(f"random posets: {bad} mismatches", bad == 0)
    suites = {name: run_suite(name, jobs=2) for name in ("thmB", "cor1", "cor2", "cor3", "fitting-class")}
    hall = [r for rs in suites.values() for r in rs if r["check"].startswith("hall-identity")]
    c.check(f"subgroup posets: {len(hall)} Hall identities", hall and _statuses(hall) == {"pass"})
    for name in ("cor1", "cor2", "cor3"):
        rs = [r for r in suites[name] if not r["check"].startswith("hall-identity")]
        c.check(f"{name}: {len(rs)} reports without failure " + ", ".join(_failures(rs)),
                rs and _statuses(rs) <= {"pass", "boundary"})
    return c.finish()


def criterion_11():
    c = Criterion(11, "AGL3(2) x C3: odd injector index, odd n_I(G,<g>) for g in an injector", 600.0)
    (r,) = run_suite("stretch")
    v = r["values"]
    c.check(f"|G| = {v['order']} == 4032", v["order"] == "4032")
    c.check(f"(G:I) = {v['index']} odd", int(v["index"]) % 2 == 1)
    c.check(f"all {v['elements_in_injectors']} elements inside injectors lie in an odd number of them",
            r["status"] == "pass")
    return c.finish()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(number):
    ok, line = CRITERIA[number - 1]()
    assert ok, line


if __name__ == "__main__":
    outcomes = [fn()[0] for fn in CRITERIA]
    sys.exit(0 if all(outcomes) else 1)
