import math

import pytest

from conftest import sub
from nilinj.constructions import families
from nilinj.groups import direct_product, intersection, is_normal
from nilinj.injectors import (
    count_injectors_containing,
    fitting_class_sum,
    injector_poset,
    injectors_definitional,
    mann_injector,
    modulus_from_index,
    modulus_m,
    nilpotent_subgroup_poset,
    product_formula_count,
    verify_cor_first,
    verify_cor_second,
    verify_cor_third,
    verify_thm_a,
    verify_thm_b,
)
from nilinj.lattice import all_subgroups, fitting_subgroup, is_nilpotent, sylow_subgroups

N_CONSTRAINED = {
    "S3": lambda: families.symmetric(3),
    "S4": lambda: families.symmetric(4),
    "F21": families.frobenius21,
    "A4": lambda: families.alternating(4),
    "D20": lambda: families.dihedral(10),
    "AGL1(7)": lambda: families.agl(1, 7),
    "GL2(3)": lambda: families.gl(2, 3),
    "S4xC3": lambda: direct_product(families.symmetric(4), families.cyclic(3)),
    "Q8": families.quaternion,
}


def test_mann_injector_s4(S4, V4):
    prof = mann_injector(S4)
    assert prof.fitting == V4
    assert prof.injector.order == 8
    assert sorted(S.bits for S in prof.all_injectors) == sorted(S.bits for S in sylow_subgroups(S4, 2))
    assert prof.primes[2].fitting_complement.order == 1 and prof.primes[2].centralizer == S4.whole


def test_mann_injector_small_cases(F21):
    Q8 = families.quaternion()
    assert mann_injector(Q8).injector == Q8.whole
    prof = mann_injector(F21)
    assert prof.fitting.order == 7 and prof.injector == prof.fitting


def test_definitional_oracle_examples(S4, F21):
    assert [S.order for S in injectors_definitional(S4)] == [8, 8, 8]
    assert [S.order for S in injectors_definitional(F21)] == [7]
    C12 = families.cyclic(12)
    assert [S.order for S in injectors_definitional(C12)] == [12]


@pytest.mark.parametrize("name", sorted(N_CONSTRAINED))
def test_mann_class_equals_definitional(name):
    G = N_CONSTRAINED[name]()
    prof = mann_injector(G)
    assert [S.bits for S in injectors_definitional(G)] == [S.bits for S in prof.all_injectors]


def test_counts(S4, V4):
    assert count_injectors_containing(S4, sub(S4, [0, 1])) == 1
    assert count_injectors_containing(S4, V4) == 3
    D8 = families.dihedral(4)
    assert count_injectors_containing(D8, D8.whole) == 1
    prof = mann_injector(S4)
    assert product_formula_count(prof, V4) == 3
    F21 = families.frobenius21()
    assert product_formula_count(mann_injector(F21), fitting_subgroup(F21)) == 1


@pytest.mark.parametrize("name", sorted(N_CONSTRAINED))
def test_product_formula_matches_direct_count(name):
    G = N_CONSTRAINED[name]()
    prof = mann_injector(G)
    for H in all_subgroups(G):
        if is_nilpotent(H):
            assert product_formula_count(prof, H) == count_injectors_containing(G, H)


def test_modulus_examples(S4, F21):
    assert modulus_m(mann_injector(S4)) == 2
    assert modulus_m(mann_injector(families.quaternion())) == 1
    assert modulus_m(mann_injector(F21)) == 2


@pytest.mark.parametrize("a", range(1, 60))
def test_modulus_shrinks_along_divisibility(a):
    # more primes in the index can only shrink the gcd of p - 1
    for b in range(1, 30):
        big, small = modulus_from_index(a * b), modulus_from_index(a)
        if small:
            assert big and small % big == 0


@pytest.mark.parametrize("name", sorted(N_CONSTRAINED))
def test_injector_is_hereditary_for_normal_subgroups(name):
    G = N_CONSTRAINED[name]()
    prof = mann_injector(G)
    L = all_subgroups(G)
    for i in range(len(L)):
        N = L[i]
        if L.is_normal(i) and N.order > 1:
            inside = [S.bits for S in injectors_definitional(N)]
            assert intersection(prof.injector, N).bits in inside


@pytest.mark.parametrize("name", sorted(N_CONSTRAINED))
def test_injector_contains_fitting_and_is_maximal_nilpotent(name):
    G = N_CONSTRAINED[name]()
    prof = mann_injector(G)
    I = prof.injector
    assert prof.fitting <= I and is_nilpotent(I)
    L = all_subgroups(G)
    for S in L:
        if I < S:
            assert not is_nilpotent(S)


def test_thm_a_examples(S4, F21, S3xS4):
    for G in (S4, F21, S3xS4):
        assert verify_thm_a(G).status == "pass"
    values = verify_thm_a(S4).values
    assert values["m_G"] == 2


def test_injector_posets(S4, F21):
    X = injector_poset(S4)
    subs_in_sylows = {S.bits for P in sylow_subgroups(S4, 2) for S in all_subgroups(S4) if S <= P}
    assert {S.bits for S in X.labels} == subs_in_sylows
    Q8 = families.quaternion()
    assert injector_poset(Q8).n == len(all_subgroups(Q8))
    assert [S.order for S in injector_poset(F21).labels] == [1, 7]


def test_thm_b_examples(S4, F21, S3xS4):
    r = verify_thm_b(S4)
    assert r.status == "pass" and r.values["theta_at_F"] == -2 and r.values["index_I_F"] == 2
    r = verify_thm_b(S3xS4)
    assert r.status == "pass" and r.values["theta_at_F"] % 2 == 0
    r = verify_thm_b(F21)
    assert r.status == "pass" and r.values["theta_at_F"] == 1 and r.values["boundary_n_equals_1"]


def test_cor_first_examples(S3, S4):
    r = verify_cor_first(S3, 2)
    assert r.status == "pass" and r.values["theta"] == -2 and r.values["divisor"] == 2
    r = verify_cor_first(S4, 2)
    assert r.status == "pass" and r.values["theta"] == 0
    r = verify_cor_first(families.cyclic(5), 5)
    assert r.status == "pass" and r.values["theta"] == 0


def test_cor_second_examples(S4, F21):
    r = verify_cor_second(F21, [3])
    assert r.status == "pass"
    assert (r.values["hall_order"], r.values["hall_count"], r.values["m"], r.values["theta"]) == (3, 7, 6, -6)
    r = verify_cor_second(S4, [3])
    assert r.status == "pass" and (r.values["hall_count"], r.values["m"], r.values["theta"]) == (4, 1, -3)
    r = verify_cor_second(S4, [2, 3])
    assert r.status == "pass" and r.values["hall_count"] == 1 and r.values["m"] == 0


def test_cor_third_examples(S4, F21, S3xS4):
    r = verify_cor_third(S4)
    assert r.status == "pass" and (r.values["n"], r.values["m_G"], r.values["theta_at_F"]) == (2, 2, -2)
    assert verify_cor_third(F21).status == "boundary"
    r = verify_cor_third(S3xS4)
    assert r.status == "pass" and r.values["n"] == 2


def test_fitting_class_examples(S4, F21):
    r = fitting_class_sum(S4, "nilpotent")
    assert r.status == "pass" and r.values["radical_order"] == 4 and r.values["theta"] == -4
    r = fitting_class_sum(S4, ("p-groups", 2))
    assert r.status == "pass" and r.values["theta"] == 0
    r = fitting_class_sum(F21, ("p-groups", 7))
    assert r.status == "pass" and r.values["radical_order"] == 7 and r.values["theta"] == 0


@pytest.mark.parametrize("left,right", [
    (lambda: families.dihedral(5), families.frobenius21),
    (lambda: families.symmetric(4), lambda: families.cyclic(5)),
    (families.frobenius21, lambda: families.cyclic(2)),
    (lambda: families.jrv_group(2, 1).group, lambda: families.cyclic(7)),
])
def test_nilpotent_theta_is_multiplicative_on_coprime_products(left, right):
    A, B = left(), right()
    assert math.gcd(A.order, B.order) == 1
    G = direct_product(A, B)
    assert nilpotent_subgroup_poset(G).theta(0) == nilpotent_subgroup_poset(A).theta(0) * nilpotent_subgroup_poset(B).theta(0)
    XA, XB, XG = injector_poset(A), injector_poset(B), injector_poset(G)
    assert XG.theta(0) == XA.theta(0) * XB.theta(0)


def test_fitting_is_normal_and_nilpotent():
    for build in N_CONSTRAINED.values():
        G = build()
        F = fitting_subgroup(G)
        assert is_normal(G, F) and is_nilpotent(F)
