import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import elem, sub
from nilinj.constructions import families
from nilinj.errors import DomainError
from nilinj.groups import (
    Permutation,
    centralizer,
    conjugate_subgroup,
    derived_subgroup,
    direct_product,
    group_from_generators,
    group_from_table,
    normal_core,
    normalizer,
    quotient_by_normal,
    semidirect_product,
)
from nilinj.lattice import sylow_subgroup


def test_generator_examples():
    assert group_from_generators(3, [Permutation.from_cycles(3, [0, 1]), Permutation.from_cycles(3, [0, 1, 2])]).order == 6
    assert group_from_generators(1, []).order == 1
    klein = [Permutation.from_cycles(4, [0, 1], [2, 3]), Permutation.from_cycles(4, [0, 2], [1, 3])]
    assert group_from_generators(4, klein).order == 4


@pytest.mark.parametrize("build", [lambda: families.symmetric(4), families.frobenius21,
                                   lambda: families.agammal1(8), families.quaternion])
def test_axioms_hold(build):
    build().check_axioms()


def test_table_backend_matches_permutations(S4):
    T = group_from_table(S4.table)
    assert T.order == 24
    T.check_axioms()
    a = np.arange(24)
    assert np.array_equal(T.mul(a[:, None], a[None, :]), S4.mul(a[:, None], a[None, :]))


def test_product_convention(S3):
    # x * y applies x first, then y
    x, y = elem(S3, [0, 1]), elem(S3, [1, 2])
    xy = S3.perm(S3.mul(x, y))
    assert xy(0) == S3.perm(y)(S3.perm(x)(0))


def test_centralizer_examples(S3, S4, V4):
    C3 = sub(S3, [0, 1, 2])
    assert centralizer(S3, C3) == C3
    assert centralizer(S4, V4) == V4
    assert centralizer(S4, S4.trivial) == S4.whole


def test_normalizer_examples(S4, V4):
    assert normalizer(S4, sub(S4, [0, 1, 2])).order == 6
    assert normalizer(S4, S4.whole) == S4.whole
    P = sylow_subgroup(S4, 2)
    assert normalizer(S4, P) == P


def test_conjugation_examples(S3, S4, V4):
    assert all(conjugate_subgroup(V4, g) == V4 for g in range(24))
    assert conjugate_subgroup(sub(S3, [0, 1]), elem(S3, [1, 2])) == sub(S3, [0, 2])


def test_normal_core_examples(S4, V4):
    assert normal_core(S4, sylow_subgroup(S4, 2)) == V4
    assert normal_core(S4, S4.whole) == S4.whole


def test_quotients(S4, V4):
    Q, hom = quotient_by_normal(S4, V4)
    assert Q.order == 6 and not Q.is_abelian()
    assert hom.kernel() == V4
    Q1, _ = quotient_by_normal(S4, S4.trivial)
    assert Q1.order == 24
    A4 = derived_subgroup(S4)
    assert quotient_by_normal(S4, A4)[0].order == 2
    with pytest.raises(DomainError):
        quotient_by_normal(S4, sub(S4, [0, 1]))


def test_derived_subgroup(S3, S4):
    assert derived_subgroup(S4).order == 12
    assert derived_subgroup(S3) == sub(S3, [0, 1, 2])
    assert derived_subgroup(families.cyclic(6)).order == 1


def test_direct_and_semidirect_orders():
    assert direct_product(families.symmetric(3), families.symmetric(4)).order == 144
    C7, C3 = families.cyclic(7), families.cyclic(3)
    # the generator of C7 is the 7-cycle; squaring is an automorphism of order 3
    square = np.array([C7.mul(g, g) for g in range(7)])
    F = semidirect_product(C7, C3, {C3.generators[0]: square})
    assert F.order == 21 and not F.is_abelian()
    trivial = semidirect_product(C7, C3, {C3.generators[0]: np.arange(7)})
    assert trivial.is_abelian() and trivial.order == 21
    N = families.elementary_abelian(3, 2)
    assert semidirect_product(N, families.cyclic(6), {families.cyclic(6).generators[0]: np.arange(9)}).order == 54


def test_semidirect_rejects_non_automorphism():
    C7, C3 = families.cyclic(7), families.cyclic(3)
    with pytest.raises(DomainError):
        semidirect_product(C7, C3, {C3.generators[0]: np.zeros(7, dtype=int)})


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_conjugation_is_an_automorphism(data):
    G = families.symmetric(4)
    g = data.draw(st.integers(0, 23))
    x = data.draw(st.integers(0, 23))
    y = data.draw(st.integers(0, 23))
    assert G.conj(G.mul(x, y), g) == G.mul(G.conj(x, g), G.conj(y, g))


def test_large_group_lookup_is_exact():
    G = families.agammal1(32)
    assert G.order == 4960
    rng = np.random.default_rng(0)
    a, b = rng.integers(0, G.order, 200), rng.integers(0, G.order, 200)
    prods = G.mul(a, b)
    for x, y, z in zip(a[:20], b[:20], prods[:20]):
        assert G.perm(int(z)) == G.perm(int(x)) * G.perm(int(y))
