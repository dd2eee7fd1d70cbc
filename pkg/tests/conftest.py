import pytest

from nilinj.constructions import families
from nilinj.groups import Permutation, direct_product, generate


def elem(G, *cycles):
    """Element id of the permutation with the given cycles."""
    return G.index_of(Permutation.from_cycles(G.perms.shape[1], *cycles))


def sub(G, *gens):
    """Subgroup generated by permutations given as cycle lists."""
    return generate(G, [elem(G, *c) if isinstance(c[0], (list, tuple)) else elem(G, c) for c in gens])


@pytest.fixture(scope="session")
def S3():
    return families.symmetric(3)


@pytest.fixture(scope="session")
def S4():
    return families.symmetric(4)


@pytest.fixture(scope="session")
def A5():
    return families.alternating(5)


@pytest.fixture(scope="session")
def F21():
    return families.frobenius21()


@pytest.fixture(scope="session")
def S3xS4():
    return direct_product(families.symmetric(3), families.symmetric(4))


@pytest.fixture(scope="session")
def V4(S4):
    return sub(S4, [[0, 1], [2, 3]], [[0, 2], [1, 3]])


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
