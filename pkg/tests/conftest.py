import pytest

from fpgroups import Alphabet, EnumLimits, Presentation, load_presentation, parse_presentation


@pytest.fixture(scope="session")
def A():
    return load_presentation("A.pres")


@pytest.fixture(scope="session")
def G():
    return load_presentation("G.pres")


@pytest.fixture(scope="session")
def F2():
    return parse_presentation("gens: a, b\nrels:")


@pytest.fixture(scope="session")
def chain(A):
    """Tables and presentations of B <= A and C <= B, shared across tests."""
    from fpgroups import compose_tables, enumerate_cosets, subgroup_presentation, tietze_simplify
    from fpgroups.pseries import Ladder
    from fpgroups.wiegold import commutator_generators

    bgens = commutator_generators(A)
    tB = enumerate_cosets(A, bgens)
    rawB = subgroup_presentation(A, tB)
    spB = tietze_simplify(rawB)
    ladder = Ladder(spB.presentation, 2)
    lev1 = ladder.level(1)
    tC = compose_tables(tB, spB, lev1.table)
    rawC = subgroup_presentation(A, tC)
    spC = tietze_simplify(rawC)
    return dict(bgens=bgens, tB=tB, rawB=rawB, spB=spB, ladder=ladder, lev1=lev1, tC=tC, rawC=rawC, spC=spC)


def free_group(rank):
    return Presentation(Alphabet([f"g{i}" for i in range(rank)]))


SMALL = EnumLimits(max_cosets=5000)
