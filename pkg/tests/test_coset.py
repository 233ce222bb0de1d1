import numpy as np
import pytest

from fpgroups import (
    Alphabet,
    EnumLimits,
    LimitExceeded,
    Presentation,
    Word,
    coset_action,
    enumerate_cosets,
    index,
    schreier_transversal,
    table_from_homomorphism,
)
from fpgroups.wiegold import commutator_generators

from conftest import free_group


def check_transversal(t):
    reps = schreier_transversal(t)
    assert reps[0] == Word()
    assert sorted(coset_action(t, r) for r in reps) == list(range(t.n_cosets))
    as_set = set(reps)
    for r in reps:
        for k in range(len(r)):
            assert Word(r.letters[:k]) in as_set
    return reps


def test_index_of_B(A):
    t = enumerate_cosets(A, commutator_generators(A))
    assert index(t) == 8
    assert (t.n_defined, t.n_coincidences) == (8, 0)
    assert len(check_transversal(t)) == 8


def test_whole_group(G):
    t = enumerate_cosets(G, G.gens())
    assert index(t) == 1
    assert schreier_transversal(t) == [Word()]


def test_table_invariants(A, G):
    for pr, gens in [(A, commutator_generators(A)), (G, [G.word("x"), G.word("y^2"), G.word("y*x*y^-1")])]:
        t = enumerate_cosets(pr, gens)
        t.validate(pr, gens)
        for c in range(t.n_cosets):
            assert coset_action(t, Word(), c) == c
            for r in pr.relators:
                assert coset_action(t, r, c) == c
            for a in (1, -1, 2, -2):
                assert t.act(t.act(c, a), -a) == c
        for g in gens:
            assert coset_action(t, g) == 0


def test_known_indices(A, G):
    assert enumerate_cosets(A, [A.word("x"), A.word("y^2"), A.word("y*x*y^-1")]).index() == 2
    d8 = Presentation(Alphabet("xy"), [Word([1, 1]), Word([2] * 4), Word([1, 2] * 2)])
    assert enumerate_cosets(d8, []).index() == 8


def test_rotation_and_inversion_invariance(G, chain):
    gens = chain["spC"].gen_words
    base = enumerate_cosets(G, gens).index()
    assert base == 64
    rels = list(G.relators)
    rotated = [Word(r.letters[1:] + r.letters[:1]) for r in rels]
    inverted = [r.inverse() for r in rels]
    for variant in (rotated, inverted, rotated[::-1]):
        assert enumerate_cosets(Presentation(G.alphabet, variant), gens).index() == base


def test_xyC(A, chain):
    t = enumerate_cosets(A, [A.word("x*y"), *chain["spC"].gen_words])
    assert t.index() == 8
    check_transversal(t)


def test_image_of_C_in_G(G, chain):
    t = enumerate_cosets(G, chain["spC"].gen_words)
    assert t.index() == 64
    assert len(check_transversal(t)) == 64


def test_limits(A):
    with pytest.raises(LimitExceeded) as exc:
        enumerate_cosets(A, commutator_generators(A), EnumLimits(max_cosets=4))
    assert exc.value.kind == "cosets"
    with pytest.raises(ValueError):
        EnumLimits(max_cosets=0)


def test_time_limit():
    # infinite index: Z^2 has no finite-index trivial subgroup
    z2 = Presentation(Alphabet("ab"), [Word([1, 2, -1, -2])])
    with pytest.raises(LimitExceeded) as exc:
        enumerate_cosets(z2, [], EnumLimits(max_cosets=10**7, max_time=0.2))
    assert exc.value.kind == "time"


def test_empty_alphabet():
    with pytest.raises(ValueError):
        enumerate_cosets(Presentation(Alphabet([])), [])


def test_deterministic(A):
    gens = commutator_generators(A)
    assert enumerate_cosets(A, gens).table == enumerate_cosets(A, gens).table


def test_homomorphism_tables():
    F2 = free_group(2)
    t = table_from_homomorphism(F2, np.eye(2, dtype=np.int64), 2)
    assert t.index() == 4
    t.validate(F2)
    assert table_from_homomorphism(F2, np.zeros((2, 0), dtype=np.int64), 2).index() == 1
    # regular action: coset of a word is its exponent vector mod 2
    w = F2.word("g0*g1^3*g0")
    assert t.trace(w) == 0 + 1 * 2


def test_homomorphism_must_kill_relators():
    cyc = Presentation(Alphabet("x"), [Word([1, 1, 1])])
    with pytest.raises(ValueError):
        table_from_homomorphism(cyc, np.array([[1]]), 2)


def test_homomorphism_limit():
    with pytest.raises(LimitExceeded):
        table_from_homomorphism(free_group(3), np.eye(3, dtype=np.int64), 2, EnumLimits(max_cosets=4))


def test_C_table_from_homomorphism(chain):
    assert chain["lev1"].table.index() == 8
    assert chain["tC"].index() == 64
