import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpgroups import Alphabet, SyllableWord, Word, commutator, fp_normal_form
from fpgroups.pseries import words_up_to

from oracles import trivial_in_Z2_Z4

AL = Alphabet("xy")
x, y = AL.gens()


def test_relators_vanish():
    assert fp_normal_form(x**2).is_identity()
    assert fp_normal_form(y**-4).is_identity()


def test_commutator_normal_form():
    nf = fp_normal_form(commutator(x, y))
    assert nf.syllables == ((0, 1), (1, 1), (0, 1), (1, 3))


def test_section_identity():
    lhs = fp_normal_form((x * y) ** 4)
    rhs = fp_normal_form(commutator(x, y) * commutator(x, y**2).inverse() * commutator(x, y**3))
    assert lhs == rhs
    assert lhs.syllables == ((0, 1), (1, 1)) * 4


def test_invalid_syllables():
    with pytest.raises(ValueError):
        SyllableWord(((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        SyllableWord(((1, 4),))


words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=24).map(Word)


@given(words, words)
def test_homomorphism(u, v):
    assert fp_normal_form(u * v) == fp_normal_form(u) * fp_normal_form(v)
    assert fp_normal_form(fp_normal_form(u).to_word()) == fp_normal_form(u)


def test_normal_closure_oracle_exhaustive():
    # every reduced word of length <= 10
    for w in words_up_to(2, 10):
        assert fp_normal_form(w).is_identity() == trivial_in_Z2_Z4(w.letters), w


def test_normal_closure_oracle_on_products():
    # trivial words are rare among reduced words; build some on purpose
    rng = random.Random(5)
    rels = [x**2, y**4, y**-4]
    for _ in range(300):
        w = Word()
        for _ in range(rng.randint(1, 3)):
            c = Word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 3))])
            w = w * c * rng.choice(rels) * c.inverse()
        assert fp_normal_form(w).is_identity()
        assert trivial_in_Z2_Z4(w.letters)
