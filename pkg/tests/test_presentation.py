import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpgroups import (
    Alphabet,
    Presentation,
    PresentationSyntaxError,
    Word,
    cyclic_reduce,
    format_presentation,
    format_word,
    parse_presentation,
    parse_word,
)
from fpgroups.presentation import format_subgroup, parse_subgroup


def test_parse_G():
    p = parse_presentation("gens: x,y\nrels: x^2, y^4, (x*y)^8")
    assert p.alphabet.names == ("x", "y")
    assert [len(r) for r in p.relators] == [2, 4, 16]
    assert p.relators[2] == Word([1, 2] * 8)


def test_parse_free_group():
    p = parse_presentation("gens: a,b\nrels:")
    assert p.ngens == 2 and p.relators == ()


def test_error_column_at_caret():
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation("gens: x\nrels: x^")
    assert exc.value.line == 2
    assert exc.value.column == "rels: x^".index("^") + 1


def test_empty_relator_rejected():
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: x,y\nrels: x*x^-1")


def test_unknown_generator():
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: x\nrels: y")


def test_relators_cyclically_reduced():
    p = parse_presentation("gens: x,y\nrels: y*x^2*y^-1")
    assert p.relators == (Word([1, 1]),)


def test_nested_powers_and_negatives():
    al = Alphabet("xy")
    assert parse_word("((x*y)^2*y)^-1", al) == Word([1, 2, 1, 2, 2]).inverse()
    assert parse_word("x^0", al) == Word()


def test_subgroup_file():
    al = Alphabet("xy")
    gens = parse_subgroup("# comment\nsubgroup: x*y, y^2\n", al)
    assert gens == [Word([1, 2]), Word([2, 2])]
    assert parse_subgroup(format_subgroup(gens, al), al) == gens


def test_format_power():
    al = Alphabet("xy")
    assert format_word(Word([1, 2] * 8), al) == "(x*y)^8"
    assert format_word(Word([2, 2, 2, 2]), al) == "y^4"
    assert format_word(Word([1, -2, -2]), al) == "x*y^-2"


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=30).map(Word)


@given(st.lists(words, max_size=6))
def test_round_trip(ws):
    p = Presentation(Alphabet(["a", "b", "c"]), [w for w in ws if cyclic_reduce(w)])
    once = parse_presentation(format_presentation(p))
    twice = parse_presentation(format_presentation(once))
    assert once == twice
    assert once.relators == p.relators
