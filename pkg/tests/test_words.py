import random

import pytest
from hypothesis import given, strategies as st

from twistedh1.words import (
    Presentation,
    PresentationSyntaxError,
    Word,
    commutator,
    parse_presentation,
    parse_word,
)

AB = {"a": 0, "b": 1}


def test_reduction_on_construction():
    w = Word([(0, 1), (1, 1), (1, -1), (0, 2)])
    assert w.letters == ((0, 3),)
    assert Word([(0, 1), (0, -1)]) == Word()
    assert Word([(0, 0), (1, 0)]) == Word()


def test_concat_reduces_across_the_seam():
    ab = Word([(0, 1), (1, 1)])
    b_inv_a = Word([(1, -1), (0, 1)])
    assert ab * b_inv_a == Word([(0, 2)])


def test_inverse():
    w = Word([(0, 1), (1, -2)])
    assert w.inverse().letters == ((1, 2), (0, -1))
    assert ~w == w.inverse()
    assert w * ~w == Word()
    assert ~Word() == Word()


def test_power():
    a = Word.letter(0)
    assert a ** 3 == Word([(0, 3)])
    assert a ** 0 == Word()
    assert (a ** -2) == Word([(0, -2)])
    w = Word([(0, 1), (1, 1)])
    assert w ** 2 == Word([(0, 1), (1, 1), (0, 1), (1, 1)])


def test_single_letters_and_exponent_sums():
    w = Word([(0, 2), (1, -1)])
    assert list(w.single_letters()) == [(0, 1), (0, 1), (1, -1)]
    assert w.exponent_sums(3) == [2, -1, 0]
    assert len(w) == 3


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), max_size=12))
def test_word_times_inverse_is_identity(letters):
    w = Word(letters)
    assert w * ~w == Word()
    assert ~w * w == Word()


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), max_size=10),
       st.integers(0, 4), st.data())
def test_reduction_is_insertion_invariant(letters, gen, data):
    w = Word(letters)
    expanded = list(w.letters)
    pos = data.draw(st.integers(0, len(expanded)))
    noisy = expanded[:pos] + [(gen, 2), (gen, -2)] + expanded[pos:]
    assert Word(noisy) == w


def test_parse_simple_words():
    assert parse_word("a b", AB) == Word([(0, 1), (1, 1)])
    assert parse_word("a^3 b^-2", AB) == Word([(0, 3), (1, -2)])
    assert parse_word("a^- b", AB) == Word([(0, -1), (1, 1)])
    assert parse_word("", AB) == Word()


def test_parse_commutator_sugar():
    assert parse_word("[a, b]", AB) == commutator(Word.letter(0), Word.letter(1))
    assert parse_word("[a,b]^2", AB) == commutator(Word.letter(0), Word.letter(1)) ** 2
    nested = parse_word("[[a,b], a]", AB)
    inner = commutator(Word.letter(0), Word.letter(1))
    assert nested == commutator(inner, Word.letter(0))
    assert parse_word("[a^2, b^-1]", AB) == commutator(Word([(0, 2)]), Word([(1, -1)]))


def test_parse_errors_carry_location():
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation("gens: a b\nrel: a c\n")
    assert err.value.line == 2
    assert err.value.column == 8
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a b\nrel: [a, b\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a b\nrel: ^2 a\n")  # exponent with no letter
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a b\nrel: a^0\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a a\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("rel: a\ngens: a\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\ngens: b\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\nrelator: a\n")


def test_parse_mapping_torus_text():
    text = """
# mapping torus of [[2,1],[1,1]]
gens: u v t
rel: [u, v]
rel: t u t^-1 u^-2 v^-1
rel: t v t^-1 u^-1 v^-1
"""
    p = parse_presentation(text)
    assert p.generators == ("u", "v", "t")
    assert len(p.relators) == 3
    assert p.relators[0] == commutator(Word.letter(0), Word.letter(1))
    assert p.relators[1] == Word([(2, 1), (0, 1), (2, -1), (0, -2), (1, -1)])


def test_comments_and_blank_lines():
    p = parse_presentation("gens: a  # one generator\n\n  rel: a^2 # torsion\n")
    assert p.generators == ("a",)
    assert p.relators == (Word([(0, 2)]),)


def test_round_trip_text():
    text = "gens: u v t\nrel: u v u^-1 v^-1\nrel: t u t^-1 u^-2 v^-1\n"
    p = parse_presentation(text)
    assert parse_presentation(p.to_text()) == p
    assert p.to_text() == text


def _random_presentation(rng: random.Random) -> Presentation:
    n = rng.randint(1, 4)
    names = tuple(f"g{i}" for i in range(n))
    relators = []
    for _ in range(rng.randint(0, 3)):
        letters = [(rng.randrange(n), rng.choice([-2, -1, 1, 2]))
                   for _ in range(rng.randint(1, 6))]
        relators.append(Word(letters))
    return Presentation(names, tuple(relators))


def test_round_trip_random_presentations():
    rng = random.Random(20240817)
    for _ in range(50):
        p = _random_presentation(rng)
        assert parse_presentation(p.to_text()) == p


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(("a", "a"))
    with pytest.raises(ValueError):
        Presentation(("1bad",))
    with pytest.raises(ValueError):
        Presentation(("a",), (Word([(1, 1)]),))
    p = Presentation(("a", "b"), (Word([(0, 1), (1, 1)]),))
    assert p.generator_index("b") == 1
    with pytest.raises(KeyError):
        p.generator_index("c")


def test_abelianized_exponent_matrix():
    from twistedh1.families import (
        heisenberg,
        mapping_torus_presentation,
        surface_presentation,
    )
    mt = mapping_torus_presentation(((2, 1), (1, 1)))
    assert mt.abelianized_exponent_matrix() == [[0, 0, 0], [-1, -1, 0], [-1, 0, 0]]
    assert surface_presentation(2).abelianized_exponent_matrix() == [[0, 0, 0, 0]]
    assert heisenberg().abelianized_exponent_matrix() == [
        [0, 0, -1], [0, 0, 0], [0, 0, 0]]
    assert Presentation(("a",), ()).abelianized_exponent_matrix() == []
