import pytest
from hypothesis import given, strategies as st

from gtkit.fixtures import f2_structure, z_structure, z2_structure
from gtkit.presentation import (ContractViolation, Presentation, abelian_word_problem, abelianization,
                                area_oracle, dehn_bound, format_presentation, parse_presentation,
                                presentation_from_identity_words)
from gtkit.words import Alphabet, MalformedInput, cyclic_variants, exponent_vector, invert

P = Presentation.make


@pytest.mark.parametrize("pres, expect", [
    (P("ab", ["abAB"]), "Z^2"),
    (P("a", ["aa"]), "Z/2"),
    (P("abz", ["abABZ", "zaZA", "zbZB"]), "Z^2"),
    (P("ab", ["aa", "bb"]), "Z/2 + Z/2"),
])
def test_abelianization(pres, expect):
    assert str(abelianization(pres)) == expect


rel_words = st.lists(st.text(alphabet="aAbBc", min_size=1, max_size=6), min_size=1, max_size=4)


@given(rel_words, st.randoms(use_true_random=False))
def test_abelianization_invariance(rels, rnd):
    rels = [r for r in rels if P("abc", [r]).relators]
    base = abelianization(P("abc", rels))
    shuffled = list(rels)
    rnd.shuffle(shuffled)
    moved = [rnd.choice(cyclic_variants(r)) if rnd.random() < 0.5 else invert(r) for r in shuffled]
    assert abelianization(P("abc", moved)) == base


def test_make_drops_trivial_and_duplicates():
    p = P("ab", ["abAB", "aA", "abAB"])
    assert p.relators == ("abAB",)
    with pytest.raises(ValueError):
        Presentation(Alphabet(("a",)), ("",))


@pytest.mark.parametrize("w, area", [("abAB", 1), ("aabbAABB", 4), ("", 0), ("baBA", 1)])
def test_area_examples(w, area):
    assert area_oracle(P("ab", ["abAB"]), w) == area


def test_identity_word_presentations():
    z = z_structure()
    assert presentation_from_identity_words(z.alphabet, 1, z.identity_words_upto(4)).relators == ()
    f2 = f2_structure()
    assert presentation_from_identity_words(f2.alphabet, 1, f2.identity_words_upto(4)).relators == ()
    s = z2_structure()
    p = presentation_from_identity_words(s.alphabet, 2, s.identity_words_upto(6))
    assert "abAB" in p.relators
    assert str(abelianization(p)) == "Z^2"
    with pytest.raises(ContractViolation):
        presentation_from_identity_words(s.alphabet, 1, ["aabbAABB"])


def test_dehn_bound_on_z2():
    s = z2_structure()
    p = P("ab", ["abAB"])
    for w in s.identity_words_upto(6):
        a = area_oracle(p, w)
        assert a is not None and a <= dehn_bound(len(w), 4, 2)


@given(st.text(alphabet="aAbB", max_size=10))
def test_abelian_word_problem_is_exponent_sum(w):
    wp = abelian_word_problem(P("ab", ["abAB"]))
    assert wp(w) == (exponent_vector(w, Alphabet(("a", "b"))) == [0, 0])


def test_abelian_wp_torsion():
    wp = abelian_word_problem(P("xy", ["yy", "xyXY"]))
    assert wp("yy") and wp("YY") and not wp("y") and not wp("xy")


def test_text_roundtrip():
    p = P("ab", ["abAB"])
    assert parse_presentation(format_presentation(p)) == p
    with pytest.raises(MalformedInput):
        parse_presentation("presentation\ngens a\nrel ab\nend\n")
    with pytest.raises(MalformedInput):
        parse_presentation("presentation\nrel a\nend\n")
