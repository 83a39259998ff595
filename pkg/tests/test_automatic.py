import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import ELEMENT, bfs_lengths, brute_force_fellow_traveller
from gtkit.automatic import (AutomaticStructure, fellow_traveller_constant, format_automatic,
                             parse_automatic, verify_structure, word_differences)
from gtkit.fixtures import PRESENTATIONS, STRUCTURES, z2_structure
from gtkit.fsa import accepts
from gtkit.presentation import Presentation
from gtkit.words import MalformedInput

SYMBOLS = {"z": "aA", "z2": "aAbB", "f2": "aAbB", "dinf": "aAbB", "zxf2": "aAbBcC"}


@pytest.fixture(scope="module")
def structures():
    return {name: make() for name, make in STRUCTURES.items()}


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_normal_forms_agree_with_model(structures, name):
    s = structures[name]
    elem = ELEMENT[name]
    seen = {}
    for n in range(5):
        for t in itertools.product(SYMBOLS[name], repeat=n):
            w = "".join(t)
            nf = s.normal_form(w)
            assert accepts(s.acceptor, nf)
            assert elem(nf) == elem(w)
            seen.setdefault(elem(w), nf)
            assert seen[elem(w)] == nf


@pytest.mark.parametrize("name", sorted(STRUCTURES))
@given(data=st.data())
def test_word_problem_random(structures, name, data):
    s = structures[name]
    w = data.draw(st.text(alphabet=SYMBOLS[name], max_size=14))
    assert s.is_trivial(w) == (ELEMENT[name](w) == ELEMENT[name](""))


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_fixtures_verify(structures, name):
    rep = verify_structure(structures[name], PRESENTATIONS[name])
    assert rep.ok, rep.lines()


def test_wrong_presentation_fails_check_c():
    s = z2_structure()
    rep = verify_structure(s, Presentation.make("ab", ["abAB", "aa"]))
    assert not rep.ok
    assert any(name.startswith("(c)") and not ok for name, ok, _ in rep.items)


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_fellow_traveller_constant_bounds_brute_force(structures, name):
    s = structures[name]
    assert brute_force_fellow_traveller(s, ELEMENT[name]) <= fellow_traveller_constant(s)


@pytest.mark.parametrize("name, k", [("z2", 2), ("f2", 1)])
def test_fellow_traveller_constant_minimal(structures, name, k):
    s = structures[name]
    assert fellow_traveller_constant(s) == k == brute_force_fellow_traveller(s, ELEMENT[name])


def test_word_differences_labels(structures):
    s = structures["z2"]
    labels = word_differences(s, "a")
    assert "" in labels.values()
    for d in labels.values():
        assert len(s.geodesic(d)) <= 2


def test_identity_words_z2(structures):
    got = structures["z2"].identity_words_upto(4)
    assert got == ["abAB", "aBAb", "AbaB", "ABab", "baBA", "bABa", "BabA", "BAba"]
    assert all(ELEMENT["z2"](w) == (0, 0) for w in got)


@pytest.mark.parametrize("name, r", [("z2", 2), ("f2", 2), ("z", 3), ("dinf", 3), ("zxf2", 2)])
def test_balls_and_lengths(structures, name, r):
    s = structures[name]
    ref = bfs_lengths(s.symbols, ELEMENT[name], r)
    ball = s.ball(r)
    assert len(ball) == len(ref)
    for g in ball:
        assert s.length(g) == ref[ELEMENT[name](g)]


def test_ball_sizes(structures):
    assert len(structures["z2"].ball(2)) == 13
    assert len(structures["f2"].ball(2)) == 17


def test_format_roundtrip(structures):
    for s in structures.values():
        t = parse_automatic(format_automatic(s))
        assert format_automatic(t) == format_automatic(s)


def test_malformed_structures():
    s = z2_structure()
    with pytest.raises(MalformedInput):
        AutomaticStructure(s.alphabet, s.acceptor, {k: v for k, v in s.multipliers.items() if k != "a"})
    with pytest.raises(MalformedInput):
        parse_automatic("automatic\ngens a\nend\n")
