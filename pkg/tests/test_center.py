import pytest

from oracles import ELEMENT
from gtkit.center import (center_generators, center_language, center_presentation, center_type,
                          centralizer_automaton, quotient_by_center, relator_length_bound, structure_constant)
from gtkit.fixtures import PRESENTATIONS, STRUCTURES, z2_structure
from gtkit.fsa import enumerate_words, intersect
from gtkit.presentation import ContractViolation, abelianization


@pytest.fixture(scope="module")
def structures():
    return {name: make() for name, make in STRUCTURES.items()}


@pytest.mark.parametrize("name, expect", [("z", "Z"), ("z2", "Z^2"), ("f2", "0"), ("dinf", "0"), ("zxf2", "Z")])
def test_center_types(structures, name, expect):
    assert str(center_type(structures[name])) == expect


def test_permuted_generators_same_center():
    assert str(center_type(z2_structure(("b", "a")))) == "Z^2"


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_center_language_is_central(structures, name):
    s = structures[name]
    elem = ELEMENT[name]
    for w in enumerate_words(center_language(s), 5):
        for x in s.symbols:
            assert elem(w + x) == elem(x + w)


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_center_language_is_complete(structures, name):
    # every accepted word of length <= 4 commuting with all generators is in the centre language
    s = structures[name]
    elem = ELEMENT[name]
    central = {w for w in enumerate_words(s.acceptor, 4) if all(elem(w + x) == elem(x + w) for x in s.symbols)}
    assert central == set(enumerate_words(center_language(s), 4))


def test_centralizer_machines(structures):
    f2 = structures["f2"]
    m = centralizer_automaton(f2, "a")
    assert enumerate_words(intersect(m.fsa, f2.acceptor), 3) == ["", "a", "A", "aa", "AA", "aaa", "AAA"]
    dinf = structures["dinf"]
    d = centralizer_automaton(dinf, "a")
    assert enumerate_words(intersect(d.fsa, dinf.acceptor), 4) == ["", "a"]


def test_contract_violation_below_constant(structures):
    s = structures["z2"]
    assert structure_constant(s) == 2
    with pytest.raises(ContractViolation):
        centralizer_automaton(s, "a", 1)


def test_relator_length_bound():
    assert relator_length_bound(1, 1) == 2 * 3 + 2 * (2 + 3)
    assert relator_length_bound(2, 2) == 38


def test_center_report(structures):
    rep = center_presentation(structures["zxf2"])
    assert rep.basis == ("c",)
    assert "type: Z" in rep.lines()
    assert center_generators(structures["f2"]) == []


def test_quotient_by_center(structures):
    rep = center_presentation(structures["zxf2"])
    q = quotient_by_center(PRESENTATIONS["zxf2"], rep.basis)
    assert str(abelianization(q)) == "Z^2"
