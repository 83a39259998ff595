from itertools import islice

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES
from gtkit.abelian import AbelianType, abelian_types
from gtkit.cellcomplex import parse_complex
from gtkit.center import center_presentation
from gtkit.fixtures import z2_structure, zxf2_structure
from gtkit.isopipeline import (CenterData, Exhausted, Isomorphic, IsoSearch, MissingInput, NotIsomorphic,
                               SearchBudget, abelian_presentation, default_wp, diagonal_identify,
                               enumerate_homomorphisms, find_isomorphism, is_inverse_pair, substitute,
                               theoremA_compare)
from gtkit.presentation import Presentation, parse_presentation
from gtkit.words import Alphabet

P = Presentation.make
Z2 = P("ab", ["abAB"])
Z2XY = P("xy", ["xyXY"])
TORUS = parse_complex("complex\ncell v dim 0\ncell a dim 1\ncell b dim 1\ncell f dim 2\nattach a b -a -b\nend\n")


def test_substitute():
    assert substitute("aB", {"a": "xy", "b": "y"}) == "x"
    assert substitute("", {"a": "x"}) == ""


def test_c2_to_c3_only_trivial():
    c2, c3 = P("a", ["aa"]), P("a", ["aaa"])
    out = list(enumerate_homomorphisms(c2, c3, default_wp(c3), SearchBudget(word_length=2)))
    assert [h.mapping for h in out[:-1]] == [{"a": ""}]
    assert isinstance(out[-1], Exhausted)


def test_c2_c3_search_never_claims_non_isomorphism():
    c2, c3 = P("a", ["aa"]), P("a", ["aaa"])
    assert isinstance(find_isomorphism(c2, c3, default_wp(c2), default_wp(c3)), Exhausted)


def test_renamed_z2_within_budget():
    res = find_isomorphism(Z2, Z2XY, default_wp(Z2), default_wp(Z2XY), SearchBudget(steps=10_000))
    assert not isinstance(res, Exhausted)
    f, g = res
    assert is_inverse_pair(Z2, Z2XY, f, g, default_wp(Z2), default_wp(Z2XY))


def test_tietze_redundant_z():
    z, zz = P("a", []), P("ab", ["aB"])
    res = find_isomorphism(zz, z, default_wp(zz), default_wp(z), SearchBudget(steps=1_000))
    assert not isinstance(res, Exhausted)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["Z^2", "Z + Z/2", "Z/2 + Z/2", "Z/6"]), st.permutations("pqrs"))
def test_renaming_gives_isomorphism(t, letters):
    A = AbelianType.parse(t)
    p = abelian_presentation(A)
    q = abelian_presentation(A, "".join(letters))
    res = find_isomorphism(p, q, default_wp(p), default_wp(q), SearchBudget(steps=10_000))
    assert not isinstance(res, Exhausted)
    assert is_inverse_pair(p, q, *res, default_wp(p), default_wp(q))


def test_resumable_search_matches_one_shot():
    one = IsoSearch(Z2, Z2XY, default_wp(Z2), default_wp(Z2XY))
    res_one = one.advance(10_000)
    many = IsoSearch(Z2, Z2XY, default_wp(Z2), default_wp(Z2XY))
    res = None
    while res is None:
        res = many.advance(7)
    assert res == res_one and many.steps == one.steps


@pytest.mark.parametrize("pres, index", [(P("a", []), 1), (Z2, 3), (P("a", ["a"]), 0)])
def test_diagonal_identify_abelian_list(pres, index):
    cands = (abelian_presentation(t) for t in abelian_types())
    assert diagonal_identify(pres, cands, default_wp(pres)) == index


def test_diagonal_identify_center_of_z2():
    pres = center_presentation(z2_structure()).presentation
    types = list(islice(abelian_types(), 8))
    j = diagonal_identify(pres, (abelian_presentation(t) for t in types), default_wp(pres))
    assert str(types[j]) == "Z^2"


def test_diagonal_identify_exhausts_finite_list():
    c3 = P("a", ["aaa"])
    res = diagonal_identify(c3, [P("a", ["aa"])], default_wp(c3), SearchBudget(steps=50))
    assert isinstance(res, Exhausted)


def _pres(name):
    return parse_presentation((FIXTURES / f"{name}.pres").read_text())


def test_compare_z3_isomorphic():
    p1, p2 = _pres("z3abz"), _pres("z3abc")
    Z = AbelianType.parse("Z")
    res = theoremA_compare(p1, p2, CenterData(AbelianType.parse("Z^3"), ("a", "b", "z")),
                           CenterData(AbelianType.parse("Z^3"), ("a", "b", "c")),
                           q_complex=TORUS, coeff=Z)
    assert isinstance(res, Isomorphic)
    f, g = res.witness
    assert is_inverse_pair(p1, p2, f, g, default_wp(p1), default_wp(p2))


def test_compare_heisenberg_classes_differ():
    Zc = CenterData(AbelianType.parse("Z"), ("z",))
    res = theoremA_compare(_pres("heis1"), _pres("heis2"), Zc, Zc, q_complex=TORUS, coeff=AbelianType.parse("Z"))
    assert isinstance(res, NotIsomorphic)
    assert "Z^2 vs Z^2 + Z/2" in res.reason


def test_compare_center_mismatch():
    res = theoremA_compare(_pres("zxf2"), _pres("z2"), zxf2_structure(), z2_structure())
    assert isinstance(res, NotIsomorphic)
    assert res.reason == "center mismatch: Z vs Z^2"


def test_compare_missing_inputs():
    with pytest.raises(MissingInput):
        theoremA_compare(Z2, Z2, None, z2_structure())
    with pytest.raises(MissingInput):
        theoremA_compare(Z2, Z2, z2_structure(), z2_structure())


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(steps=0)
