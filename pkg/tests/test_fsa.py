import itertools
import re

import pytest
from hypothesis import given, strategies as st

from gtkit.fsa import (BasicLanguage, Fsa, NotPolynomial, accepts, complement, count_upto, decompose_basic,
                       determinize, empty_language, enumerate_words, equivalent, finite_language, format_fsa,
                       growth_degree, intersect, is_empty, minimize, parse_fsa, torsion_candidates, trim, union,
                       universal)
from gtkit.presentation import Presentation, abelian_word_problem
from gtkit.words import MalformedInput

AB = ("a", "b")


def all_words(alph, n):
    for k in range(n + 1):
        for t in itertools.product(alph, repeat=k):
            yield "".join(t)


def a_star_b_star():
    return Fsa(AB, 2, 0, {0, 1}, {(0, "a"): 0, (0, "b"): 1, (1, "b"): 1})


def free_star():
    return Fsa(AB, 1, 0, {0}, {(0, "a"): 0, (0, "b"): 0})


def zrat():
    trans = {(0, "x"): 1, (1, "x"): 1, (0, "X"): 2, (2, "X"): 2, (0, "y"): 3, (1, "y"): 3, (2, "y"): 3}
    return Fsa(("x", "X", "y", "Y"), 4, 0, {0, 1, 2, 3}, trans)


@st.composite
def dfas(draw):
    n = draw(st.integers(1, 4))
    trans = {}
    for q in range(n):
        for x in AB:
            t = draw(st.integers(-1, n - 1))
            if t >= 0:
                trans[(q, x)] = t
    acc = draw(st.sets(st.integers(0, n - 1)))
    return Fsa(AB, n, 0, acc, trans)


def lang(m, n=6):
    return {w for w in all_words(AB, n) if accepts(m, w)}


def test_regex_oracle_a_star_b_star():
    m = a_star_b_star()
    for w in all_words(AB, 7):
        assert accepts(m, w) == bool(re.fullmatch("a*b*", w))


@given(dfas(), dfas())
def test_boolean_operations(m1, m2):
    L1, L2 = lang(m1), lang(m2)
    assert lang(intersect(m1, m2)) == L1 & L2
    assert lang(union(m1, m2)) == L1 | L2
    assert lang(complement(m1)) == set(all_words(AB, 6)) - L1


@given(dfas())
def test_minimize_and_trim_preserve_language(m):
    mm = minimize(m)
    assert lang(mm) == lang(m)
    assert mm.nstates <= max(m.nstates, 1) + 1
    assert lang(trim(m)) == lang(m)
    assert equivalent(m, mm)
    assert is_empty(m) == (not lang(m, 8))


@given(dfas())
def test_count_upto_matches_brute_force(m):
    counts = count_upto(m, 6)
    for n in range(7):
        assert counts[n] == sum(1 for w in all_words(AB, n) if accepts(m, w))


def test_enumerate_words_shortlex():
    assert enumerate_words(a_star_b_star(), 2) == ["", "a", "b", "aa", "ab", "bb"]


def test_finite_universal_empty():
    m = finite_language(AB, ["ab", "b"])
    assert lang(m) == {"ab", "b"}
    assert lang(universal(AB), 3) == set(all_words(AB, 3))
    assert is_empty(empty_language(AB))


def test_determinize_subset_construction():
    # NFA for words ending in "ab"
    def delta(q, x):
        out = set()
        if q == 0:
            out.add(0)
            if x == "a":
                out.add(1)
        if q == 1 and x == "b":
            out.add(2)
        return out

    d = determinize(AB, [0], delta, lambda q: q == 2)
    for w in all_words(AB, 6):
        assert accepts(d, w) == w.endswith("ab")


def test_growth_examples():
    assert str(growth_degree(a_star_b_star())) == "polynomial degree 2"
    assert str(growth_degree(free_star())) == "exponential"
    assert str(growth_degree(zrat())) == "polynomial degree 1"
    assert str(growth_degree(finite_language(AB, ["a", "ab"]))) == "polynomial degree 0"


def test_finite_difference_polynomial_check():
    # cumulative counts of a language of growth degree d are eventually a polynomial of degree d
    for m, d in ((a_star_b_star(), 2), (zrat(), 1)):
        c = count_upto(m, 12)
        diffs = c
        for _ in range(d):
            diffs = [y - x for x, y in zip(diffs, diffs[1:])]
        tail = diffs[d + 2:]
        assert len(set(tail)) == 1 and tail[0] > 0


def test_decomposition_covers_language():
    m = zrat()
    dec = decompose_basic(m)
    assert [str(b) for b in dec] == ["1", "x (x)*", "x (x)* y", "X (X)*", "X (X)* y", "y"]
    got = set()
    for b in dec:
        got |= {"".join(w) for w in b.words_upto(6)}
    assert got == {w for w in enumerate_words(m, 6)}


def test_decomposition_rejects_exponential():
    with pytest.raises(NotPolynomial):
        decompose_basic(free_star())


def test_torsion_candidates():
    wp = abelian_word_problem(Presentation.make("xy", ["yy", "xyXY"]))
    assert torsion_candidates(decompose_basic(zrat()), wp, 12) == ["y"]


def test_basic_language_validation():
    with pytest.raises(ValueError):
        BasicLanguage(("a",), ("b",))


def test_format_roundtrip():
    m = zrat()
    assert parse_fsa(format_fsa(m)) == m
    with pytest.raises(MalformedInput):
        parse_fsa("fsa\nalphabet a\nstates 1\ninitial 3\nend\n")
