from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import ELEMENT, NORM, bfs_lengths
from gtkit.fixtures import STRUCTURES
from gtkit.translation import conjugation_drift, subadditivity_violations, translation_estimate
from gtkit.words import power

SYMBOLS = {"z": "aA", "z2": "aAbB", "f2": "aAbB", "dinf": "aAbB", "zxf2": "aAbBcC"}


@pytest.fixture(scope="module")
def structures():
    return {name: make() for name, make in STRUCTURES.items()}


@pytest.mark.parametrize("name, g, tau", [
    ("z2", "a", 1), ("z2", "ab", 2), ("z2", "", 0), ("z2", "aB", 2),
    ("f2", "a", 1), ("f2", "ab", 2), ("dinf", "ab", 2), ("dinf", "a", 0), ("zxf2", "ac", 2),
])
def test_examples(structures, name, g, tau):
    est = translation_estimate(structures[name], g, 4)
    assert est.inf_bound == Fraction(tau)


def test_z2_a_bounds_all_one(structures):
    est = translation_estimate(structures["z2"], "a", 4)
    assert est.upper_bounds == (1, 1, 1, 1)
    assert est.lines()[-1] == "tau upper bound: 1"
    with pytest.raises(ValueError):
        translation_estimate(structures["z2"], "a", 0)


@settings(max_examples=40)
@given(st.sampled_from(sorted(SYMBOLS)), st.data())
def test_distances_match_bfs_and_are_subadditive(structures, name, data):
    s = structures[name]
    g = data.draw(st.text(alphabet=SYMBOLS[name], max_size=3))
    est = translation_estimate(s, g, 4)
    assert list(est.distances) == [NORM[name](power(g, m)) for m in range(1, 5)]
    assert subadditivity_violations(est) == []
    assert est.inf_bound == min(Fraction(d, m) for m, d in enumerate(est.distances, start=1))


@pytest.mark.parametrize("name", sorted(SYMBOLS))
def test_closed_form_norm_matches_bfs(name):
    ref = bfs_lengths(SYMBOLS[name], ELEMENT[name], 4)
    for n in range(5):
        for w in map("".join, product(SYMBOLS[name], repeat=n)):
            assert ref[ELEMENT[name](w)] == NORM[name](w)


@settings(max_examples=30)
@given(st.sampled_from(["z2", "f2", "zxf2"]), st.data())
def test_conjugation_moves_distance_by_at_most_twice_conjugator(structures, name, data):
    s = structures[name]
    g = data.draw(st.text(alphabet=SYMBOLS[name], max_size=3))
    x = s.geodesic(data.draw(st.text(alphabet=SYMBOLS[name], max_size=2)))
    assert all(d <= 2 * len(x) for d in conjugation_drift(s, g, x, 3))
