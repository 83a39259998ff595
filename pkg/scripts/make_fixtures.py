"""Write the fixture files under fixtures/ (automatic structures, presentations,
complexes, automata).  Output is deterministic; rerunning overwrites identical bytes."""

from __future__ import annotations

import sys
from pathlib import Path

from gtkit.automatic import format_automatic
from gtkit.fixtures import PRESENTATIONS, STRUCTURES, build_structure, free_abelian_acceptor, free_abelian_model
from gtkit.fsa import Fsa, format_fsa
from gtkit.presentation import Presentation, format_presentation
from gtkit.words import Alphabet

COMPLEXES = {
    "point": """complex
cell v dim 0
end
""",
    "wedge": """complex
cell v dim 0
cell a dim 1
cell b dim 1
end
""",
    "torus": """complex
cell v dim 0
cell a dim 1
cell b dim 1
cell f dim 2
attach a b -a -b
end
""",
    "rp2": """complex
cell v dim 0
cell a dim 1
cell f dim 2
attach a a
end
""",
    # S^2: one vertex and one 2-cell on the empty loop
    "sphere": """complex
cell v dim 0
cell f dim 2
attach
end
""",
}

EXTRA_PRESENTATIONS = {
    "z2xy": Presentation.make("xy", ["xyXY"]),
    "zdouble": Presentation.make("ab", ["aB"]),
    "c2": Presentation.make("a", ["aa"]),
    "c3": Presentation.make("a", ["aaa"]),
    "zc2": Presentation.make("xy", ["yy", "xyXY"]),
    "z3abz": Presentation.make("abz", ["abAB", "zaZA", "zbZB"]),
    "z3abc": Presentation.make("abc", ["abAB", "acAC", "bcBC"]),
    "heis1": Presentation.make("abz", ["abABZ", "zaZA", "zbZB"]),
    "heis2": Presentation.make("abz", ["abABZZ", "zaZA", "zbZB"]),
}


def zrat() -> Fsa:
    # x^n, x^n y, X^n, X^n y, y: normal forms for Z x C2
    trans = {(0, "x"): 1, (1, "x"): 1, (0, "X"): 2, (2, "X"): 2, (0, "y"): 3, (1, "y"): 3, (2, "y"): 3}
    return Fsa(("x", "X", "y", "Y"), 4, 0, frozenset({0, 1, 2, 3}), trans)


def ab_star() -> Fsa:
    return Fsa(("a", "b"), 2, 0, frozenset({0, 1}), {(0, "a"): 0, (0, "b"): 1, (1, "b"): 1})


def free_star() -> Fsa:
    return Fsa(("a", "b"), 1, 0, frozenset({0}), {(0, "a"): 0, (0, "b"): 0})


def main(out: str = "fixtures") -> None:
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    for name, make in STRUCTURES.items():
        (d / f"{name}.aut").write_text(format_automatic(make()))
    for letters in ("abz", "abc"):
        al = Alphabet(tuple(letters))
        s = build_structure(al, free_abelian_acceptor(al), free_abelian_model(al))
        (d / f"z3{letters}.aut").write_text(format_automatic(s))
    for name, p in {**PRESENTATIONS, **EXTRA_PRESENTATIONS}.items():
        (d / f"{name}.pres").write_text(format_presentation(p))
    for name, text in COMPLEXES.items():
        (d / f"{name}.cw").write_text(text)
    for name, m in (("zrat", zrat()), ("ab", ab_star()), ("abfree", free_star())):
        (d / f"{name}.fsa").write_text(format_fsa(m))


if __name__ == "__main__":
    main(*sys.argv[1:])
