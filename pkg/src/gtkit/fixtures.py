"""Built-in automatic structures for small groups.

Each structure is produced from an explicit group model and a hand-written acceptor.
Multipliers come from a product construction tracking the word difference of the two
tracks, restricted to differences of length <= ``radius`` in the model.  Callers should
still run ``verify_structure`` on the result.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable

from .automatic import AutomaticStructure, pair_alphabet, split_pair
from .fsa import PAD, Fsa, from_function, minimize
from .presentation import Presentation
from .words import Alphabet, free_reduce, invert


@dataclass(frozen=True)
class GroupModel:
    identity: Hashable
    letter: Callable[[str], Hashable]
    mul: Callable[[Hashable, Hashable], Hashable]
    inv: Callable[[Hashable], Hashable]

    def evaluate(self, w: str):
        g = self.identity
        for x in w:
            g = self.mul(g, self.letter(x))
        return g


def free_abelian_model(alphabet: Alphabet) -> GroupModel:
    n = len(alphabet)
    idx = {x: i for i, x in enumerate(alphabet.letters)}

    def letter(x):
        v = [0] * n
        v[idx[x.lower()]] = 1 if x.islower() else -1
        return tuple(v)

    return GroupModel(tuple([0] * n), letter, lambda g, h: tuple(a + b for a, b in zip(g, h)),
                      lambda g: tuple(-a for a in g))


def free_group_model() -> GroupModel:
    return GroupModel("", lambda x: x, lambda g, h: free_reduce(g + h), invert)


def infinite_dihedral_model() -> GroupModel:
    """Elements are affine maps t -> s*t + c stored as (s, c); a: t -> -t, b: t -> 1 - t."""

    def mul(g, h):  # g after h
        return (g[0] * h[0], g[0] * h[1] + g[1])

    letters = {"a": (-1, 0), "A": (-1, 0), "b": (-1, 1), "B": (-1, 1)}
    return GroupModel((1, 0), letters.__getitem__, mul, lambda g: (g[0], -g[0] * g[1]))


def z_times_free_model(central: str = "c") -> GroupModel:
    def letter(x):
        if x.lower() == central:
            return (1 if x.islower() else -1, "")
        return (0, x)

    return GroupModel((0, ""), letter, lambda g, h: (g[0] + h[0], free_reduce(g[1] + h[1])),
                      lambda g: (-g[0], invert(g[1])))


def _model_ball(model: GroupModel, symbols, radius: int) -> set:
    seen = {model.identity}
    frontier = [model.identity]
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for x in symbols:
                h = model.mul(g, model.letter(x))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def build_multiplier(acceptor: Fsa, model: GroupModel, x: str, radius: int) -> Fsa:
    symbols = acceptor.alphabet
    near = _model_ball(model, symbols, radius)
    target = model.identity if x == PAD else model.letter(x)
    pairs = pair_alphabet(symbols)

    def delta(state, sym):
        pu, pv, d, eu, ev = state
        p, q = split_pair(sym)
        if (eu and p != PAD) or (ev and q != PAD):
            return None
        if p != PAD:
            pu = acceptor.step(pu, p)
            if pu is None:
                return None
            d = model.mul(model.inv(model.letter(p)), d)
        if q != PAD:
            pv = acceptor.step(pv, q)
            if pv is None:
                return None
            d = model.mul(d, model.letter(q))
        if d not in near:
            return None
        return (pu, pv, d, eu or p == PAD, ev or q == PAD)

    def accept(state):
        pu, pv, d, _, _ = state
        return pu in acceptor.accepting and pv in acceptor.accepting and d == target

    start = (acceptor.initial, acceptor.initial, model.identity, False, False)
    return minimize(from_function(pairs, start, delta, accept))


def build_structure(alphabet: Alphabet, acceptor: Fsa, model: GroupModel, radius: int = 3) -> AutomaticStructure:
    mults = {x: build_multiplier(acceptor, model, x, radius) for x in alphabet.symbols + (PAD,)}
    return AutomaticStructure(alphabet, acceptor, mults)


# --- acceptors -----------------------------------------------------------------

def _fsa(symbols, n, accepting, edges) -> Fsa:
    return Fsa(tuple(symbols), n, 0, frozenset(accepting), dict(edges))


def free_abelian_acceptor(alphabet: Alphabet) -> Fsa:
    """Words x1^e1 x2^e2 ... in generator order (shortlex normal forms of Z^n)."""
    syms = alphabet.symbols
    letters = alphabet.letters
    # state 0 = start; state 1+2i = reading letters[i], state 2+2i = reading its inverse
    trans = {}
    n = len(letters)
    for src in range(1 + 2 * n):
        pos = 0 if src == 0 else (src - 1) // 2 + 1  # first letter index allowed next
        if src:
            cur = (src - 1) // 2
            trans[(src, syms[2 * cur + (src - 1) % 2])] = src
        for j in range(pos, n):
            trans[(src, letters[j])] = 1 + 2 * j
            trans[(src, letters[j].upper())] = 2 + 2 * j
    return _fsa(syms, 1 + 2 * n, range(1 + 2 * n), trans)


def free_group_acceptor(alphabet: Alphabet) -> Fsa:
    syms = alphabet.symbols
    trans = {}
    for src in range(len(syms) + 1):
        last = syms[src - 1] if src else None
        for j, x in enumerate(syms):
            if last is not None and x == last.swapcase():
                continue
            trans[(src, x)] = j + 1
    return _fsa(syms, len(syms) + 1, range(len(syms) + 1), trans)


def infinite_dihedral_acceptor() -> Fsa:
    syms = Alphabet(("a", "b")).symbols
    trans = {(0, "a"): 1, (0, "b"): 2, (1, "b"): 2, (2, "a"): 1}
    return _fsa(syms, 3, {0, 1, 2}, trans)


def z_times_free_acceptor() -> Fsa:
    """Reduced words over a, b followed by c^n or C^n."""
    syms = Alphabet(("a", "b", "c")).symbols
    trans = {}
    free = ("a", "A", "b", "B")
    for src in range(5):
        last = free[src - 1] if src else None
        for j, x in enumerate(free):
            if last is not None and x == last.swapcase():
                continue
            trans[(src, x)] = j + 1
        trans[(src, "c")] = 5
        trans[(src, "C")] = 6
    trans[(5, "c")] = 5
    trans[(6, "C")] = 6
    return _fsa(syms, 7, range(7), trans)


# --- named fixtures ---------------------------------------------------------

def z_structure() -> AutomaticStructure:
    alph = Alphabet(("a",))
    return build_structure(alph, free_abelian_acceptor(alph), free_abelian_model(alph))


def z2_structure(letters: tuple[str, ...] = ("a", "b")) -> AutomaticStructure:
    alph = Alphabet(letters)
    return build_structure(alph, free_abelian_acceptor(alph), free_abelian_model(alph))


def f2_structure() -> AutomaticStructure:
    alph = Alphabet(("a", "b"))
    return build_structure(alph, free_group_acceptor(alph), free_group_model())


def dinf_structure() -> AutomaticStructure:
    return build_structure(Alphabet(("a", "b")), infinite_dihedral_acceptor(), infinite_dihedral_model())


def zxf2_structure() -> AutomaticStructure:
    return build_structure(Alphabet(("a", "b", "c")), z_times_free_acceptor(), z_times_free_model())


PRESENTATIONS = {
    "z": Presentation.make("a", []),
    "z2": Presentation.make("ab", ["abAB"]),
    "f2": Presentation.make("ab", []),
    "dinf": Presentation.make("ab", ["aa", "bb"]),
    "zxf2": Presentation.make("abc", ["acAC", "bcBC"]),
}

STRUCTURES = {
    "z": z_structure,
    "z2": z2_structure,
    "f2": f2_structure,
    "dinf": dinf_structure,
    "zxf2": zxf2_structure,
}
