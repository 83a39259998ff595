"""Finite presentations, abelianization and a budgeted area search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .abelian import AbelianType, IntMatrix, classify, lattice_basis, solve_in_lattice
from .words import (Alphabet, MalformedInput, commutator, cyclic_variants, exponent_vector,
                    format_word, free_reduce, parse_word)


class ContractViolation(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[str, ...]

    def __post_init__(self):
        rels = []
        for r in self.relators:
            self.alphabet.check(r)
            r = free_reduce(r)
            if not r:
                raise MalformedInput("empty relator")
            rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def make(cls, alphabet: Alphabet | str | Sequence[str], relators: Iterable[str]) -> "Presentation":
        """Build a presentation, silently dropping freely trivial and repeated relators."""
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        seen: list[str] = []
        for r in relators:
            r = free_reduce(alphabet.check(r))
            if r and r not in seen:
                seen.append(r)
        return cls(alphabet, tuple(seen))

    @property
    def gens(self) -> tuple[str, ...]:
        return self.alphabet.letters

    def exponent_matrix(self) -> IntMatrix:
        rows = [exponent_vector(r, self.alphabet) for r in self.relators]
        return IntMatrix.from_rows(rows, cols=len(self.alphabet))

    def __str__(self):
        rels = ", ".join(self.relators)
        return f"< {' '.join(self.gens)} | {rels} >" if rels else f"< {' '.join(self.gens)} | >"


def abelianization(p: Presentation) -> AbelianType:
    return classify(p.exponent_matrix(), cols=len(p.alphabet))


def presentation_from_identity_words(alph: Alphabet, k: int, id_words: Iterable[str]) -> Presentation:
    cap = 2 * (k + 1)
    words = list(id_words)
    for w in words:
        if len(w) > cap:
            raise ContractViolation(f"identity word {w!r} longer than 2(k+1) = {cap}")
    return Presentation.make(alph, words)


def area_oracle(p: Presentation, w: str, budget: int = 200_000) -> int | None:
    """Least number of relator insertions (cyclic variants of r or r^-1) turning w into 1.

    Bidirectional breadth-first search over freely reduced words whose length stays within
    |w| + max relator length.  Returns None when more than ``budget`` words get visited.
    Each insertion multiplies by one conjugate of a relator, so the value bounds the area
    from above; on small examples it is the area.
    """
    w = free_reduce(p.alphabet.check(w))
    if not w:
        return 0
    variants: list[str] = []
    for r in p.relators:
        for v in cyclic_variants(r):
            if v not in variants:
                variants.append(v)
    if not variants:
        return None
    cap = len(w) + max(len(v) for v in variants)

    def moves(u: str) -> Iterator[str]:
        for i in range(len(u) + 1):
            for v in variants:
                x = free_reduce(u[:i] + v + u[i:])
                if len(x) <= cap:
                    yield x

    dist = [{w: 0}, {"": 0}]
    frontier = [[w], [""]]
    visited = 2
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = dist[side], dist[1 - side]
        nxt = []
        best = None
        for u in frontier[side]:
            for x in moves(u):
                if x in mine:
                    continue
                mine[x] = mine[u] + 1
                if x in other:
                    tot = mine[x] + other[x]
                    best = tot if best is None else min(best, tot)
                nxt.append(x)
                visited += 1
                if visited > budget:
                    return best
        if best is not None:
            return best
        frontier[side] = nxt
    return None


def dehn_bound(w_len: int, n_symbols: int, k: int) -> int:
    """|w| (|A|+1)^{k|w|}, with |A| the size of the doubled alphabet."""
    return w_len * (n_symbols + 1) ** (k * w_len)


def abelian_word_problem(p: Presentation) -> Callable[[str], bool]:
    """Word problem for a presentation of an abelian group; True means trivial.

    Raises ContractViolation unless every generator commutator is certified trivial.
    """
    gens = p.gens
    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            c = commutator(x, y)
            if c not in p.relators and area_oracle(p, c, budget=20_000) is None:
                raise ContractViolation(f"cannot certify that {x} and {y} commute")
    n = len(gens)
    basis = lattice_basis([exponent_vector(r, p.alphabet) for r in p.relators], n)

    def wp(w: str) -> bool:
        return solve_in_lattice(basis, exponent_vector(w, p.alphabet)) is not None

    return wp


# --- text format -------------------------------------------------------------

def parse_presentation_lines(lines: Iterator[str]) -> Presentation:
    gens: tuple[str, ...] | None = None
    rels: list[str] = []
    started = False
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not started:
            if toks[0] != "presentation":
                raise MalformedInput(f"expected 'presentation', got {line!r}")
            started = True
            continue
        if toks[0] == "gens":
            gens = tuple(toks[1:])
        elif toks[0] == "rel":
            if len(toks) != 2:
                raise MalformedInput(f"bad relator line {line!r}")
            rels.append(toks[1])
        elif toks[0] == "end":
            break
        else:
            raise MalformedInput(f"unknown presentation directive {toks[0]!r}")
    else:
        raise MalformedInput("presentation block missing 'end'")
    if gens is None:
        raise MalformedInput("presentation block needs 'gens'")
    alph = Alphabet(gens)
    words = [parse_word(r, alph) for r in rels]
    if any(not free_reduce(r) for r in words):
        raise MalformedInput("empty relator")
    return Presentation(alph, tuple(words))


def parse_presentation(text: str) -> Presentation:
    return parse_presentation_lines(iter(text.splitlines()))


def format_presentation(p: Presentation) -> str:
    lines = ["presentation", "gens " + " ".join(p.gens)]
    lines += [f"rel {format_word(r)}" for r in p.relators]
    lines.append("end")
    return "\n".join(lines) + "\n"
