"""Centre of an automatic group: centralizer machines, centre language, presentation."""

from __future__ import annotations

import string
from dataclasses import dataclass

from .abelian import AbelianType
from .automatic import AutomaticStructure, fellow_traveller_constant
from .fsa import Fsa, complement, enumerate_words, finite_language, intersect, minimize
from .presentation import ContractViolation, Presentation, abelianization
from .words import Alphabet, commutator, free_reduce, invert, power


@dataclass(frozen=True)
class CentralizerMachine:
    fsa: Fsa
    generator: str
    k: int
    state_labels: tuple[str, ...]  # normal form carried by each state


def structure_constant(s: AutomaticStructure) -> int:
    k = s._cache.get("ftc")
    if k is None:
        k = fellow_traveller_constant(s)
        s._cache["ftc"] = k
    return k


def centralizer_automaton(s: AutomaticStructure, a: str, k: int | None = None) -> CentralizerMachine:
    """Reading w tracks w^-1 a w inside the ball of radius k; leaving the ball kills the run."""
    k0 = structure_constant(s)
    if k is None:
        k = k0
    if k < k0:
        raise ContractViolation(f"k={k} is below the fellow-traveller constant {k0}")
    ball = sorted(s.ball(k), key=s.alphabet.key)
    index = {g: i for i, g in enumerate(ball)}
    start = s.normal_form(a)
    if start not in index:
        raise ContractViolation(f"generator {a!r} lies outside the ball of radius {k}")
    trans = {}
    for g in ball:
        for b in s.symbols:
            h = s.normal_form(invert(b) + g + b)
            if h in index:
                trans[(index[g], b)] = index[h]
    # renumber so that the start state is 0
    order = [start] + [g for g in ball if g != start]
    ren = {index[g]: i for i, g in enumerate(order)}
    trans = {(ren[p], x): ren[q] for (p, x), q in trans.items()}
    m = Fsa(s.symbols, len(order), 0, frozenset({0}), trans)
    return CentralizerMachine(m, a, k, tuple(order))


def _commutes_with_generators(s: AutomaticStructure, w: str) -> bool:
    return all(s.is_trivial(commutator(w, x)) for x in s.alphabet.letters)


def center_language(s: AutomaticStructure, k: int | None = None) -> Fsa:
    k = structure_constant(s) if k is None else k
    lang = s.acceptor
    for a in s.alphabet.letters:
        lang = intersect(lang, centralizer_automaton(s, a, k).fsa)
    # settle the short window exactly
    bad = [w for w in enumerate_words(lang, 2 * k + 1) if not _commutes_with_generators(s, w)]
    if bad:
        lang = intersect(lang, complement(finite_language(s.symbols, bad)))
    return minimize(lang)


def center_generators(s: AutomaticStructure, k: int | None = None) -> list[str]:
    """Nonempty centre-language words of length <= 2k+1, shortlex order.

    Commutation is certified by the word problem on the commutator, a word of length
    at most 4k+4.
    """
    k = structure_constant(s) if k is None else k
    lang = center_language(s, k)
    return [w for w in enumerate_words(lang, 2 * k + 1) if w and _commutes_with_generators(s, w)]


def relator_length_bound(k: int, K: int) -> int:
    return 2 * (2 * k + 1) + 2 * (2 * K + K * (2 * k + 1))


@dataclass(frozen=True)
class CenterReport:
    generators: tuple[str, ...]
    basis: tuple[str, ...]
    presentation: Presentation
    type: AbelianType
    k: int
    K: int
    letters: dict  # abstract letter -> centre word it names

    def lines(self) -> list[str]:
        out = [f"fellow-traveller constant k = {self.k}", f"quasiconvexity constant K = {self.K}",
               f"relator length bound = {relator_length_bound(self.k, self.K)}",
               f"centre generators ({len(self.generators)}): " + (" ".join(self.generators) or "none"),
               "basis: " + (" ".join(f"{x}={w}" for x, w in self.letters.items()) or "none"),
               "presentation: " + str(self.presentation), f"type: {self.type}"]
        return out


def _span(s: AutomaticStructure, basis: list[str], bound: int) -> dict[str, tuple[int, ...]]:
    """Normal forms of products prod b_i^{e_i} with sum |e_i| |b_i| <= bound."""
    n = len(basis)
    zero = (0,) * n
    found = {"": zero}
    frontier = [("", zero, 0)]
    while frontier:
        nxt = []
        for g, e, cost in frontier:
            for i, b in enumerate(basis):
                if cost + len(b) > bound:
                    continue
                for sign in (1, -1):
                    if e[i] * sign < 0:
                        continue  # keep exponents of one sign per coordinate
                    h = s.normal_form(g + (b if sign > 0 else invert(b)))
                    if h in found:
                        continue
                    f = list(e)
                    f[i] += sign
                    found[h] = tuple(f)
                    nxt.append((h, tuple(f), cost + len(b)))
        frontier = nxt
    return found


def _letters(n: int) -> list[str]:
    if n > 26:
        raise ValueError("centre basis larger than 26 generators")
    return list(string.ascii_lowercase[:n])


def center_presentation(s: AutomaticStructure, K: int | None = None, k: int | None = None) -> CenterReport:
    """Presentation of the centre on a Tietze-reduced subset of the centre generators.

    A generator is dropped when it equals a product of earlier basis elements of
    weighted length within the bound; otherwise it joins the basis, together with a
    torsion relation g^n = product when such an n exists within the bound.
    """
    k = structure_constant(s) if k is None else k
    K = k if K is None else K
    bound = relator_length_bound(k, K)
    gens = center_generators(s, k)
    basis: list[str] = []
    relations: list[tuple[int, int, tuple[int, ...]]] = []  # (index, n, exponents of earlier basis)
    span = _span(s, basis, bound)
    for g in gens:
        if s.normal_form(g) in span:
            continue
        order = None
        for n in range(2, bound // len(g) + 1):
            e = span.get(s.normal_form(g * n))
            if e is not None:
                order = (n, e)
                break
        basis.append(g)
        if order is not None:
            relations.append((len(basis) - 1, order[0], order[1]))
        span = _span(s, basis, bound)
    names = _letters(len(basis))
    rels = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            rels.append(commutator(names[i], names[j]))
    for i, n, e in relations:
        word = names[i] * n
        for j, ej in enumerate(e):
            word += power(names[j], -ej)
        rels.append(free_reduce(word))
    pres = Presentation.make(Alphabet(tuple(names)), rels)
    return CenterReport(tuple(gens), tuple(basis), pres, abelianization(pres), k, K,
                        dict(zip(names, basis)))


def center_type(s: AutomaticStructure, K: int | None = None) -> AbelianType:
    return center_presentation(s, K).type


def quotient_by_center(p: Presentation, center_gens) -> Presentation:
    return Presentation.make(p.alphabet, list(p.relators) + [free_reduce(g) for g in center_gens])
