"""Homomorphism and isomorphism search between finite presentations, and the
centre/quotient/extension comparison built on top of it."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .abelian import AbelianType, abelian_iso
from .automatic import AutomaticStructure
from .cellcomplex import CellComplex
from .center import center_presentation, quotient_by_center
from .extensions import ExtensionPresentation, enumerate_extensions
from .presentation import ContractViolation, Presentation, abelian_word_problem, abelianization, area_oracle
from .words import Alphabet, commutator, free_reduce, invert, power, reduced_words

WordProblem = Callable[[str], bool]


class MissingInput(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    steps: int = 10_000  # candidate image tuples examined, both directions together
    word_length: int = 2  # longest image word
    depth: int = 2_000  # words visited by the relator-insertion search when no oracle is given

    def __post_init__(self):
        if min(self.steps, self.word_length, self.depth) <= 0:
            raise ValueError("budget entries must be positive")


@dataclass(frozen=True)
class HomCandidate:
    images: tuple[tuple[str, str], ...]  # (generator, image word)
    status: str = "verified"

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.images)

    def apply(self, w: str) -> str:
        return substitute(w, self.mapping)

    def __str__(self) -> str:
        return ", ".join(f"{a}->{w or '1'}" for a, w in self.images)


@dataclass(frozen=True)
class Exhausted:
    reason: str
    steps: int = 0

    def __str__(self) -> str:
        return f"exhausted: {self.reason}"


@dataclass(frozen=True)
class Isomorphic:
    witness: tuple[HomCandidate, HomCandidate]
    detail: str = ""

    def __str__(self) -> str:
        return "isomorphic"


@dataclass(frozen=True)
class NotIsomorphic:
    reason: str

    def __str__(self) -> str:
        return f"not isomorphic ({self.reason})"


def substitute(w: str, images: dict[str, str]) -> str:
    out = []
    for c in w:
        out.append(images[c] if c.islower() else invert(images[c.lower()]))
    return free_reduce("".join(out))


def default_wp(p: Presentation) -> WordProblem | None:
    """Exact word problem when the presentation is visibly abelian, else None."""
    try:
        return abelian_word_problem(p)
    except ContractViolation:
        return None


def _trivial(p: Presentation, wp: WordProblem | None, w: str, depth: int) -> bool:
    w = free_reduce(w)
    if not w:
        return True
    if wp is not None:
        return wp(w)
    return area_oracle(p, w, budget=depth) is not None


def _image_tuples(n: int, alphabet: Alphabet, L: int) -> Iterator[tuple[str, ...]]:
    """Tuples of reduced words of length <= L: by total length, then length profile, then words."""
    by_len = [list(reduced_words(alphabet, i)) for i in range(L + 1)]
    for total in range(n * L + 1):
        for prof in itertools.product(range(L + 1), repeat=n):
            if sum(prof) == total:
                yield from itertools.product(*(by_len[i] for i in prof))


def _hom_steps(p1: Presentation, p2: Presentation, wp2: WordProblem | None,
               b: SearchBudget) -> Iterator[HomCandidate | None]:
    """One item per examined tuple: the verified homomorphism, or None."""
    for imgs in _image_tuples(len(p1.gens), p2.alphabet, b.word_length):
        images = dict(zip(p1.gens, imgs))
        if all(_trivial(p2, wp2, substitute(r, images), b.depth) for r in p1.relators):
            yield HomCandidate(tuple(zip(p1.gens, imgs)))
        else:
            yield None


def enumerate_homomorphisms(p1: Presentation, p2: Presentation, wp2: WordProblem | None = None,
                            b: SearchBudget = SearchBudget()) -> Iterator[HomCandidate | Exhausted]:
    """Verified homomorphisms p1 -> p2; the stream always ends with an Exhausted marker."""
    steps = 0
    for h in _hom_steps(p1, p2, wp2, b):
        steps += 1
        if h is not None:
            yield h
        if steps >= b.steps:
            yield Exhausted(f"step budget {b.steps} used", steps)
            return
    yield Exhausted(f"all images up to length {b.word_length} tried", steps)


def is_inverse_pair(p1: Presentation, p2: Presentation, f: HomCandidate, g: HomCandidate,
                    wp1: WordProblem | None, wp2: WordProblem | None, depth: int = 2_000) -> bool:
    return (all(_trivial(p1, wp1, g.apply(f.mapping[a]) + invert(a), depth) for a in p1.gens)
            and all(_trivial(p2, wp2, f.apply(g.mapping[x]) + invert(x), depth) for x in p2.gens))


class IsoSearch:
    """Resumable search for a mutually inverse pair; one step examines one image tuple."""

    def __init__(self, p1: Presentation, p2: Presentation, wp1: WordProblem | None = None,
                 wp2: WordProblem | None = None, b: SearchBudget = SearchBudget()):
        self.p1, self.p2, self.wp1, self.wp2, self.b = p1, p2, wp1, wp2, b
        self.steps = 0
        self.result: tuple[HomCandidate, HomCandidate] | Exhausted | None = None
        self._gen = self._run()

    @property
    def done(self) -> bool:
        return self.result is not None

    def advance(self, n: int):
        while n > 0 and self.result is None:
            try:
                next(self._gen)
                self.steps += 1
                n -= 1
            except StopIteration as e:
                self.result = e.value
        return self.result

    def _run(self):
        streams = [_hom_steps(self.p1, self.p2, self.wp2, self.b), _hom_steps(self.p2, self.p1, self.wp1, self.b)]
        found: list[list[HomCandidate]] = [[], []]
        live = [True, True]
        while any(live):
            for side in (0, 1):
                if not live[side]:
                    continue
                try:
                    h = next(streams[side])
                except StopIteration:
                    live[side] = False
                    continue
                yield
                if h is None:
                    continue
                found[side].append(h)
                for other in found[1 - side]:
                    f, g = (h, other) if side == 0 else (other, h)
                    if is_inverse_pair(self.p1, self.p2, f, g, self.wp1, self.wp2, self.b.depth):
                        return f, g
        return Exhausted(f"all images up to length {self.b.word_length} tried", self.steps)


def find_isomorphism(p1: Presentation, p2: Presentation, wp1: WordProblem | None = None,
                     wp2: WordProblem | None = None, b: SearchBudget = SearchBudget()):
    """A mutually inverse verified pair (p1 -> p2, p2 -> p1), or Exhausted. Never 'not isomorphic'."""
    search = IsoSearch(p1, p2, wp1, wp2, b)
    res = search.advance(b.steps)
    if res is None:
        return Exhausted(f"step budget {b.steps} used", search.steps)
    return res


def abelian_presentation(t: AbelianType, letters: str = "abcdefghijklmnopqrstuvwxyz") -> Presentation:
    orders = t.cyclic_orders
    names = letters[: len(orders)]
    rels = [power(x, m) for x, m in zip(names, orders) if m]
    rels += [commutator(x, y) for x, y in itertools.combinations(names, 2)]
    return Presentation.make(Alphabet(tuple(names)), rels)


def diagonal_identify(p: Presentation, candidates: Iterable[Presentation], wp: WordProblem | None = None,
                      b: SearchBudget = SearchBudget(), unit: int = 1, max_rounds: int = 200,
                      candidate_wp: Callable[[Presentation], WordProblem | None] = default_wp):
    """Index of the first candidate found isomorphic to p, under the triangular schedule.

    Round 1 gives candidate 0 one unit, round 2 gives candidate 1 one unit, and round
    r >= 3 gives r-1 further units to each of candidates 0..r-1.
    """
    it = iter(candidates)
    searches: list[IsoSearch | None] = []
    exhausted_input = False

    def add() -> None:
        nonlocal exhausted_input
        try:
            q = next(it)
        except StopIteration:
            exhausted_input = True
            return
        searches.append(IsoSearch(p, q, wp, candidate_wp(q), b))

    for r in range(1, max_rounds + 1):
        if not exhausted_input:
            add()
        plan = [(r - 1, 1)] if r <= 2 else [(i, r - 1) for i in range(r)]
        for i, n in plan:
            if i >= len(searches) or searches[i] is None:
                continue
            res = searches[i].advance(n * unit)
            if isinstance(res, tuple):
                return i
            if isinstance(res, Exhausted):
                searches[i] = None
        if exhausted_input and all(s is None for s in searches):
            return Exhausted("every candidate search ran out", r)
    return Exhausted(f"no identification within {max_rounds} rounds", max_rounds)


# --- centre / quotient / extension comparison --------------------------------

@dataclass(frozen=True)
class CenterData:
    type: AbelianType
    generators: tuple[str, ...]


def center_data(s: AutomaticStructure) -> CenterData:
    rep = center_presentation(s)
    return CenterData(rep.type, rep.basis)


def _compose(f: HomCandidate, g: HomCandidate) -> HomCandidate:
    """g after f."""
    return HomCandidate(tuple((a, g.apply(w)) for a, w in f.images))


def abelianization_oracle(q1: Presentation, q2: Presentation) -> bool | None:
    """False when the abelianizations differ, None (undecided) otherwise."""
    return None if abelian_iso(abelianization(q1), abelianization(q2)) else False


@dataclass(frozen=True)
class ComparisonLog:
    lines: tuple[str, ...]


def theoremA_compare(p1: Presentation, p2: Presentation,
                     aut1: AutomaticStructure | CenterData | None,
                     aut2: AutomaticStructure | CenterData | None,
                     q_oracle: Callable[[Presentation, Presentation], bool | None] = abelianization_oracle,
                     q_complex: CellComplex | None = None, coeff: AbelianType | None = None,
                     b: SearchBudget = SearchBudget(), limit: int = 9, log: list | None = None):
    """Centres, then central quotients, then identification among central extensions.

    `aut_i` may be precomputed CenterData when no automatic structure is at hand; word
    problems for p_i then fall back to the relator-insertion search.
    """
    log = [] if log is None else log
    data, wps = [], []
    for i, (p, a) in enumerate(((p1, aut1), (p2, aut2)), start=1):
        if a is None:
            raise MissingInput(f"group {i}: need an automatic structure or centre data")
        if isinstance(a, AutomaticStructure):
            data.append(center_data(a))
            wps.append(a.is_trivial)
        else:
            data.append(a)
            wps.append(default_wp(p))
        log.append(f"centre {i}: {data[-1].type} generated by {' '.join(data[-1].generators) or 'nothing'}")
    z1, z2 = data[0].type, data[1].type
    if not abelian_iso(z1, z2):
        return NotIsomorphic(f"center mismatch: {z1} vs {z2}")
    q1 = quotient_by_center(p1, data[0].generators)
    q2 = quotient_by_center(p2, data[1].generators)
    verdict = q_oracle(q1, q2)
    log.append(f"central quotients: oracle says {verdict}")
    if verdict is False:
        return NotIsomorphic("central quotients differ")
    if q_complex is None:
        raise MissingInput("a 3-skeleton for the central quotient is required")
    A = coeff if coeff is not None else z1
    exts = enumerate_extensions(q_complex, A, limit)
    fps = [e.fingerprint for e in exts]
    f1, f2 = abelianization(p1), abelianization(p2)
    m1 = [i for i, t in enumerate(fps) if abelian_iso(t, f1)]
    m2 = [i for i, t in enumerate(fps) if abelian_iso(t, f2)]
    log.append(f"fingerprint {f1} matches classes {m1}; fingerprint {f2} matches classes {m2}")
    if not abelian_iso(f1, f2):
        return NotIsomorphic(f"abelianization fingerprints differ: {f1} vs {f2}")
    hits = []
    for p, wp, matches in ((p1, wps[0], m1), (p2, wps[1], m2)):
        cands = [exts[i].presentation for i in matches]
        j = diagonal_identify(p, cands, wp, b) if cands else Exhausted("no fingerprint match")
        if isinstance(j, Exhausted):
            return Exhausted(f"identification: {j.reason}")
        hits.append(matches[j])
    log.append(f"identified with extension classes {hits[0]} and {hits[1]}")
    if hits[0] != hits[1]:
        return NotIsomorphic(f"distinct extension classes {exts[hits[0]].coords} and {exts[hits[1]].coords}")
    E = exts[hits[0]].presentation
    wpE = default_wp(E)
    r1 = find_isomorphism(p1, E, wps[0], wpE, b)
    r2 = find_isomorphism(p2, E, wps[1], wpE, b)
    if isinstance(r1, Exhausted) or isinstance(r2, Exhausted):
        return Exhausted("witness search ran out")
    f = _compose(r1[0], r2[1])  # p1 -> E -> p2
    g = _compose(r2[0], r1[1])  # p2 -> E -> p1
    if not is_inverse_pair(p1, p2, f, g, wps[0], wps[1], b.depth):
        return Exhausted("composite witness could not be certified")
    return Isomorphic((f, g), f"both are extension class {exts[hits[0]].coords}")


def extension_index(exts: Sequence[ExtensionPresentation], p: Presentation) -> list[int]:
    f = abelianization(p)
    return [i for i, e in enumerate(exts) if abelian_iso(e.fingerprint, f)]
