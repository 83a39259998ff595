"""Automatic structures with uniqueness: normal forms, balls, word differences.

A structure is an acceptor over the doubled alphabet plus, for every symbol x and for
the padding symbol ``_``, a multiplier over padded pairs ``"p,q"`` accepting
``{(u, v) : u, v in L, u x = v}``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .fsa import (PAD, Fsa, coaccessible_states, determinize, enumerate_words, equivalent,
                  format_fsa, parse_fsa_lines, trim)
from .presentation import Presentation
from .words import Alphabet, MalformedInput, free_reduce, invert, reduced_words


class StructureInvalid(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def pair_alphabet(symbols: tuple[str, ...]) -> tuple[str, ...]:
    ext = symbols + (PAD,)
    return tuple(f"{p},{q}" for p in ext for q in ext if not (p == PAD and q == PAD))


def split_pair(sym: str) -> tuple[str, str]:
    p, q = sym.split(",")
    return p, q


@dataclass(frozen=True, eq=False)
class AutomaticStructure:
    alphabet: Alphabet
    acceptor: Fsa
    multipliers: dict
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        syms = self.alphabet.symbols
        if self.acceptor.alphabet != syms:
            raise MalformedInput(f"acceptor alphabet must be {' '.join(syms)}")
        pairs = pair_alphabet(syms)
        for x in syms + (PAD,):
            m = self.multipliers.get(x)
            if m is None:
                raise MalformedInput(f"missing multiplier for {x!r}")
            if m.alphabet != pairs:
                raise MalformedInput(f"multiplier {x!r} must use the padded pair alphabet")
        if self.acceptor.initial not in self.acceptor.accepting:
            raise StructureInvalid("the empty word must be accepted (it names the identity)")

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.alphabet.symbols

    # -- successor search ----------------------------------------------------

    def _index(self, x: str):
        key = ("idx", x)
        idx = self._cache.get(key)
        if idx is None:
            m = self.multipliers[x]
            live = coaccessible_states(m)
            table: dict = {}
            for (s, sym), t in m.trans.items():
                if t in live:
                    p, q = split_pair(sym)
                    table.setdefault((s, p), []).append((q, t))
            idx = (live, table)
            self._cache[key] = idx
        return idx

    def successor(self, u: str, x: str) -> str:
        """The unique v in L with (u, v) accepted by the multiplier for x."""
        memo = self._cache.setdefault("succ", {})
        hit = memo.get((u, x))
        if hit is not None:
            return hit
        m = self.multipliers[x]
        live, table = self._index(x)
        if m.initial not in live:
            raise StructureInvalid(f"multiplier {x!r} accepts nothing")
        configs = [(m.initial, "", False)]
        for c in u:
            nxt = []
            for s, v, ended in configs:
                for q, t in table.get((s, c), ()):
                    if q == PAD:
                        nxt.append((t, v, True))
                    elif not ended:
                        nxt.append((t, v + q, False))
            configs = nxt
            if not configs:
                break
        found = []
        depth = 0
        while configs:
            for s, v, _ in configs:
                if s in m.accepting:
                    found.append(v)
            if len(found) > 1:
                break
            depth += 1
            if depth > m.nstates:
                break
            nxt = []
            for s, v, ended in configs:
                if ended:
                    continue
                for q, t in table.get((s, PAD), ()):
                    if q != PAD:
                        nxt.append((t, v + q, False))
            configs = nxt
        if len(found) != 1:
            raise StructureInvalid(f"multiplier {x!r} gives {len(found)} successors for {u!r}")
        memo[(u, x)] = found[0]
        return found[0]

    def normal_form(self, w: str) -> str:
        self.alphabet.check(w)
        u = ""
        for x in w:
            u = self.successor(u, x)
        return u

    def equal(self, w1: str, w2: str) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)

    def is_trivial(self, w: str) -> bool:
        return self.normal_form(w) == ""

    def identity_words_upto(self, max_len: int) -> list[str]:
        """Nonempty freely reduced words of length <= max_len equal to 1, in shortlex order."""
        return list(self.iter_identity_words(max_len))

    def iter_identity_words(self, max_len: int) -> Iterator[str]:
        # prefixes share normal-form work through the successor cache
        layer = [("", "")]
        for n in range(1, max_len + 1):
            nxt = []
            for w, u in layer:
                for x in self.symbols:
                    if w and x == w[-1].swapcase():
                        continue
                    nxt.append((w + x, self.successor(u, x)))
            for w, u in nxt:
                if u == "":
                    yield w
            layer = nxt

    # -- metric --------------------------------------------------------------

    def _geodesics(self, r: int) -> dict[str, str]:
        """Map normal form -> shortlex-least geodesic word, for the ball of radius r."""
        table = self._cache.setdefault("geo", {"": ""})
        layers = self._cache.setdefault("geo_layers", [[""]])
        while len(layers) <= r:
            nxt = []
            for g in layers[-1]:
                word = table[g]
                for x in self.symbols:
                    h = self.successor(g, x)
                    if h not in table:
                        table[h] = word + x
                        nxt.append(h)
            layers.append(nxt)
            if not nxt:
                break
        return table

    def ball(self, r: int) -> set[str]:
        self._geodesics(r)
        layers = self._cache["geo_layers"]
        return {g for layer in layers[: r + 1] for g in layer}

    def sphere_layers(self, r: int) -> list[list[str]]:
        self._geodesics(r)
        return self._cache["geo_layers"][: r + 1]

    def geodesic(self, w: str, max_radius: int = 64) -> str:
        g = self.normal_form(w)
        r = 0
        while True:
            table = self._geodesics(r)
            if g in table:
                return table[g]
            layers = self._cache["geo_layers"]
            if len(layers) <= r:  # finite group exhausted
                raise StructureInvalid(f"{w!r} not found in any ball")
            r += 1
            if r > max_radius:
                raise BudgetExceeded(f"geodesic search for {w!r} exceeded radius {max_radius}")

    def length(self, w: str, max_radius: int = 64) -> int:
        return len(self.geodesic(w, max_radius))

    def distance(self, w1: str, w2: str, max_radius: int = 64) -> int:
        return self.length(invert(w1) + w2, max_radius)


def word_differences(s: AutomaticStructure, x: str) -> dict[int, str]:
    """Label each trimmed state of the multiplier for x by its word difference u_t^-1 v_t."""
    m = trim(s.multipliers[x])
    labels = {m.initial: ""}
    queue = deque([m.initial])
    while queue:
        q = queue.popleft()
        for sym, r in m.successors(q):
            p, c = split_pair(sym)
            left = "" if p == PAD else invert(p)
            right = "" if c == PAD else c
            d = s.normal_form(left + labels[q] + right)
            if r in labels:
                if labels[r] != d:
                    raise StructureInvalid(f"multiplier {x!r}: state {r} has differences {labels[r]!r} and {d!r}")
                continue
            labels[r] = d
            queue.append(r)
    return labels


def fellow_traveller_constant(s: AutomaticStructure) -> int:
    diffs = set()
    for x in s.symbols + (PAD,):
        diffs.update(word_differences(s, x).values())
    return max([s.length(d) for d in diffs] + [1])


# --- verification ------------------------------------------------------------

@dataclass
class VerificationReport:
    items: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.items)

    def lines(self) -> list[str]:
        return [f"{name}: {'pass' if p else 'FAIL'}{(' ' + info) if info else ''}"
                for name, p, info in self.items]


def _check_projections(s: AutomaticStructure) -> tuple[bool, str]:
    acc = s.acceptor
    for x in s.symbols + (PAD,):
        m = s.multipliers[x]
        start = (m.initial, acc.initial, acc.initial, False, False)
        seen = {start}
        stack = [start]
        while stack:
            q, a1, a2, e1, e2 = stack.pop()
            if q in m.accepting and (a1 not in acc.accepting or a2 not in acc.accepting):
                return False, f"multiplier {x}: a coordinate leaves L"
            for sym, r in m.successors(q):
                p, c = split_pair(sym)
                if (e1 and p != PAD) or (e2 and c != PAD):
                    if r in coaccessible_states(m):
                        return False, f"multiplier {x}: letter after padding"
                    continue
                n1 = a1 if p == PAD else acc.step(a1, p)
                n2 = a2 if c == PAD else acc.step(a2, c)
                st = (r, n1, n2, e1 or p == PAD, e2 or c == PAD)
                if st not in seen:
                    seen.add(st)
                    stack.append(st)
    return True, ""


def diagonal(acceptor: Fsa, pairs: tuple[str, ...]) -> Fsa:
    trans = {(p, f"{x},{x}"): q for (p, x), q in acceptor.trans.items()}
    return Fsa(pairs, acceptor.nstates, acceptor.initial, acceptor.accepting, trans)


def compose_relator(s: AutomaticStructure, r: str) -> Fsa:
    """Automaton for the relation u -> u r, composed from the letter multipliers of r."""
    ms = [s.multipliers[x] for x in r]
    n = len(ms)
    pairs = pair_alphabet(s.symbols)
    tables = [s._index(x)[1] for x in r]

    def moves(state, c0, cn_target):
        qs, ends = state[:n], state[n:]
        out = []

        def rec(i, prev, acc_q, acc_e):
            if i == n:
                if prev == cn_target:
                    out.append(tuple(acc_q) + tuple(acc_e))
                return
            for c, t in _pairs_from(tables[i], qs[i], prev):
                ended = ends[i + 1] or c == PAD
                if ends[i + 1] and c != PAD:
                    continue
                rec(i + 1, c, acc_q + [t], acc_e + [ended])

        if ends[0] and c0 != PAD:
            return out
        rec(0, c0, [], [ends[0] or c0 == PAD])
        return out

    def _pairs_from(table, q, prev):
        res = list(table.get((q, prev), ()))
        if prev == PAD:
            # both coordinates padded: this multiplier idles
            res.append((PAD, q))
        return res

    def delta(state, sym):
        c0, cn = split_pair(sym)
        return moves(state, c0, cn)

    def eps(state):
        # both outer tracks read padding: after this no external symbol can follow
        return [st for st in moves(state, PAD, PAD) if st != state]

    start = tuple(m.initial for m in ms) + (False,) * (n + 1)
    accept = lambda st: all(q in m.accepting for q, m in zip(st[:n], ms))
    return determinize(pairs, [start], delta, accept, eps)


def verify_structure(s: AutomaticStructure, p: Presentation, radius: int = 4) -> VerificationReport:
    if p.alphabet != s.alphabet:
        raise MalformedInput("structure and presentation alphabets differ")
    items = []
    ok, info = _check_projections(s)
    items.append(("(a) multiplier coordinates lie in L", ok, info))
    pairs = pair_alphabet(s.symbols)
    diag = diagonal(s.acceptor, pairs)
    items.append(("(b) equality multiplier is the identity on L", equivalent(s.multipliers[PAD], diag), ""))
    bad = []
    for r in p.relators:
        try:
            if not equivalent(compose_relator(s, r), diag):
                bad.append(r)
        except StructureInvalid:
            bad.append(r)
    items.append(("(c) relators act trivially", not bad, ("failing: " + " ".join(bad)) if bad else ""))
    try:
        s.ball(radius)
        clash = [u for u in enumerate_words(s.acceptor, radius) if s.normal_form(u) != u]
        items.append((f"(d) unique normal forms in ball {radius}", not clash,
                      ("non-canonical: " + " ".join(clash[:5])) if clash else ""))
    except StructureInvalid as e:
        items.append((f"(d) unique normal forms in ball {radius}", False, str(e)))
    return VerificationReport(items)


# --- text format -------------------------------------------------------------

def parse_automatic(text: str) -> AutomaticStructure:
    lines = iter(text.splitlines())
    gens = None
    acceptor = None
    mults: dict[str, Fsa] = {}
    started = False
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not started:
            if toks[0] != "automatic":
                raise MalformedInput(f"expected 'automatic', got {line!r}")
            started = True
            continue
        if toks[0] == "gens":
            gens = Alphabet(tuple(toks[1:]))
        elif toks[0] == "acceptor":
            acceptor = parse_fsa_lines(lines)
        elif toks[0] == "mult":
            if len(toks) != 2:
                raise MalformedInput(f"bad mult line {line!r}")
            mults[toks[1]] = parse_fsa_lines(lines)
        elif toks[0] == "end":
            break
        else:
            raise MalformedInput(f"unknown automatic directive {toks[0]!r}")
    else:
        raise MalformedInput("automatic block missing 'end'")
    if gens is None or acceptor is None:
        raise MalformedInput("automatic block needs gens and acceptor")
    return AutomaticStructure(gens, acceptor, mults)


def format_automatic(s: AutomaticStructure) -> str:
    out = ["automatic", "gens " + " ".join(s.alphabet.letters), "acceptor"]
    text = "\n".join(out) + "\n" + format_fsa(s.acceptor, "  ")
    for x in s.symbols + (PAD,):
        text += f"mult {x}\n" + format_fsa(s.multipliers[x], "  ")
    return text + "end\n"
