"""Deterministic finite automata and regular-language growth.

An ``Fsa`` is deterministic; missing transitions go to an implicit dead state
that is non-accepting and absorbing.  Symbols are strings: single letters, or
padded pairs such as ``"a,b"`` and ``"a,_"``.  Words are ``str`` when every
symbol is one character, otherwise tuples of symbols.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .words import MalformedInput

PAD = "_"


class NotPolynomial(ValueError):
    pass


@dataclass(frozen=True)
class Fsa:
    alphabet: tuple[str, ...]
    nstates: int
    initial: int
    accepting: frozenset[int]
    trans: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise MalformedInput("repeated alphabet symbol")
        if self.nstates < 1 or not 0 <= self.initial < self.nstates:
            raise MalformedInput("bad state count or initial state")
        if any(not 0 <= q < self.nstates for q in self.accepting):
            raise MalformedInput("accepting state out of range")
        syms = set(self.alphabet)
        for (p, x), q in self.trans.items():
            if x not in syms or not 0 <= p < self.nstates or not 0 <= q < self.nstates:
                raise MalformedInput(f"bad transition {p} {x} {q}")

    @property
    def single_letter(self) -> bool:
        return all(len(x) == 1 for x in self.alphabet)

    def step(self, state: int | None, sym: str) -> int | None:
        if state is None:
            return None
        return self.trans.get((state, sym))

    def run(self, word: Sequence[str]) -> int | None:
        q = self.initial
        for x in word:
            q = self.trans.get((q, x))
            if q is None:
                return None
        return q

    def successors(self, state: int) -> Iterator[tuple[str, int]]:
        for x in self.alphabet:
            q = self.trans.get((state, x))
            if q is not None:
                yield x, q

    def _join(self, syms: Sequence[str]):
        return "".join(syms) if self.single_letter else tuple(syms)

    def __eq__(self, other):
        return (isinstance(other, Fsa) and self.alphabet == other.alphabet and self.nstates == other.nstates
                and self.initial == other.initial and self.accepting == other.accepting
                and self.trans == other.trans)

    def __hash__(self):
        return hash((self.alphabet, self.nstates, self.initial, self.accepting))


def _symbols(m: Fsa, w) -> list[str]:
    syms = list(w)
    alph = set(m.alphabet)
    for x in syms:
        if x not in alph:
            raise MalformedInput(f"symbol {x!r} not in automaton alphabet {m.alphabet}")
    return syms


def accepts(m: Fsa, w) -> bool:
    return m.run(_symbols(m, w)) in m.accepting


def from_function(alphabet: Sequence[str], start: Hashable, delta: Callable, accept: Callable,
                  max_states: int = 10 ** 6) -> Fsa:
    """Build the reachable part of a DFA given by a transition function on hashable states.

    ``delta(state, sym)`` returns the next state or None (dead).
    """
    index = {start: 0}
    order = [start]
    trans = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        i = index[s]
        for x in alphabet:
            t = delta(s, x)
            if t is None:
                continue
            if t not in index:
                if len(order) >= max_states:
                    raise RuntimeError(f"automaton exceeds {max_states} states")
                index[t] = len(order)
                order.append(t)
                queue.append(t)
            trans[(i, x)] = index[t]
    return Fsa(tuple(alphabet), len(order), 0, frozenset(index[s] for s in order if accept(s)), trans)


def intersect(m1: Fsa, m2: Fsa) -> Fsa:
    if m1.alphabet != m2.alphabet:
        raise MalformedInput("intersect: alphabets differ")

    def delta(s, x):
        p, q = m1.trans.get((s[0], x)), m2.trans.get((s[1], x))
        return None if p is None or q is None else (p, q)

    out = from_function(m1.alphabet, (m1.initial, m2.initial), delta,
                        lambda s: s[0] in m1.accepting and s[1] in m2.accepting)
    return trim(out)


def union(m1: Fsa, m2: Fsa) -> Fsa:
    if m1.alphabet != m2.alphabet:
        raise MalformedInput("union: alphabets differ")

    def delta(s, x):
        p = m1.trans.get((s[0], x)) if s[0] is not None else None
        q = m2.trans.get((s[1], x)) if s[1] is not None else None
        return None if p is None and q is None else (p, q)

    out = from_function(m1.alphabet, (m1.initial, m2.initial), delta,
                        lambda s: s[0] in m1.accepting or s[1] in m2.accepting)
    return trim(out)


def complement(m: Fsa) -> Fsa:
    """Complement relative to all words over m.alphabet; the dead state becomes explicit."""
    dead = m.nstates
    trans = {}
    for p in range(m.nstates + 1):
        for x in m.alphabet:
            trans[(p, x)] = m.trans.get((p, x), dead) if p < dead else dead
    acc = frozenset(range(m.nstates + 1)) - m.accepting
    return Fsa(m.alphabet, m.nstates + 1, m.initial, acc, trans)


def finite_language(alphabet: Sequence[str], words: Iterable) -> Fsa:
    """Trie automaton accepting exactly the given words."""
    words = [tuple(w) for w in words]
    nodes = {(): 0}
    trans = {}
    for w in words:
        for i in range(len(w)):
            if w[: i + 1] not in nodes:
                nodes[w[: i + 1]] = len(nodes)
            trans[(nodes[w[:i]], w[i])] = nodes[w[: i + 1]]
    return Fsa(tuple(alphabet), len(nodes), 0, frozenset(nodes[w] for w in words), trans)


def universal(alphabet: Sequence[str]) -> Fsa:
    return Fsa(tuple(alphabet), 1, 0, frozenset({0}), {(0, x): 0 for x in alphabet})


def empty_language(alphabet: Sequence[str]) -> Fsa:
    return Fsa(tuple(alphabet), 1, 0, frozenset(), {})


def reachable_states(m: Fsa) -> set[int]:
    seen = {m.initial}
    stack = [m.initial]
    while stack:
        p = stack.pop()
        for _, q in m.successors(p):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def coaccessible_states(m: Fsa) -> set[int]:
    back: dict[int, list[int]] = {}
    for (p, _), q in m.trans.items():
        back.setdefault(q, []).append(p)
    seen = set(m.accepting)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in back.get(q, ()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def trim(m: Fsa) -> Fsa:
    """Restrict to states that are reachable and co-accessible (initial always kept)."""
    keep = reachable_states(m) & coaccessible_states(m)
    keep.add(m.initial)
    order = sorted(keep, key=lambda q: (q != m.initial, q))
    # renumber in BFS order for determinism
    index = {m.initial: 0}
    queue = deque([m.initial])
    while queue:
        p = queue.popleft()
        for _, q in m.successors(p):
            if q in keep and q not in index:
                index[q] = len(index)
                queue.append(q)
    for q in order:
        index.setdefault(q, len(index))
    trans = {(index[p], x): index[q] for (p, x), q in m.trans.items() if p in keep and q in keep}
    return Fsa(m.alphabet, len(index), 0, frozenset(index[q] for q in m.accepting if q in keep), trans)


def minimize(m: Fsa) -> Fsa:
    """Minimal trim DFA for L(m) (Moore partition refinement)."""
    m = trim(m)
    n = m.nstates
    block = [1 if q in m.accepting else 0 for q in range(n)]
    while True:
        sig = [(block[q],) + tuple(block[m.trans[(q, x)]] if (q, x) in m.trans else -1
                                   for x in m.alphabet) for q in range(n)]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        stable = len(ids) == len(set(block))
        block = new
        if stable:
            break
    trans = {}
    for (p, x), q in m.trans.items():
        trans[(block[p], x)] = block[q]
    out = Fsa(m.alphabet, len(set(block)), block[m.initial],
              frozenset(block[q] for q in m.accepting), trans)
    return trim(out)


def is_empty(m: Fsa) -> bool:
    return not (reachable_states(m) & set(m.accepting))


def equivalent(m1: Fsa, m2: Fsa) -> bool:
    """Language equality, by exploring the product automaton for a distinguishing state."""
    if m1.alphabet != m2.alphabet:
        raise MalformedInput("equivalent: alphabets differ")
    start = (m1.initial, m2.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in m1.accepting) != (q in m2.accepting):
            return False
        for x in m1.alphabet:
            s = (m1.step(p, x), m2.step(q, x))
            if s == (None, None) or s in seen:
                continue
            seen.add(s)
            queue.append(s)
    return True


def determinize(alphabet: Sequence[str], starts: Iterable[Hashable],
                delta: Callable[[Hashable, str], Iterable[Hashable]],
                accept: Callable[[Hashable], bool],
                eps: Callable[[Hashable], Iterable[Hashable]] | None = None,
                max_states: int = 10 ** 5) -> Fsa:
    """Subset construction for an implicit NFA with optional epsilon moves."""

    def closure(states):
        out = set(states)
        if eps is None:
            return frozenset(out)
        stack = list(out)
        while stack:
            s = stack.pop()
            for t in eps(s):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    def step(S, x):
        nxt = set()
        for s in S:
            nxt.update(delta(s, x))
        return closure(nxt) if nxt else None

    return from_function(alphabet, closure(starts), step, lambda S: any(accept(s) for s in S),
                         max_states=max_states)


def enumerate_words(m: Fsa, max_len: int) -> list:
    """All accepted words of length <= max_len in shortlex order (alphabet order)."""
    live = coaccessible_states(m)
    out = []
    layer = [((), m.initial)] if m.initial in live else []
    for n in range(max_len + 1):
        for w, q in layer:
            if q in m.accepting:
                out.append(m._join(w))
        if n == max_len:
            break
        nxt = []
        for w, q in layer:
            for x, r in m.successors(q):
                if r in live:
                    nxt.append((w + (x,), r))
        layer = nxt
    return out


def count_upto(m: Fsa, n: int) -> list[int]:
    """Cumulative counts #{w in L : |w| <= t} for t = 0..n, by dynamic programming."""
    vec = {m.initial: 1}
    total, out = 0, []
    for t in range(n + 1):
        total += sum(c for q, c in vec.items() if q in m.accepting)
        out.append(total)
        nxt: dict[int, int] = {}
        for q, c in vec.items():
            for _, r in m.successors(q):
                nxt[r] = nxt.get(r, 0) + c
        vec = nxt
    return out


# --- growth ----------------------------------------------------------------

@dataclass(frozen=True)
class Growth:
    kind: str  # "polynomial" | "exponential"
    degree: int | None = None

    def __str__(self):
        return f"polynomial degree {self.degree}" if self.kind == "polynomial" else "exponential"


def Polynomial(d: int) -> Growth:
    return Growth("polynomial", d)


Exponential = Growth("exponential")


def _sccs(states: Sequence[int], succ: Callable[[int], Iterable[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    index, low, on_stack = {}, {}, set()
    stack, comps = [], []
    counter = 0
    for root in states:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def _structure(m: Fsa):
    t = trim(m)
    live = set(range(t.nstates)) if not is_empty(t) else set()
    succ = lambda q: [r for _, r in t.successors(q) if r in live]
    comps = _sccs(sorted(live), succ)
    comp_of = {q: i for i, c in enumerate(comps) for q in c}
    internal = [0] * len(comps)
    for (p, _), q in t.trans.items():
        if p in live and q in live and comp_of[p] == comp_of[q]:
            internal[comp_of[p]] += 1
    return t, live, comps, comp_of, internal


def growth_degree(m: Fsa) -> Growth:
    """Polynomial(d) when the cumulative count of L is Theta(n^d), else Exponential."""
    t, live, comps, comp_of, internal = _structure(m)
    if not live:
        return Polynomial(0)
    if any(e > len(c) for e, c in zip(internal, comps)):
        return Exponential
    cyclic = [e > 0 for e in internal]
    # Tarjan emits components in reverse topological order
    dist = {comp_of[t.initial]: int(cyclic[comp_of[t.initial]])}
    for i in reversed(range(len(comps))):
        if i not in dist:
            continue
        for q in comps[i]:
            for _, r in t.successors(q):
                j = comp_of.get(r)
                if j is None or j == i:
                    continue
                cand = dist[i] + int(cyclic[j])
                if cand > dist.get(j, -1):
                    dist[j] = cand
    return Polynomial(max(dist.values()))


@dataclass(frozen=True)
class BasicLanguage:
    """The language anchors[0] pumps[0]* anchors[1] ... pumps[n-1]* anchors[n]."""

    anchors: tuple
    pumps: tuple = ()

    def __post_init__(self):
        if len(self.anchors) != len(self.pumps) + 1:
            raise ValueError("need exactly one more anchor than pumps")
        if any(len(p) == 0 for p in self.pumps):
            raise ValueError("pump words must be nonempty")

    @property
    def pump_free(self):
        return _concat(self.anchors)

    def words_upto(self, max_len: int) -> set:
        out = set()

        def rec(i, acc):
            if len(acc) > max_len:
                return
            acc = acc + tuple(self.anchors[i])
            if len(acc) > max_len:
                return
            if i == len(self.pumps):
                out.add(acc)
                return
            p = tuple(self.pumps[i])
            cur = acc
            while len(cur) <= max_len:
                rec(i + 1, cur)
                cur = cur + p

        rec(0, ())
        return out

    def __str__(self):
        parts = []
        for i, a in enumerate(self.anchors):
            if a:
                parts.append(_show(a))
            if i < len(self.pumps):
                parts.append(f"({_show(self.pumps[i])})*")
        return " ".join(parts) if parts else "1"


def _concat(words):
    if all(isinstance(w, str) for w in words):
        return "".join(words)
    return tuple(x for w in words for x in w)


def _show(w):
    return w if isinstance(w, str) else " ".join(w)


def decompose_basic(m: Fsa) -> list[BasicLanguage]:
    """Cover L(m) by basic languages; one per path through the component DAG and exit state."""
    g = growth_degree(m)
    if g.kind != "polynomial":
        raise NotPolynomial("language has exponential growth")
    t, live, comps, comp_of, internal = _structure(m)
    if not live:
        return []
    join = t._join
    out: list[BasicLanguage] = []

    def cycle_walk(s):
        """Words along the simple cycle through s: (cycle word, [(state, path word)])."""
        comp = comp_of[s]
        path, states = [], [s]
        q = s
        while True:
            for x, r in t.successors(q):
                if r in live and comp_of[r] == comp:
                    path.append(x)
                    q = r
                    break
            if q == s:
                break
            states.append(q)
        return tuple(path), [(states[i], tuple(path[:i])) for i in range(len(states))]

    def visit(s, anchors, pumps, cur):
        comp = comp_of[s]
        if internal[comp]:
            cyc, stops = cycle_walk(s)
            anchors = anchors + (join(cur),)
            pumps = pumps + (join(cyc),)
            exits = [(q, pw) for q, pw in stops]
            cur0 = ()
        else:
            exits = [(s, ())]
            cur0 = cur
        for q, pw in exits:
            here = cur0 + pw
            if q in t.accepting:
                out.append(BasicLanguage(anchors + (join(here),), pumps))
            for x, r in t.successors(q):
                if r in live and comp_of[r] != comp:
                    visit(r, anchors, pumps, here + (x,))

    visit(t.initial, (), (), ())
    return out


def torsion_candidates(dec: Sequence[BasicLanguage], wp: Callable[[str], bool], p_max: int) -> list:
    """Per basic language, the pump-free word if it has finite order 2..p_max.

    ``wp(w)`` must return True when w represents the identity.
    """
    out = []
    for b in dec:
        rep = b.pump_free
        if wp(rep):
            continue
        for p in range(2, p_max + 1):
            if wp(rep * p):
                if rep not in out:
                    out.append(rep)
                break
    return out


# --- text format -------------------------------------------------------------

def parse_fsa_lines(lines: Iterator[str]) -> Fsa:
    alphabet = nstates = initial = None
    accepting: list[int] = []
    trans = {}
    started = False
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if not started:
            if head != "fsa":
                raise MalformedInput(f"expected 'fsa', got {line!r}")
            started = True
            continue
        try:
            if head == "alphabet":
                alphabet = tuple(toks[1:])
            elif head == "states":
                nstates = int(toks[1])
            elif head == "initial":
                initial = int(toks[1])
            elif head == "accept":
                accepting += [int(x) for x in toks[1:]]
            elif head == "trans":
                p, x, q = int(toks[1]), toks[2], int(toks[3])
                if (p, x) in trans and trans[(p, x)] != q:
                    raise MalformedInput(f"nondeterministic transition {p} {x}")
                trans[(p, x)] = q
            elif head == "end":
                break
            else:
                raise MalformedInput(f"unknown fsa directive {head!r}")
        except (IndexError, ValueError) as e:
            if isinstance(e, MalformedInput):
                raise
            raise MalformedInput(f"bad fsa line {line!r}") from e
    else:
        raise MalformedInput("fsa block missing 'end'")
    if alphabet is None or nstates is None or initial is None:
        raise MalformedInput("fsa block needs alphabet, states and initial")
    return Fsa(alphabet, nstates, initial, frozenset(accepting), trans)


def parse_fsa(text: str) -> Fsa:
    return parse_fsa_lines(iter(text.splitlines()))


def format_fsa(m: Fsa, indent: str = "") -> str:
    rank = {x: i for i, x in enumerate(m.alphabet)}
    lines = ["fsa", "alphabet " + " ".join(m.alphabet), f"states {m.nstates}", f"initial {m.initial}",
             "accept " + " ".join(str(q) for q in sorted(m.accepting))]
    for (p, x), q in sorted(m.trans.items(), key=lambda kv: (kv[0][0], rank[kv[0][1]])):
        lines.append(f"trans {p} {x} {q}")
    lines.append("end")
    return "\n".join(indent + ln for ln in lines) + "\n"
