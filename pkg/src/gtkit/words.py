"""Alphabets with formal inverses and free-group word combinatorics.

Generators are single lowercase ASCII letters; the inverse of ``a`` is ``A``.
Words are plain ``str`` values; the empty word is ``""`` in memory and the
literal ``"1"`` in files.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator


class MalformedInput(ValueError):
    """Raised when a word, file, or automaton does not parse."""


EMPTY_LITERAL = "1"


def inverse_letter(x: str) -> str:
    return x.swapcase()


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for x in letters:
            if len(x) != 1 or not ("a" <= x <= "z"):
                raise MalformedInput(f"generator {x!r} is not a lowercase ASCII letter")
        if len(set(letters)) != len(letters):
            raise MalformedInput(f"repeated generator in {letters}")

    @classmethod
    def from_string(cls, s: str) -> "Alphabet":
        return cls(tuple(s.replace(",", " ").split()) if " " in s or "," in s else tuple(s))

    @property
    def symbols(self) -> tuple[str, ...]:
        """Doubled letter set in shortlex order: a < A < b < B < ..."""
        out = []
        for x in self.letters:
            out.extend((x, x.upper()))
        return tuple(out)

    def rank(self, x: str) -> int:
        return self._ranks()[x]

    def _ranks(self) -> dict[str, int]:
        r = self.__dict__.get("_rank_cache")
        if r is None:
            r = {s: i for i, s in enumerate(self.symbols)}
            object.__setattr__(self, "_rank_cache", r)
        return r

    def check(self, w: str) -> str:
        ranks = self._ranks()
        for x in w:
            if x not in ranks:
                raise MalformedInput(f"symbol {x!r} of {w!r} not in alphabet {self.letters}")
        return w

    def key(self, w: str) -> tuple:
        """Shortlex sort key."""
        ranks = self._ranks()
        return (len(w), tuple(ranks[x] for x in w))

    def __len__(self):
        return len(self.letters)


def free_reduce(w: str, alphabet: Alphabet | None = None) -> str:
    if alphabet is not None:
        alphabet.check(w)
    out: list[str] = []
    for x in w:
        if out and out[-1] == inverse_letter(x):
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def invert(w: str, alphabet: Alphabet | None = None) -> str:
    if alphabet is not None:
        alphabet.check(w)
    return free_reduce("".join(inverse_letter(x) for x in reversed(w)))


def is_reduced(w: str) -> bool:
    return all(w[i] != inverse_letter(w[i + 1]) for i in range(len(w) - 1))


def commutator(x: str, y: str) -> str:
    """Word for x y x^-1 y^-1, freely reduced."""
    return free_reduce(x + y + invert(x) + invert(y))


def power(w: str, n: int) -> str:
    if n < 0:
        w, n = invert(w), -n
    return free_reduce(w * n)


def cyclic_variants(w: str) -> list[str]:
    """All cyclic permutations of w and of its inverse (duplicates removed)."""
    out = []
    for u in (w, invert(w)):
        for i in range(max(len(u), 1)):
            v = u[i:] + u[:i]
            if v not in out:
                out.append(v)
    return out


def reduced_words(alphabet: Alphabet, length: int) -> Iterator[str]:
    """Freely reduced words of exactly the given length, in shortlex order."""
    syms = alphabet.symbols

    def rec(prefix: str, remaining: int):
        if remaining == 0:
            yield prefix
            return
        last = prefix[-1] if prefix else None
        for x in syms:
            if last is not None and x == inverse_letter(last):
                continue
            yield from rec(prefix + x, remaining - 1)

    yield from rec("", length)


def reduced_words_upto(alphabet: Alphabet, max_len: int) -> Iterator[str]:
    for n in range(max_len + 1):
        yield from reduced_words(alphabet, n)


def all_words(symbols: Iterable[str], length: int) -> Iterator[str]:
    for t in product(tuple(symbols), repeat=length):
        yield "".join(t)


def parse_word(s: str, alphabet: Alphabet | None = None) -> str:
    s = s.strip()
    if s == EMPTY_LITERAL:
        return ""
    if alphabet is not None:
        alphabet.check(s)
    elif not all(x.isascii() and x.isalpha() for x in s):
        raise MalformedInput(f"bad word literal {s!r}")
    return s


def format_word(w: str) -> str:
    return w if w else EMPTY_LITERAL


def exponent_vector(w: str, alphabet: Alphabet) -> list[int]:
    idx = {x: i for i, x in enumerate(alphabet.letters)}
    vec = [0] * len(alphabet.letters)
    for x in w:
        if x in idx:
            vec[idx[x]] += 1
        elif x.lower() in idx:
            vec[idx[x.lower()]] -= 1
        else:
            raise MalformedInput(f"symbol {x!r} not in alphabet {alphabet.letters}")
    return vec
