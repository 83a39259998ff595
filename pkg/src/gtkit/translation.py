"""Translation numbers tau(g) = lim d(1, g^m)/m, bounded above from finitely many powers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automatic import AutomaticStructure
from .words import invert, power


@dataclass(frozen=True)
class TranslationEstimate:
    g: str
    distances: tuple[int, ...]  # d(1, g^m) for m = 1..M
    upper_bounds: tuple[Fraction, ...]
    inf_bound: Fraction

    def lines(self) -> list[str]:
        out = [f"word: {self.g or '1'}"]
        for m, (d, q) in enumerate(zip(self.distances, self.upper_bounds), start=1):
            out.append(f"m={m} d(1,g^m)={d} bound={q}")
        out.append(f"tau upper bound: {self.inf_bound}")
        return out


def translation_estimate(s: AutomaticStructure, g: str, M: int, max_radius: int = 256) -> TranslationEstimate:
    # subadditivity makes the infimum of d(1,g^m)/m an upper bound for tau(g)
    if M < 1:
        raise ValueError("M must be at least 1")
    dists = tuple(s.length(power(g, m), max_radius) for m in range(1, M + 1))
    bounds = tuple(Fraction(d, m) for m, d in enumerate(dists, start=1))
    return TranslationEstimate(g, dists, bounds, min(bounds))


def subadditivity_violations(est: TranslationEstimate) -> list[tuple[int, int]]:
    d = est.distances
    M = len(d)
    return [(m, n) for m in range(1, M + 1) for n in range(1, M + 1 - m)
            if d[m + n - 1] > d[m - 1] + d[n - 1]]


def conjugation_drift(s: AutomaticStructure, g: str, x: str, M: int, max_radius: int = 256) -> list[int]:
    """|d(1, x^-1 g^m x) - d(1, g^m)| for m = 1..M; bounded by 2|x| for geodesic x."""
    return [abs(s.length(invert(x) + power(g, m) + x, max_radius) - s.length(power(g, m), max_radius))
            for m in range(1, M + 1)]
