"""Build skeleta for the shipped automatic structures and report homology and timings.

    python3 scripts/build_skeleta.py            # quick set (seconds)
    python3 scripts/build_skeleta.py --large    # adds Z k=2 d=2 (translation cells, ~90 s)
                                                # and Z^2 k=2 d=2 (expected to exceed the row budget)
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from gtkit.automatic import BudgetExceeded, parse_automatic
from gtkit.cellcomplex import homology
from gtkit.kbuilder import build_skeleton, check_face_closure, check_relators

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

QUICK = [("z", 1, 1), ("z", 1, 2), ("z2", 2, 1), ("f2", 1, 1), ("f2", 1, 2), ("dinf", 1, 1), ("dinf", 1, 2),
         ("zxf2", 2, 1)]
LARGE = [("z", 2, 2), ("z2", 2, 2)]


def run(name: str, k: int, d: int) -> str:
    s = parse_automatic((FIXTURES / f"{name}.aut").read_text())
    t = time.perf_counter()
    try:
        b = build_skeleton(s, k, d)
    except BudgetExceeded as e:
        return f"{name:5s} k={k} d={d}  budget exceeded after {time.perf_counter() - t:.1f}s: {e}"
    secs = time.perf_counter() - t
    cx = b.complex
    H = ", ".join(str(homology(cx, n)) for n in range(cx.top))
    counts = "/".join(str(cx.count(n)) for n in range(cx.top + 1))
    ok = not check_face_closure(b) and not check_relators(b, s)
    trans = sum(1 for st in b.strata.values() if st == "translation")
    return (f"{name:5s} k={k} d={d}  cells {counts:>18s}  translation {trans:3d}  H_0..H_{cx.top - 1}: {H}"
            f"  checks {'ok' if ok else 'FAIL'}  {secs:.1f}s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--large", action="store_true")
    args = ap.parse_args()
    for name, k, d in QUICK + (LARGE if args.large else []):
        print(run(name, k, d), flush=True)


if __name__ == "__main__":
    main()
