"""Tabulate H^2 and the first central-extension classes for the shipped complexes.

    python3 scripts/extension_table.py [--limit N]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from gtkit.abelian import AbelianType
from gtkit.cellcomplex import parse_complex
from gtkit.extensions import enumerate_extensions, h2_type

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
COEFFS = ["Z", "Z/2", "Z/3", "Z + Z/2"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--limit", type=int, default=5)
    args = ap.parse_args()
    for name in ("point", "wedge", "torus", "rp2", "sphere"):
        c = parse_complex((FIXTURES / f"{name}.cw").read_text())
        for coeff in COEFFS:
            A = AbelianType.parse(coeff)
            exts = enumerate_extensions(c, A, args.limit)
            row = "; ".join(f"{','.join(map(str, e.coords)) or '-'} -> {e.fingerprint}" for e in exts)
            print(f"{name:6s} {coeff:8s} H^2 = {str(h2_type(c, A)):10s} {row}")


if __name__ == "__main__":
    main()
