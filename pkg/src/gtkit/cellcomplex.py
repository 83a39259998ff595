"""Finite CW complexes given by incidence data, and their (co)homology."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

from .abelian import AbelianType, IntMatrix, sparse_invariant_factors
from .words import MalformedInput


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    boundary: tuple[tuple[str, int], ...] = ()  # (face id, coefficient), nonzero, sorted by first use
    attach: tuple[tuple[str, int], ...] | None = None  # 2-cells: signed 1-cell ids in order


def _collect(terms: Sequence[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    acc: dict[str, int] = {}
    for cid, c in terms:
        acc[cid] = acc.get(cid, 0) + c
    return tuple((cid, c) for cid, c in acc.items() if c)


class CellComplex:
    def __init__(self, cells: Sequence[Cell], check: bool = True):
        self.cells = tuple(cells)
        self.by_id = {}
        for c in self.cells:
            if c.id in self.by_id:
                raise MalformedInput(f"duplicate cell id {c.id!r}")
            self.by_id[c.id] = c
        self.top = max((c.dim for c in self.cells), default=-1)
        self._of_dim = {n: [c for c in self.cells if c.dim == n] for n in range(self.top + 1)}
        self._pos = {n: {c.id: i for i, c in enumerate(cs)} for n, cs in self._of_dim.items()}
        if check:
            self.validate()

    def cells_of_dim(self, n: int) -> list[Cell]:
        return self._of_dim.get(n, [])

    def count(self, n: int) -> int:
        return len(self.cells_of_dim(n))

    def validate(self) -> None:
        for c in self.cells:
            for f, _ in c.boundary:
                face = self.by_id.get(f)
                if face is None or face.dim != c.dim - 1:
                    raise MalformedInput(f"cell {c.id}: boundary entry {f!r} is not a {c.dim - 1}-cell")
            if c.dim == 2:
                if c.attach is None:
                    raise MalformedInput(f"2-cell {c.id} needs an attach word")
                for f, _ in c.attach:
                    face = self.by_id.get(f)
                    if face is None or face.dim != 1:
                        raise MalformedInput(f"cell {c.id}: attach letter {f!r} is not a 1-cell")
                if dict(_collect(c.attach)) != dict(c.boundary):
                    raise MalformedInput(f"2-cell {c.id}: boundary disagrees with attach word")
            elif c.attach is not None:
                raise MalformedInput(f"cell {c.id}: attach word only allowed on 2-cells")
        for c in self.cells:
            if c.dim < 2:
                continue
            acc: dict[str, int] = {}
            for f, k in c.boundary:
                for g, j in self.by_id[f].boundary:
                    acc[g] = acc.get(g, 0) + k * j
            if any(acc.values()):
                raise MalformedInput(f"boundary of boundary of {c.id} is nonzero")

    def boundary_columns(self, n: int) -> list[dict[int, int]]:
        """Sparse d_n: one {row index: coefficient} dict per n-cell."""
        pos = self._pos.get(n - 1, {})
        return [{pos[f]: k for f, k in c.boundary} for c in self.cells_of_dim(n)]

    def boundary_matrix(self, n: int) -> IntMatrix:
        """Matrix of d_n: rows are (n-1)-cells, columns n-cells, both in stored order."""
        if n < 0:
            raise ValueError("negative dimension")
        rows, cols = self.count(n - 1), self.count(n)
        data = [[0] * cols for _ in range(rows)]
        pos = self._pos.get(n - 1, {})
        for j, c in enumerate(self.cells_of_dim(n)):
            for f, coeff in c.boundary:
                data[pos[f]][j] += coeff
        return IntMatrix(rows, cols, tuple(tuple(r) for r in data))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.count(n) for n in range(self.top + 1))


def boundary_matrix(c: CellComplex, n: int) -> IntMatrix:
    if not 1 <= n <= max(c.top, 1):
        raise ValueError(f"dimension {n} out of range 1..{c.top}")
    return c.boundary_matrix(n)


def euler_characteristic(c: CellComplex) -> int:
    return c.euler_characteristic()


# --- homology ---------------------------------------------------------------

def _rank_and_factors(c: CellComplex, n: int) -> tuple[int, list[int]]:
    if n < 1 or c.count(n) == 0 or c.count(n - 1) == 0:
        return 0, []
    diag = sparse_invariant_factors(c.boundary_columns(n), c.count(n - 1))
    return len(diag), [d for d in diag if d > 1]


def integral_homology(c: CellComplex, n: int) -> AbelianType:
    if n < 0:
        return AbelianType()
    r_n, _ = _rank_and_factors(c, n)
    r_up, tors = _rank_and_factors(c, n + 1)
    return AbelianType.from_cyclic([0] * (c.count(n) - r_n - r_up) + tors)


def _tensor(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # cyclic orders with 0 = Z
    return [gcd(x, y) for x in a for y in b]


def _tor(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return [gcd(x, y) for x in a for y in b if x and y]


def _hom(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = []
    for x in a:
        for y in b:
            if x == 0:
                out.append(y)
            elif y != 0:
                out.append(gcd(x, y))
    return out


def _ext(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return [x if y == 0 else gcd(x, y) for x in a if x for y in b]


def homology(c: CellComplex, n: int, coeff: AbelianType | None = None) -> AbelianType:
    """H_n(c; A) by universal coefficients from the integral chain complex."""
    coeff = AbelianType(1) if coeff is None else coeff
    A = coeff.cyclic_orders
    return AbelianType.from_cyclic(_tensor(integral_homology(c, n).cyclic_orders, A)
                                   + _tor(integral_homology(c, n - 1).cyclic_orders, A))


def cohomology(c: CellComplex, n: int, coeff: AbelianType | None = None) -> AbelianType:
    """H^n(c; A) = Hom(H_n, A) + Ext(H_{n-1}, A)."""
    coeff = AbelianType(1) if coeff is None else coeff
    A = coeff.cyclic_orders
    return AbelianType.from_cyclic(_hom(integral_homology(c, n).cyclic_orders, A)
                                   + _ext(integral_homology(c, n - 1).cyclic_orders, A))


# --- text format -------------------------------------------------------------

def _signed(tok: str) -> tuple[str, int]:
    if tok.startswith("-"):
        return tok[1:], -1
    return tok.lstrip("+"), 1


def parse_complex_lines(lines: Iterator[str], check: bool = True) -> CellComplex:
    cells: list[dict] = []
    started = False
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not started:
            if toks[0] != "complex":
                raise MalformedInput(f"expected 'complex', got {line!r}")
            started = True
            continue
        head = toks[0]
        if head == "cell":
            if len(toks) != 4 or toks[2] != "dim":
                raise MalformedInput(f"bad cell line {line!r}")
            try:
                dim = int(toks[3])
            except ValueError as e:
                raise MalformedInput(f"bad dimension in {line!r}") from e
            cells.append({"id": toks[1], "dim": dim, "boundary": None, "attach": None})
        elif head in ("boundary", "attach"):
            if not cells:
                raise MalformedInput(f"{head} before any cell")
            if cells[-1][head] is not None:
                raise MalformedInput(f"repeated {head} line for cell {cells[-1]['id']}")
            cells[-1][head] = [_signed(t) for t in toks[1:]]
        elif head == "end":
            break
        else:
            raise MalformedInput(f"unknown complex directive {head!r}")
    else:
        raise MalformedInput("complex block missing 'end'")
    out = []
    for d in cells:
        attach = tuple(d["attach"]) if d["attach"] is not None else None
        terms = d["boundary"]
        if terms is None:
            terms = list(attach) if attach is not None else []
        out.append(Cell(d["id"], d["dim"], _collect(terms), attach))
    return CellComplex(out, check=check)


def parse_complex(text: str, check: bool = True) -> CellComplex:
    return parse_complex_lines(iter(text.splitlines()), check)


def _fmt_signed(cid: str, c: int) -> list[str]:
    tok = cid if c > 0 else "-" + cid
    return [tok] * abs(c)


def format_complex(c: CellComplex) -> str:
    lines = ["complex"]
    for cell in c.cells:
        lines.append(f"cell {cell.id} dim {cell.dim}")
        if cell.boundary:
            lines.append("boundary " + " ".join(t for f, k in cell.boundary for t in _fmt_signed(f, k)))
        if cell.attach is not None:
            lines.append("attach " + " ".join(t for f, k in cell.attach for t in _fmt_signed(f, k)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def one_cell_counts(c: CellComplex) -> Counter:
    return Counter(cell.dim for cell in c.cells)
