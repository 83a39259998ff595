"""Second cohomology of a one-vertex complex and the central extensions it classifies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterator, Sequence

from .abelian import AbelianType, IntMatrix, integer_kernel, lattice_basis, quotient_lattice
from .cellcomplex import Cell, CellComplex
from .presentation import Presentation, abelianization
from .words import Alphabet, MalformedInput, commutator, free_reduce, invert, power


@dataclass(frozen=True)
class Cocycle:
    cells: tuple[str, ...]  # 2-cell ids in complex order
    values: tuple[tuple[int, ...], ...]  # per cell, one coordinate per cyclic summand of A
    coords: tuple[int, ...]  # class coordinates against the H^2 generators

    def value(self, cell: str) -> tuple[int, ...]:
        return self.values[self.cells.index(cell)]


@dataclass(frozen=True)
class H2Generator:
    order: int  # 0 = infinite
    summand: int  # index of the cyclic summand of A it lives in
    rep: tuple[int, ...]  # integer cochain on the 2-cells


@dataclass(frozen=True)
class ExtensionPresentation:
    presentation: Presentation
    class_index: int
    coords: tuple[int, ...]
    cocycle: Cocycle

    @property
    def fingerprint(self) -> AbelianType:
        return abelianization(self.presentation)


def _require_attach(c: CellComplex) -> None:
    if c.count(0) != 1:
        raise MalformedInput(f"expected one vertex, found {c.count(0)}")
    for cell in c.cells_of_dim(2):
        if cell.attach is None:
            raise MalformedInput(f"2-cell {cell.id} has no attach word")


def _canonical_sign(rep: list[int]) -> list[int]:
    first = next((x for x in rep if x), 0)
    return [-x for x in rep] if first < 0 else rep


def h2_generators(c: CellComplex, A: AbelianType) -> list[H2Generator]:
    """Cyclic generators of H^2(c; A), one block per cyclic summand of A."""
    _require_attach(c)
    n2, n3 = c.count(2), c.count(3)
    if n2 == 0:
        return []
    d2 = c.boundary_matrix(2).tolist()  # rows 1-cells, cols 2-cells
    d3 = c.boundary_matrix(3).tolist() if n3 else []  # rows 2-cells, cols 3-cells
    out: list[H2Generator] = []
    for j, m in enumerate(A.cyclic_orders):
        # cocycles: x with d3^T x = 0 mod m
        rows = [[d3[i][t] for i in range(n2)] + [m if u == t else 0 for u in range(n3)] for t in range(n3)]
        if rows:
            kern = integer_kernel(IntMatrix.from_rows(rows, n2 + n3))
            # the projection can be dependent (always, when m = 0)
            Z = lattice_basis([v[:n2] for v in kern], n2)
        else:
            Z = [[int(i == t) for i in range(n2)] for t in range(n2)]
        if not Z:
            continue
        B = [list(r) for r in d2] + ([[m * int(i == t) for i in range(n2)] for t in range(n2)] if m else [])
        for order, rep in quotient_lattice(Z, B):
            if m:
                rep = [x % m for x in rep]
            out.append(H2Generator(order, j, tuple(_canonical_sign(rep) if not m else rep)))
    return out


def h2_type(c: CellComplex, A: AbelianType) -> AbelianType:
    return AbelianType.from_cyclic([g.order for g in h2_generators(c, A)])


def _spiral(x: int) -> int:
    return 2 * abs(x) - (x > 0)


def class_coordinates(orders: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every element of prod Z/orders (0 = Z): free shells by max norm, spiral inside a shell,
    finite part exhausted for each free vector."""
    free = [i for i, o in enumerate(orders) if o == 0]
    finite = [i for i, o in enumerate(orders) if o != 0]
    fin_parts = list(itertools.product(*(range(orders[i]) for i in finite)))
    shell = 0
    while True:
        rng = sorted(range(-shell, shell + 1), key=_spiral)
        vecs = [v for v in itertools.product(rng, repeat=len(free)) if max(map(abs, v), default=0) == shell]
        vecs.sort(key=lambda v: tuple(map(_spiral, v)))
        for v in vecs:
            for f in fin_parts:
                x = [0] * len(orders)
                for i, a in zip(free, v):
                    x[i] = a
                for i, a in zip(finite, f):
                    x[i] = a
                yield tuple(x)
        if not free:
            return
        shell += 1


def cocycle_for(c: CellComplex, A: AbelianType, gens: Sequence[H2Generator], coords: Sequence[int]) -> Cocycle:
    orders = A.cyclic_orders
    cells = tuple(x.id for x in c.cells_of_dim(2))
    vals = [[0] * len(orders) for _ in cells]
    for g, a in zip(gens, coords):
        for i, r in enumerate(g.rep):
            vals[i][g.summand] += a * r
    for v in vals:
        for j, m in enumerate(orders):
            if m:
                v[j] %= m
    return Cocycle(cells, tuple(map(tuple, vals)), tuple(coords))


def h2_classes(c: CellComplex, A: AbelianType) -> Iterator[Cocycle]:
    """One cocycle per class of H^2(c; A), lazily, in the fixed enumeration order."""
    gens = h2_generators(c, A)
    for coords in class_coordinates([g.order for g in gens]):
        yield cocycle_for(c, A, gens, coords)


def is_cocycle(c: CellComplex, A: AbelianType, z: Cocycle) -> bool:
    orders = A.cyclic_orders
    for cell in c.cells_of_dim(3):
        for j, m in enumerate(orders):
            s = sum(k * z.value(f)[j] for f, k in cell.boundary)
            if (s % m if m else s):
                return False
    return True


# --- presentations -----------------------------------------------------------

def coefficient_letters(A: AbelianType) -> list[str]:
    n = len(A.cyclic_orders)
    return [chr(ord("z") - i) for i in range(n)]


def coefficient_presentation(A: AbelianType, letters: Sequence[str] | None = None) -> Presentation:
    letters = list(letters or coefficient_letters(A))
    rels = [power(x, m) for x, m in zip(letters, A.cyclic_orders) if m]
    rels += [commutator(x, y) for x, y in itertools.combinations(letters, 2)]
    return Presentation.make(Alphabet(tuple(letters)), rels)


def generator_letters(c: CellComplex, reserved: Sequence[str] = ()) -> dict[str, str]:
    """Letter naming each 1-cell: its own id when that is a free lowercase letter."""
    ids = [x.id for x in c.cells_of_dim(1)]
    if all(len(i) == 1 and "a" <= i <= "z" and i not in reserved for i in ids):
        return {i: i for i in ids}
    pool = [ch for ch in "abcdefghijklmnopqrstuvwxyz" if ch not in reserved]
    if len(ids) > len(pool):
        raise MalformedInput(f"{len(ids)} one-cells exceed the {len(pool)} free letters")
    return dict(zip(ids, pool))


def attach_word(cell: Cell, names: dict[str, str]) -> str:
    return "".join(names[e] if sg > 0 else names[e].upper() for e, sg in cell.attach)


def extension_presentation(c: CellComplex, z: Cocycle, A: AbelianType,
                           a_letters: Sequence[str] | None = None, class_index: int = -1) -> ExtensionPresentation:
    xs = list(a_letters or coefficient_letters(A))
    names = generator_letters(c, xs)
    S = list(names.values())
    rels = list(coefficient_presentation(A, xs).relators)
    for cell in c.cells_of_dim(2):
        a_i = "".join(power(x, v) for x, v in zip(xs, z.value(cell.id)))
        rels.append(free_reduce(attach_word(cell, names) + invert(a_i)))
    rels += [commutator(x, s) for x in xs for s in S]
    pres = Presentation.make(Alphabet(tuple(S + xs)), rels)
    return ExtensionPresentation(pres, class_index, z.coords, z)


def enumerate_extensions(c: CellComplex, A: AbelianType, limit: int) -> list[ExtensionPresentation]:
    if limit < 1:
        raise ValueError("limit must be positive")
    out = []
    for i, z in enumerate(itertools.islice(h2_classes(c, A), limit)):
        out.append(extension_presentation(c, z, A, class_index=i))
    return out


def reorient(c: CellComplex, cell_id: str, shift: int = 0, flip: bool = False) -> CellComplex:
    """Same complex with one 2-cell's attach word rotated by `shift` and optionally reversed."""
    cells = []
    for cell in c.cells:
        if cell.id == cell_id:
            if cell.dim != 2:
                raise ValueError(f"{cell_id} is not a 2-cell")
            w = list(cell.attach)
            if w:
                s = shift % len(w)
                w = w[s:] + w[:s]
            if flip:
                w = [(e, -k) for e, k in reversed(w)]
            cells.append(replace(cell, attach=tuple(w), boundary=tuple((f, -k if flip else k) for f, k in cell.boundary)))
        elif flip and cell.dim == 3:
            cells.append(replace(cell, boundary=tuple((f, -k if f == cell_id else k) for f, k in cell.boundary)))
        else:
            cells.append(cell)
    return CellComplex(cells)
