"""Exact integer matrices, Smith normal form, and finitely generated abelian groups.

Everything here uses Python ints; no floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

Matrix = list[list[int]]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def tolist(self) -> Matrix:
        return [list(r) for r in self.entries]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.T.entries
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in ot) for r in self.entries))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]


def _as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix.from_rows(M)


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with D = U @ M @ V in Smith normal form.

    U and V are unimodular.  Pivots are the smallest nonzero absolute value,
    ties broken by lowest (row, col).
    """
    M = _as_matrix(M)
    m, n = M.rows, M.cols
    D = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in D:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(D[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            # remainders left behind: move the smallest to the pivot and repeat
            best = None
            for i in range(t + 1, m):
                x = abs(D[i][t])
                if x and (best is None or x < best[0]):
                    best = (x, i, None)
            for j in range(t + 1, n):
                x = abs(D[t][j])
                if x and (best is None or x < best[0]):
                    best = (x, None, j)
            if best is not None:
                done = False
                if best[1] is not None:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
                continue
            p = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(t, bad, 1)
                done = False
            if done:
                break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return (IntMatrix.from_rows(D, n), IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n))


def determinant(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = _as_matrix(M).tolist()
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


@dataclass(frozen=True, order=True)
class AbelianType:
    """Z^rank + Z/d1 + ... + Z/dt with d1 | d2 | ... | dt, each >= 2."""

    rank: int = 0
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        if self.rank < 0 or any(d < 2 for d in self.factors):
            raise ValueError(f"invalid abelian type {self.rank}, {self.factors}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"factors {self.factors} violate the divisibility chain")

    @classmethod
    def from_cyclic(cls, orders: Sequence[int]) -> "AbelianType":
        """Normalize a direct sum of cyclic groups; order 0 means Z, 1 is trivial."""
        orders = [abs(int(o)) for o in orders]
        rank = orders.count(0)
        tors = [o for o in orders if o > 1]
        t = classify(IntMatrix.from_rows([[o if i == j else 0 for j in range(len(tors))]
                                          for i, o in enumerate(tors)], len(tors)))
        return cls(rank, t.factors)

    @classmethod
    def parse(cls, s: str) -> "AbelianType":
        s = s.strip().replace(" ", "")
        if s in ("0", "1", ""):
            return cls()
        orders = []
        for part in s.split("+"):
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                orders += [0] * int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)(?:\^(\d+))?", part)
            if m:
                orders += [int(m.group(1))] * int(m.group(2) or 1)
                continue
            m = re.fullmatch(r"\(Z/(\d+)\)\^(\d+)", part)
            if m:
                orders += [int(m.group(1))] * int(m.group(2))
                continue
            raise ValueError(f"cannot parse abelian group {s!r}")
        return cls.from_cyclic(orders)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.factors

    @property
    def cyclic_orders(self) -> list[int]:
        """Orders of the SNF summands; 0 stands for Z."""
        return list(self.factors) + [0] * self.rank

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.factors]
        return " + ".join(parts) if parts else "0"


def classify(relation_matrix, cols: int | None = None) -> AbelianType:
    """Type of Z^cols / (row span of the relation matrix)."""
    if not isinstance(relation_matrix, IntMatrix):
        relation_matrix = IntMatrix.from_rows(relation_matrix, cols)
    D, _, _ = smith_normal_form(relation_matrix)
    diag = [x for x in D.diagonal() if x]
    return AbelianType(relation_matrix.cols - len(diag), tuple(x for x in diag if x > 1))


def abelian_iso(a: AbelianType, b: AbelianType) -> bool:
    return a.rank == b.rank and tuple(a.factors) == tuple(b.factors)


def determinantal_divisors(M) -> list[int]:
    """gcd of all k x k minors for k = 1..min(rows, cols); test oracle for SNF."""
    from itertools import combinations

    M = _as_matrix(M)
    out = []
    for k in range(1, min(M.rows, M.cols) + 1):
        g = 0
        for rs in combinations(range(M.rows), k):
            for cs in combinations(range(M.cols), k):
                g = gcd(g, determinant([[M[i, j] for j in cs] for i in rs]))
        out.append(g)
    return out


def abelian_types() -> Iterator[AbelianType]:
    """Every f.g. abelian group exactly once: by weight rank + sum(d - 1), then rank descending."""
    def chains(budget: int, lo: int) -> Iterator[tuple[int, ...]]:
        # divisibility chains d1 | d2 | ... with sum(d - 1) == budget and d1 a multiple of lo
        if budget == 0:
            yield ()
            return
        d = lo
        while d - 1 <= budget:
            if d >= 2:
                for rest in chains(budget - (d - 1), d):
                    yield (d,) + rest
            d += lo
    w = 0
    while True:
        for r in range(w, -1, -1):
            for fs in chains(w - r, 1):
                yield AbelianType(r, fs)
        w += 1


# --- lattice utilities ------------------------------------------------------

def integer_kernel(M, cols: int | None = None) -> list[list[int]]:
    """Basis of {x in Z^cols : M x = 0}."""
    M = M if isinstance(M, IntMatrix) else IntMatrix.from_rows(M, cols)
    D, _, V = smith_normal_form(M)
    r = sum(1 for x in D.diagonal() if x)
    return [[V[i, j] for i in range(M.cols)] for j in range(r, M.cols)]


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Basis of the sublattice of Z^dim spanned by the given vectors."""
    if not gens:
        return []
    G = IntMatrix.from_rows(gens, dim).T  # columns are generators
    D, U, _ = smith_normal_form(G)
    Uinv = unimodular_inverse(U)
    out = []
    for i, d in enumerate(D.diagonal()):
        if d:
            out.append([Uinv[r, i] * d for r in range(dim)])
    return out


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    n = U.rows
    D, P, Q = smith_normal_form(U)
    # D = P U Q with D = I, so U^-1 = Q P
    if D.diagonal() != [1] * n:
        raise ValueError("matrix is not unimodular")
    return Q @ P


def solve_in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates y with sum y_i basis_i = v, or None when v is not in the lattice."""
    dim = len(v)
    if not basis:
        return [] if all(x == 0 for x in v) else None
    B = IntMatrix.from_rows(basis, dim).T
    D, U, V = smith_normal_form(B)
    Uv = [sum(U[i, j] * v[j] for j in range(dim)) for i in range(dim)]
    z = [0] * B.cols
    diag = D.diagonal()
    for i in range(dim):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if Uv[i]:
                return None
        else:
            if Uv[i] % d:
                return None
            z[i] = Uv[i] // d
    return [sum(V[i, j] * z[j] for j in range(B.cols)) for i in range(B.cols)]


def quotient_lattice(Z_basis: Sequence[Sequence[int]], N_gens: Sequence[Sequence[int]]):
    """Structure of Z/N for lattices N <= Z (Z given by a basis).

    Returns a list of (order, representative) pairs, one per nontrivial cyclic
    summand; order 0 means infinite cyclic.  Representatives live in the
    ambient Z^dim.
    """
    if not Z_basis:
        return []
    dim = len(Z_basis[0])
    coords = []
    for g in N_gens:
        y = solve_in_lattice(Z_basis, g)
        if y is None:
            raise ValueError("relation vector outside the cycle lattice")
        coords.append(y)
    z = len(Z_basis)
    R = IntMatrix.from_rows(coords, z) if coords else IntMatrix.zeros(0, z)
    D, _, V = smith_normal_form(R)
    Vinv = unimodular_inverse(V)
    diag = D.diagonal() + [0] * (z - len(D.diagonal()))
    out = []
    for j in range(z):
        d = diag[j]
        if d == 1:
            continue
        # row j of V^-1 is the j-th SNF generator in Z-basis coordinates
        rep = [sum(Vinv[j, i] * Z_basis[i][c] for i in range(z)) for c in range(dim)]
        out.append((d, rep))
    # torsion summands first, ascending, then free ones (matches AbelianType layout)
    out.sort(key=lambda t: (t[0] == 0, t[0]))
    return out


def sparse_invariant_factors(columns: Sequence[dict], nrows: int) -> list[int]:
    """Nonzero SNF diagonal of a sparse integer matrix given as column dicts {row: value}.

    Unit pivots are eliminated sparsely (fewest-entries first); the leftover block,
    if any, goes through the dense Smith normal form.
    """
    R: dict[int, dict[int, int]] = {}
    C: dict[int, set[int]] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                R.setdefault(r, {})[c] = v
                C.setdefault(c, set()).add(r)
    ones = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(C, key=lambda c: len(C[c])):
            rows = C.get(c)
            if not rows:
                C.pop(c, None)
                continue
            units = [r for r in rows if abs(R[r][c]) == 1]
            if not units:
                continue
            p = min(units, key=lambda r: (len(R[r]), r))
            prow = R[p]
            sign = prow[c]
            for r in list(rows):
                if r == p:
                    continue
                f = R[r][c] * sign
                row = R[r]
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        row[j] = nv
                        C.setdefault(j, set()).add(r)
                    else:
                        row.pop(j, None)
                        C[j].discard(r)
                if not row:
                    del R[r]
            for j in prow:
                C[j].discard(p)
            del R[p]
            C.pop(c, None)
            ones += 1
            progress = True
    live_rows = sorted(r for r in R if R[r])
    live_cols = sorted(c for c in C if C[c])
    out = [1] * ones
    if live_rows and live_cols:
        ri = {r: i for i, r in enumerate(live_rows)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for j, c in enumerate(live_cols):
            for r in C[c]:
                dense[ri[r]][j] = R[r][c]
        D, _, _ = smith_normal_form(IntMatrix.from_rows(dense, len(live_cols)))
        out += [abs(d) for d in D.diagonal() if d]
    return sorted(out)
