"""Skeleta of classifying spaces from labelled cubes.

Edge labels are reduced words, plus three special labels:

* ``""``  the empty label (the edge maps onto the empty-word 1-cell),
* ``"~"`` the empty label read backwards (the same 1-cell with reversed orientation),
* ``"*"`` the collapsing label (the edge maps to the vertex).

Keeping the empty label oriented means reversing an edge is never a no-op, so a
1-cell is never identified with its own reverse.

Cubes of dimension n have vertices 0..2^n-1 (bit i is coordinate i); edges are listed
for each direction i, over the vertices with bit i clear in increasing order.  For a
square that gives (bottom, top, left, right) and the boundary word
bottom . right . top^-1 . left^-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .automatic import AutomaticStructure, BudgetExceeded
from .cellcomplex import Cell, CellComplex, _collect
from .words import invert, reduced_words_upto

EMPTY, EMPTY_REV, STAR = "", "~", "*"
SPECIAL = (EMPTY, EMPTY_REV, STAR)
MAX_CUBE_DIM = 3


class UnsupportedDimension(ValueError):
    pass


def label_inverse(label: str) -> str:
    if label == EMPTY:
        return EMPTY_REV
    if label == EMPTY_REV:
        return EMPTY
    if label == STAR:
        return STAR
    return invert(label)


def label_word(label: str) -> str:
    return "" if label in SPECIAL else label


def show_label(label: str) -> str:
    return {EMPTY: "1", EMPTY_REV: "1~", STAR: "*"}.get(label, label)


# --- cube geometry --------------------------------------------------------------

@dataclass(frozen=True)
class CubeGeometry:
    n: int
    edges: tuple[tuple[int, int, int], ...]  # (tail, head, direction)
    faces: dict  # (axis, side) -> tuple of edge indices in the face's own order
    sym_src: np.ndarray  # (S, E): source edge for each target edge
    sym_flip: np.ndarray  # (S, E): True where the edge direction is reversed
    sym_det: np.ndarray  # (S,)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def _edges(n: int) -> list[tuple[int, int, int]]:
    return [(u, u | (1 << i), i) for i in range(n) for u in range(1 << n) if not u & (1 << i)]


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def cube_geometry(n: int) -> CubeGeometry:
    edges = _edges(n)
    index = {(u, i): k for k, (u, _, i) in enumerate(edges)}
    faces = {}
    for axis in range(n):
        rest = [j for j in range(n) if j != axis]
        for side in (0, 1):
            def embed(y, rest=rest, axis=axis, side=side):
                v = side << axis
                for b, j in enumerate(rest):
                    if y >> b & 1:
                        v |= 1 << j
                return v
            order = []
            for fi in range(n - 1):
                for y in range(1 << (n - 1)):
                    if not y & (1 << fi):
                        order.append(index[(embed(y), rest[fi])])
            faces[(axis, side)] = tuple(order)
    srcs, flips, dets = [], [], []
    for perm in permutations(range(n)):
        for mask in range(1 << n):
            def phi(u, perm=perm, mask=mask):
                v = 0
                for i in range(n):
                    if u >> i & 1:
                        v |= 1 << perm[i]
                return v ^ mask
            src = [0] * len(edges)
            flip = [False] * len(edges)
            for k, (u, w, i) in enumerate(edges):
                j = perm[i]
                pu, pw = phi(u), phi(w)
                if pu >> j & 1:
                    target = index[(pw, j)]
                    flip[target] = True
                else:
                    target = index[(pu, j)]
                src[target] = k
            srcs.append(src)
            flips.append(flip)
            dets.append(_perm_sign(perm) * (-1) ** bin(mask).count("1"))
    return CubeGeometry(n, tuple(edges), faces, np.array(srcs, dtype=np.int64).reshape(len(srcs), len(edges)),
                        np.array(flips, dtype=bool).reshape(len(srcs), len(edges)), np.array(dets))


# --- label tables and canonical forms ---------------------------------------------

class LabelTable:
    """Integer codes for labels; code order is the serialization order for canonical forms."""

    def __init__(self, labels: Sequence[str]):
        labels = list(labels)
        for x in labels:
            if label_inverse(x) not in labels:
                labels.append(label_inverse(x))
        self.labels = tuple(labels)
        self.code = {x: i for i, x in enumerate(self.labels)}
        self.inv = np.array([self.code[label_inverse(x)] for x in self.labels], dtype=np.int64)
        self.base = len(self.labels)

    def encode(self, labelling: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.code[x] for x in labelling)

    def decode(self, codes: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[int(c)] for c in codes)


@dataclass
class Canonical:
    codes: np.ndarray  # (N,) canonical integer key
    sign: np.ndarray  # (N,) +1/-1 orientation of the input relative to the representative; 0 if folded
    rep: np.ndarray  # (N, E) canonical representative labellings
    stab: np.ndarray  # (N,) order of the stabilizer of the representative


def canonicalize(arr: np.ndarray, geom: CubeGeometry, table: LabelTable) -> Canonical:
    """Minimum over cube symmetries of the serialized labelling, per row.

    A labelling fixed (up to its canonical form) by an orientation-reversing symmetry
    is folded: it gets sign 0 and contributes nothing to chains.
    """
    arr = np.asarray(arr, dtype=np.int64).reshape(-1, geom.n_edges)
    E = geom.n_edges
    if table.base ** E >= 2 ** 62:
        raise BudgetExceeded(f"label alphabet of size {table.base} too large to serialize {E} edges")
    weights = table.base ** np.arange(E - 1, -1, -1, dtype=np.int64)
    N = arr.shape[0]
    best = {1: np.full(N, np.iinfo(np.int64).max), -1: np.full(N, np.iinfo(np.int64).max)}
    best_sym = {1: np.zeros(N, dtype=np.int64), -1: np.zeros(N, dtype=np.int64)}
    for s in range(geom.sym_src.shape[0]):
        t = arr[:, geom.sym_src[s]]
        t = np.where(geom.sym_flip[s], table.inv[t], t)
        code = t @ weights
        d = int(geom.sym_det[s])
        better = code < best[d]
        best[d] = np.where(better, code, best[d])
        best_sym[d] = np.where(better, s, best_sym[d])
    codes = np.minimum(best[1], best[-1])
    sign = np.where(best[1] < best[-1], 1, -1)
    sign = np.where(best[1] == best[-1], 0, sign)
    rep = (codes[:, None] // weights[None, :]) % table.base
    stab = np.zeros(N, dtype=np.int64)
    for s in range(geom.sym_src.shape[0]):
        t = arr[:, geom.sym_src[s]]
        t = np.where(geom.sym_flip[s], table.inv[t], t)
        stab += (t @ weights) == codes
    return Canonical(codes, sign, rep, stab)


def apply_symmetry(labelling: Sequence[str], geom: CubeGeometry, s: int) -> tuple[str, ...]:
    out = []
    for k in range(geom.n_edges):
        x = labelling[geom.sym_src[s][k]]
        out.append(label_inverse(x) if geom.sym_flip[s][k] else x)
    return tuple(out)


def face_labelling(labelling: Sequence, geom: CubeGeometry, axis: int, side: int) -> tuple:
    return tuple(labelling[k] for k in geom.faces[(axis, side)])


def face_sign(axis: int, side: int) -> int:
    """Coefficient of the face x_axis = side in the cube boundary."""
    return (-1) ** (axis + side + 1)


# --- sensible labellings -------------------------------------------------------------

@dataclass(frozen=True)
class LabelledCube:
    dim: int
    labels: tuple[str, ...]

    def __str__(self):
        return "(" + ", ".join(show_label(x) for x in self.labels) + ")"


def word_labels(s: AutomaticStructure, magnitude: int, restrict: Iterable[str] | None = None) -> list[str]:
    words = [w for w in reduced_words_upto(s.alphabet, magnitude) if w]
    if restrict is not None:
        allowed = set()
        for w in restrict:
            allowed.update((w, invert(w)))
        words = [w for w in words if w in allowed]
    return [EMPTY, EMPTY_REV] + words


def _sensible_rows(s: AutomaticStructure, n: int, labels: Sequence[str], table: LabelTable,
                   max_rows: int) -> np.ndarray:
    """All sensible labellings of the n-cube over ``labels``, as code rows.

    A labelling is sensible exactly when the edge labels are differences of a vertex
    potential g (label(u->v) = g(u)^-1 g(v)), so potentials are enumerated first.
    """
    geom = cube_geometry(n)
    by_elem: dict[str, list[int]] = {}
    for x in labels:
        by_elem.setdefault(s.normal_form(label_word(x)), []).append(table.code[x])
    diffs = list(by_elem)
    step: dict[tuple[str, str], str] = {}

    def mul(g, d):
        key = (g, d)
        if key not in step:
            step[key] = s.normal_form(g + d)
        return step[key]

    quotient: dict[tuple[str, str], str] = {}

    def diff(g, h):
        key = (g, h)
        if key not in quotient:
            quotient[key] = s.normal_form(invert(g) + h)
        return quotient[key]

    V = 1 << n
    edge_of = {(u, w): k for k, (u, w, _) in enumerate(geom.edges)}
    rows: list[np.ndarray] = []
    total = 0
    g = [""] * V

    def rec(v):
        nonlocal total
        if v == V:
            choices = [by_elem[diff(g[u], g[w])] for (u, w, _) in geom.edges]
            block = np.array(list(product(*choices)), dtype=np.int64).reshape(-1, geom.n_edges)
            total += block.shape[0]
            if total > max_rows:
                raise BudgetExceeded(f"more than {max_rows} sensible {n}-cube labellings")
            rows.append(block)
            return
        low = v & -v
        base = g[v ^ low]
        for d in diffs:
            h = mul(base, d)
            ok = True
            for i in range(n):
                bit = 1 << i
                if v & bit and bit != low:
                    if diff(g[v ^ bit], h) not in by_elem:
                        ok = False
                        break
            if ok:
                g[v] = h
                rec(v + 1)

    rec(1)
    del edge_of
    if not rows:
        return np.zeros((0, geom.n_edges), dtype=np.int64)
    return np.concatenate(rows)


def sensible_labellings(s: AutomaticStructure, magnitude: int, dim: int,
                        restrict: Iterable[str] | None = None, max_rows: int = 5_000_000) -> list[LabelledCube]:
    """One representative per symmetry class of sensible labellings (folded classes included)."""
    if dim > MAX_CUBE_DIM:
        raise UnsupportedDimension(f"cube dimension {dim} > {MAX_CUBE_DIM} is not supported")
    labels = word_labels(s, magnitude, restrict)
    table = LabelTable(labels)
    rows = _sensible_rows(s, dim, labels, table, max_rows)
    can = canonicalize(rows, cube_geometry(dim), table)
    _, first = np.unique(can.codes, return_index=True)
    return [LabelledCube(dim, table.decode(can.rep[i])) for i in sorted(first, key=lambda i: can.codes[i])]


# --- contraction search ---------------------------------------------------------------

@dataclass
class Contraction:
    """Layers from the input loop (layer 0) down to the identity layer.

    ``horizontal[j][i]`` labels the edge from vertex i to vertex i+1 in layer j;
    ``vertical[j][i]`` labels the edge from vertex i of layer j+1 (inner) to layer j (outer).
    """

    layers: list[tuple[str, ...]]
    horizontal: list[tuple[str, ...]]
    vertical: list[tuple[str, ...]]

    def squares(self) -> list[tuple[str, str, str, str]]:
        """Strip squares (bottom=inner, top=outer, left, right), followed by the collapsing cap."""
        out = []
        m = len(self.layers[0])
        for j in range(len(self.layers) - 1):
            for i in range(m):
                out.append((self.horizontal[j + 1][i], self.horizontal[j][i],
                            self.vertical[j][i], self.vertical[j][(i + 1) % m]))
        for i in range(m):
            out.append((STAR, self.horizontal[-1][i], STAR, STAR))
        return out


def _shortest_word(s: AutomaticStructure, g: str, h: str) -> str:
    """Shortlex-least geodesic word for g^-1 h."""
    return s.geodesic(invert(g) + h)


def lipschitz_contraction(s: AutomaticStructure, S: Iterable[str], n: int) -> dict[str, str]:
    """H_S(g, n): the length-n prefix of the normal form of g."""
    out = {}
    for g in S:
        u = s.normal_form(g)
        out[g] = s.normal_form(u[:n])
    return out


def contraction_search(s: AutomaticStructure, loop: Sequence[str], k: int, N_max: int = 100_000) -> Contraction:
    """Contract a closed loop of edge labels to the basepoint through layers of short edges.

    Each step moves every vertex by one letter or not at all; inner horizontal edges must
    have length <= k.  The prefix combing is tried first, then breadth-first search.
    """
    loop = tuple(loop)
    m = len(loop)
    verts = [""]
    for x in loop:
        verts.append(s.normal_form(verts[-1] + label_word(x)))
    if verts[-1] != "":
        raise ValueError("boundary loop is not closed in the group")
    top = tuple(verts[:-1])
    if m == 0:
        return Contraction([()], [()], [])

    def horiz(layer):
        return tuple(_shortest_word(s, layer[i], layer[(i + 1) % m]) for i in range(m))

    def valid(layer):
        return all(len(w) <= k for w in horiz(layer))

    def finish(layers):
        hs = [loop] + [horiz(L) for L in layers[1:]]
        vs = []
        for j in range(len(layers) - 1):
            vs.append(tuple(_shortest_word(s, layers[j + 1][i], layers[j][i]) for i in range(m)))
        return Contraction(list(layers), hs, vs)

    N = max(len(g) for g in top)
    layers = [top]
    for n in range(N - 1, -1, -1):
        nxt = tuple(s.normal_form(g[:n]) for g in top)
        if nxt != layers[-1]:
            layers.append(nxt)
    if all(valid(L) for L in layers[1:]):
        return finish(layers)
    # breadth-first search over layers
    goal = tuple([""] * m)
    parent = {top: None}
    frontier = [top]
    steps = 0
    moves = ("",) + s.symbols
    while frontier:
        nxt_frontier = []
        for layer in frontier:
            options = [sorted({s.normal_form(g + y) for y in moves}, key=s.alphabet.key) for g in layer]
            options[0] = [""] if layer[0] == "" else options[0]
            for cand in product(*options):
                steps += 1
                if steps > N_max:
                    bound = (len(s.symbols) + 1) ** (k * m)
                    raise BudgetExceeded(f"contraction search stopped after N={N_max} candidate layers "
                                         f"(a-priori bound (|A|+1)^(k|w|) = {bound})")
                if cand in parent or cand == layer or not valid(cand):
                    continue
                parent[cand] = layer
                if cand == goal:
                    path = [cand]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return finish(path[::-1])
                nxt_frontier.append(cand)
        frontier = nxt_frontier
    raise BudgetExceeded("contraction search exhausted without reaching the basepoint")


# --- skeleton builder -------------------------------------------------------------------

VITAL, INFLATED, DEGENERATE, TRANSLATION = "vital", "inflated", "degenerate", "translation"


@dataclass
class ClassRecord:
    id: str | None  # None for folded classes, which carry no chain cell
    labels: tuple[str, ...]
    stratum: str
    stab: int = 1  # orientation-preserving stabilizer; the cell is the cube modulo it


@dataclass
class SkeletonBuild:
    complex: CellComplex
    strata: dict[str, str]
    k: int
    d: int
    letters: tuple[str, ...]
    faithful: bool = True
    folded: dict = field(default_factory=dict)  # dim -> number of folded classes
    registry: dict = field(default_factory=dict)  # dim -> {canonical code: ClassRecord}
    table: LabelTable | None = None
    labels_of: dict = field(default_factory=dict)  # cell id -> labels (cube cells only)

    def counts(self) -> dict[tuple[int, str], int]:
        out: dict[tuple[int, str], int] = {}
        for cid, st in self.strata.items():
            key = (self.complex.by_id[cid].dim, st)
            out[key] = out.get(key, 0) + 1
        return out

    def report(self) -> str:
        lines = [f"skeleton build: k={self.k} d={self.d} generators={' '.join(self.letters)}"]
        if not self.faithful:
            lines.append("NON-FAITHFUL: labels restricted; this is a subcomplex, not the full skeleton")
        counts = self.counts()
        for n in range(self.complex.top + 1):
            parts = [f"{st}={counts.get((n, st), 0)}" for st in (VITAL, INFLATED, DEGENERATE, TRANSLATION)]
            lines.append(f"dim {n}: " + " ".join(parts) + f" folded={self.folded.get(n, 0)}")
        lines.append("all-* faces collapse to the vertex; folded classes carry no cell")
        return "\n".join(lines) + "\n"


def _degenerate_rows(n: int, table: LabelTable) -> np.ndarray:
    geom = cube_geometry(n)
    E = geom.n_edges
    alphabet = np.array([table.code[EMPTY], table.code[EMPTY_REV], table.code[STAR]], dtype=np.int64)
    idx = np.arange(3 ** E, dtype=np.int64)
    digits = (idx[:, None] // (3 ** np.arange(E - 1, -1, -1, dtype=np.int64))[None, :]) % 3
    rows = alphabet[digits]
    star = rows == table.code[STAR]
    keep = star.any(axis=1) & ~star.all(axis=1)
    return rows[keep]


def _stratum(labels: Sequence[str], n: int, k: int) -> str:
    if STAR in labels:
        return DEGENERATE
    if max(len(label_word(x)) for x in labels) <= k ** (n - 1):
        return VITAL
    return INFLATED


def build_skeleton(s: AutomaticStructure, k: int, d: int, restrict: Iterable[str] | None = None,
                   max_rows: int = 5_000_000, contraction_budget: int = 100_000) -> SkeletonBuild:
    """Cells up to dimension d+1 from labellings of magnitude k^d, plus translation cells."""
    top = d + 1
    if top > MAX_CUBE_DIM:
        raise UnsupportedDimension(f"d+1 = {top} exceeds the supported cube dimension {MAX_CUBE_DIM}")
    if k < 1 or d < 0:
        raise ValueError("need k >= 1 and d >= 0")
    restrict = list(restrict) if restrict is not None else None
    mag = k ** d
    words = word_labels(s, mag, restrict)
    table = LabelTable(words + [STAR])
    cells: list[Cell] = [Cell("v", 0)]
    strata: dict[str, str] = {}
    registry: dict[int, dict[int, ClassRecord]] = {}
    folded: dict[int, int] = {}
    labels_of: dict[str, tuple[str, ...]] = {}

    def lookup(n: int, rows: np.ndarray):
        """(cell id or None, degree) per row of n-cube labellings.

        The degree of a cube onto its quotient cell is the sign times the stabilizer order.
        """
        if n == 0:
            return [("v", 1)] * len(rows)
        can = canonicalize(rows, cube_geometry(n), table)
        out = []
        for code, sg in zip(can.codes.tolist(), can.sign.tolist()):
            rec = registry[n].get(code)
            if rec is None:
                # all-* labellings collapse; anything else is a closure failure
                out.append((None, 0))
            else:
                out.append((rec.id, sg * rec.stab if rec.id is not None else 0))
        return out

    def edge_term(label: str):
        if label == STAR:
            return None
        cid, sg = lookup(1, np.array([[table.code[label]]]))[0]
        if cid is None:
            raise KeyError(f"edge label {label!r} has no 1-cell")
        return cid, sg

    for n in range(1, top + 1):
        geom = cube_geometry(n)
        try:
            rows = _sensible_rows(s, n, words, table, max_rows)
        except BudgetExceeded as e:
            raise BudgetExceeded(f"stratum inflated dim {n}: {e}") from None
        if n >= 2:
            rows = np.concatenate([rows, _degenerate_rows(n, table)])
        can = canonicalize(rows, geom, table)
        codes, first = np.unique(can.codes, return_index=True)
        reg: dict[int, ClassRecord] = {}
        count = 0
        nfold = 0
        for code, i in zip(codes.tolist(), first.tolist()):
            labels = table.decode(can.rep[i])
            stratum = _stratum(labels, n, k)
            if can.sign[i] == 0:
                reg[code] = ClassRecord(None, labels, stratum)
                nfold += 1
                continue
            cid = f"c{n}_{count}" if n > 1 else _edge_id(labels[0])
            count += 1
            reg[code] = ClassRecord(cid, labels, stratum, int(can.stab[i]))
        registry[n] = reg
        folded[n] = nfold
        # boundaries
        live = [(code, rec) for code, rec in reg.items() if rec.id is not None]
        if n == 1:
            for _, rec in live:
                cells.append(Cell(rec.id, 1))
                strata[rec.id] = rec.stratum
                labels_of[rec.id] = rec.labels
            continue
        if n == 2:
            for _, rec in live:
                b, t, l, r = rec.labels
                attach = []
                loop = ((b, 1), (r, 1), (t, -1), (l, -1))
                # a rotation stabilizer makes the loop periodic; the quotient disk reads one
                # period, which is only legitimate when that period is itself a relation
                if rec.stab > 1:
                    piece = "".join(label_word(x) if sg > 0 else invert(label_word(x))
                                    for x, sg in loop[: 4 // rec.stab] if x != STAR)
                    if not s.is_trivial(piece):
                        rec.stab = 1
                for lab, sg in loop[: 4 // rec.stab]:
                    term = edge_term(lab)
                    if term is not None:
                        attach.append((term[0], term[1] * sg))
                attach_t = tuple(attach)
                cells.append(Cell(rec.id, 2, _collect(attach_t), attach_t))
                strata[rec.id] = rec.stratum
                labels_of[rec.id] = rec.labels
        else:
            face_rows = []
            meta = []
            for ci, (_, rec) in enumerate(live):
                enc = table.encode(rec.labels)
                for (axis, side), idxs in geom.faces.items():
                    face_rows.append([enc[j] for j in idxs])
                    meta.append((ci, face_sign(axis, side)))
            found = lookup(n - 1, np.array(face_rows, dtype=np.int64)) if face_rows else []
            terms: list[list[tuple[str, int]]] = [[] for _ in live]
            for (ci, fs), (fid, sg) in zip(meta, found):
                if fid is not None and sg:
                    terms[ci].append((fid, fs * sg))
            for (_, rec), t in zip(live, terms):
                cells.append(Cell(rec.id, n, _quotient(rec, _collect(t))))
                strata[rec.id] = rec.stratum
                labels_of[rec.id] = rec.labels
        if n == 2:
            _add_translation_2cells(s, registry, cells, strata, edge_term, k)
        if n == 3:
            _add_translation_3cells(s, registry, cells, strata, edge_term, lookup, table, k, contraction_budget)

    cx = CellComplex(cells)
    return SkeletonBuild(cx, strata, k, d, s.alphabet.letters, restrict is None, folded, registry, table, labels_of)


def _quotient(rec: ClassRecord, terms):
    # faces kept as full cubes (torsion) can break divisibility; keep this cube full too
    if any(c % rec.stab for _, c in terms):
        rec.stab = 1
    return tuple((f, c // rec.stab) for f, c in terms)


def _edge_id(label: str) -> str:
    return "e1" if label in (EMPTY, EMPTY_REV) else "e" + label


def _add_translation_2cells(s, registry, cells, strata, edge_term, k):
    count = 0
    for rec in registry[1].values():
        w = rec.labels[0]
        if rec.id is None or len(label_word(w)) < 2:
            continue
        attach = [edge_term(w), edge_term(EMPTY)]
        for x in reversed(w):
            cid, sg = edge_term(x)
            attach.append((cid, -sg))
        cid, sg = edge_term(EMPTY)
        attach.append((cid, -sg))
        tid = f"t2_{count}"
        count += 1
        attach_t = tuple(attach)
        cells.append(Cell(tid, 2, _collect(attach_t), attach_t))
        strata[tid] = TRANSLATION
        rec.translation = tid  # type: ignore[attr-defined]


def _translation_chain(registry, edge_term, label: str) -> list[tuple[str, int]]:
    """Side face over an edge: the translation 2-cell (signed) or a constant square."""
    if len(label_word(label)) >= 2:
        cid, sg = edge_term(label)
        rec = next(r for r in registry[1].values() if r.id == cid)
        return [(rec.translation, sg)]
    return [("square", label)]  # resolved by the caller


def _loop_letters(labels: Sequence[str]) -> list[str]:
    b, t, l, r = labels
    out: list[str] = []
    for lab, forward in ((b, True), (r, True), (t, False), (l, False)):
        lab = lab if forward else label_inverse(lab)
        if lab in SPECIAL:
            out.append(lab)
        else:
            out.extend(lab)
    return out


def _add_translation_3cells(s, registry, cells, strata, edge_term, lookup, table, k, budget):
    by_id = {c.id: c for c in cells}
    count = 0
    for rec in list(registry[2].values()):
        if rec.id is None or rec.stratum != INFLATED:
            continue
        terms: list[tuple[str, int]] = [(rec.id, rec.stab)]
        b, t, l, r = rec.labels
        for lab, o in ((b, 1), (r, 1), (t, -1), (l, -1)):
            if len(label_word(lab)) >= 2:
                cid, sg = edge_term(lab)
                trans = next(x for x in registry[1].values() if x.id == cid).translation
                terms.append((trans, -o * sg))
            else:
                sq = np.array([table.encode((lab, lab, EMPTY, EMPTY))], dtype=np.int64)
                fid, sg = lookup(2, sq)[0]
                if fid is not None and sg:
                    terms.append((fid, -o * sg))
        loop = _loop_letters(rec.labels)
        try:
            con = contraction_search(s, loop, k, budget)
        except BudgetExceeded as e:
            raise BudgetExceeded(f"stratum translation dim 3 (cell {rec.id}): {e}") from None
        squares = con.squares()
        try:
            rows = np.array([table.encode(sq) for sq in squares], dtype=np.int64)
        except KeyError as e:
            raise BudgetExceeded(f"stratum translation dim 3: contraction label {e} outside the label set") from None
        disk: dict[str, int] = {}
        for fid, sg in lookup(2, rows):
            if fid is not None and sg:
                disk[fid] = disk.get(fid, 0) + sg
        target: dict[str, int] = {}
        for lab in loop:
            term = edge_term(lab)
            if term is not None:
                target[term[0]] = target.get(term[0], 0) + term[1]
        got: dict[str, int] = {}
        for fid, c in disk.items():
            for e, j in by_id[fid].boundary:
                got[e] = got.get(e, 0) + c * j
        got = {e: c for e, c in got.items() if c}
        target = {e: c for e, c in target.items() if c}
        if got == target:
            sign = 1
        elif got == {e: -c for e, c in target.items()}:
            sign = -1
        else:
            raise RuntimeError(f"contraction disk for {rec.id} does not bound its loop")
        terms += [(fid, -sign * c) for fid, c in disk.items()]
        tid = f"t3_{count}"
        count += 1
        cell = Cell(tid, 3, _collect(terms))
        cells.append(cell)
        strata[tid] = TRANSLATION


def check_face_closure(build: SkeletonBuild) -> list[str]:
    """Faces of every cube cell are classes present in the build (or collapse entirely)."""
    problems = []
    table = build.table
    for n in range(2, build.complex.top + 1):
        geom = cube_geometry(n)
        rows, owners = [], []
        for rec in build.registry.get(n, {}).values():
            enc = table.encode(rec.labels)
            for idxs in geom.faces.values():
                rows.append([enc[j] for j in idxs])
                owners.append(rec)
        if not rows:
            continue
        can = canonicalize(np.array(rows, dtype=np.int64), cube_geometry(n - 1), table)
        star = table.code[STAR]
        for row, code, owner in zip(rows, can.codes.tolist(), owners):
            if code in build.registry[n - 1]:
                continue
            if all(x == star for x in row):
                continue
            problems.append(f"{n}-cell {owner.labels}: face {table.decode(row)} missing")
    return problems


def check_relators(build: SkeletonBuild, s: AutomaticStructure) -> list[str]:
    """Every 2-cell attaching word must be trivial in the group."""
    word_of: dict[str, str] = {}
    for cid, labels in build.labels_of.items():
        if build.complex.by_id[cid].dim == 1:
            word_of[cid] = label_word(labels[0])
    bad = []
    for c in build.complex.cells_of_dim(2):
        w = "".join(word_of[e] if sg > 0 else invert(word_of[e]) for e, sg in c.attach)
        if not s.is_trivial(w):
            bad.append(c.id)
    return bad
