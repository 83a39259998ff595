"""Independent reference implementations used to freeze expected values."""

from __future__ import annotations

from itertools import product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gtkit.fsa import enumerate_words
from gtkit.words import free_reduce


# --- group elements from words --------------------------------------------

def z_n_element(w: str, letters: str) -> tuple[int, ...]:
    return tuple(w.count(x) - w.count(x.upper()) for x in letters)


def free_element(w: str) -> str:
    return free_reduce(w)


def dinf_element(w: str) -> str:
    # a, b involutions: drop case, cancel equal neighbours
    out: list[str] = []
    for c in w.lower():
        if out and out[-1] == c:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def zxf2_element(w: str) -> tuple[int, str]:
    return (w.count("c") - w.count("C"), free_reduce(w.replace("c", "").replace("C", "")))


ELEMENT = {
    "z": lambda w: z_n_element(w, "a"),
    "z2": lambda w: z_n_element(w, "ab"),
    "f2": free_element,
    "dinf": dinf_element,
    "zxf2": zxf2_element,
}

# word length in the standard generators, in closed form
NORM = {
    "z": lambda w: abs(z_n_element(w, "a")[0]),
    "z2": lambda w: sum(map(abs, z_n_element(w, "ab"))),
    "f2": lambda w: len(free_element(w)),
    "dinf": lambda w: len(dinf_element(w)),
    "zxf2": lambda w: abs(zxf2_element(w)[0]) + len(zxf2_element(w)[1]),
}


# --- metric and fellow travelling -------------------------------------------

def bfs_lengths(symbols, element, radius: int) -> dict:
    """Word length of every group element within the radius, by BFS over all words."""
    dist = {element(""): 0}
    frontier = [""]
    for r in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for x in symbols:
                g = element(w + x)
                if g not in dist:
                    dist[g] = r
                    nxt.append(w + x)
        frontier = nxt
    return dist


def brute_force_fellow_traveller(s, element, max_len: int = 5) -> int:
    """Least k with d(u(t), v(t)) <= k for all accepted u, v of length <= max_len with v =G ux, x a
    symbol or the empty word."""
    words = enumerate_words(s.acceptor, max_len)
    by_elem = {element(u): u for u in words}
    dist = bfs_lengths(s.symbols, element, 2 * max_len + 2)
    invert = {x: x.swapcase() for x in s.symbols}
    k = 0
    for u in words:
        for x in s.symbols + ("",):
            v = by_elem.get(element(u + x))
            if v is None:
                continue
            for t in range(max(len(u), len(v)) + 1):
                diff = "".join(invert[c] for c in reversed(u[:t])) + v[:t]
                k = max(k, dist[element(diff)])
    return k


# --- homology ----------------------------------------------------------------

def homology_by_sympy(c, n: int) -> tuple[int, list[int]]:
    """(rank, torsion) of H_n from sympy Smith forms of dense boundary matrices."""
    def diag(k):
        rows, cols = c.count(k - 1), c.count(k)
        if k < 1 or rows == 0 or cols == 0:
            return []
        M = Matrix(c.boundary_matrix(k).tolist())
        D = sympy_snf(M, domain=ZZ)
        return [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]

    dn, up = diag(n), diag(n + 1)
    rank = c.count(n) - len(dn) - len(up)
    return rank, sorted(d for d in up if d > 1)


def all_labellings(values, n_edges):
    return product(values, repeat=n_edges)


# --- labelled cubes ----------------------------------------------------------------

def cube_edges(n: int) -> list[tuple[int, int]]:
    """(tail, head) vertex pairs, direction-major, tails increasing."""
    return [(u, u | 1 << i) for i in range(n) for u in range(1 << n) if not u >> i & 1]


def cube_square_faces(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Each 2-face as its boundary walk (edge, +1/-1): bottom, right, top^-1, left^-1."""
    faces = []
    for i in range(n):
        for j in range(i + 1, n):
            for base in range(1 << n):
                if base >> i & 1 or base >> j & 1:
                    continue
                a, b, c = base | 1 << i, base | 1 << j, base | 1 << i | 1 << j
                faces.append((((base, a), 1), ((a, c), 1), ((b, c), -1), ((base, b), -1)))
    return faces


def cube_symmetries(n: int):
    """Vertex maps of the n-cube (coordinate permutation then reflection mask)."""
    from itertools import permutations
    out = []
    for perm in permutations(range(n)):
        for mask in range(1 << n):
            def phi(u, perm=perm, mask=mask):
                return sum(1 << perm[i] for i in range(n) if u >> i & 1) ^ mask
            out.append(phi)
    return out


def brute_sensible(n: int, labels, inverse, trivial):
    """All labellings of the n-cube over ``labels`` whose every 2-face walk is trivial."""
    edges = cube_edges(n)
    idx = {e: k for k, e in enumerate(edges)}
    faces = [[(idx[e], s) for e, s in f] for f in cube_square_faces(n)]
    good = []
    for lab in product(labels, repeat=len(edges)):
        if all(trivial([lab[k] if s > 0 else inverse[lab[k]] for k, s in f]) for f in faces):
            good.append(lab)
    return good


def burnside_orbits(n: int, labellings, inverse) -> int:
    """Number of orbits of a symmetry-closed set of labellings, by Burnside's lemma."""
    edges = cube_edges(n)
    idx = {e: k for k, e in enumerate(edges)}
    total = 0
    syms = cube_symmetries(n)
    for phi in syms:
        moves = []
        for k, (u, v) in enumerate(edges):
            pu, pv = phi(u), phi(v)
            moves.append((idx[(pu, pv)], False) if (pu, pv) in idx else (idx[(pv, pu)], True))
        for lab in labellings:
            img = [None] * len(edges)
            for k, (t, flip) in enumerate(moves):
                img[t] = inverse[lab[k]] if flip else lab[k]
            total += tuple(img) == tuple(lab)
    assert total % len(syms) == 0
    return total // len(syms)


Z_LABELS = ("", "~", "a", "A")
Z_INVERSE = {"": "~", "~": "", "a": "A", "A": "a"}


def brute_sensible_z(n: int):
    """Sensible labellings of the n-cube for Z = <a> over ``Z_LABELS``, as a code array.

    Sensibility only sees exponents, so enumerate over {0, +1, -1} and then split every
    exponent-0 edge into its two oriented empty labels.
    """
    import numpy as np
    edges = cube_edges(n)
    E = len(edges)
    idx = {e: k for k, e in enumerate(edges)}
    digits = (np.arange(3 ** E)[:, None] // 3 ** np.arange(E)[None, :]) % 3
    expo = np.array([0, 1, -1])[digits]
    ok = np.ones(len(expo), dtype=bool)
    for f in cube_square_faces(n):
        ok &= sum(s * expo[:, idx[e]] for e, s in f) == 0
    expo = expo[ok]
    rows = []
    for r in expo:
        zeros = np.flatnonzero(r == 0)
        base = np.where(r == 1, 2, np.where(r == -1, 3, 0))
        for m in range(1 << len(zeros)):
            row = base.copy()
            row[zeros[[bool(m >> b & 1) for b in range(len(zeros))]]] = 1
            rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(-1, E)


def burnside_orbits_array(n: int, rows, inverse_code) -> int:
    import numpy as np
    edges = cube_edges(n)
    idx = {e: k for k, e in enumerate(edges)}
    syms = cube_symmetries(n)
    inv = np.asarray(inverse_code)
    total = 0
    for phi in syms:
        img = np.empty_like(rows)
        for k, (u, v) in enumerate(edges):
            pu, pv = phi(u), phi(v)
            if (pu, pv) in idx:
                img[:, idx[(pu, pv)]] = rows[:, k]
            else:
                img[:, idx[(pv, pu)]] = inv[rows[:, k]]
        total += int((img == rows).all(axis=1).sum())
    assert total % len(syms) == 0
    return total // len(syms)
