import itertools
import random

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gtkit.abelian import (AbelianType, IntMatrix, abelian_iso, abelian_types, classify, determinant,
                           determinantal_divisors, integer_kernel, lattice_basis, quotient_lattice,
                           smith_normal_form, solve_in_lattice, sparse_invariant_factors)

small = st.integers(-5, 5)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def sympy_diagonal(rows):
    D = sympy_snf(Matrix(rows), domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


@given(matrices())
def test_snf_decomposition(rows):
    M = IntMatrix.from_rows(rows)
    D, U, V = smith_normal_form(M)
    assert (U @ M @ V).tolist() == D.tolist()
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = D.diagonal()
    for i in range(M.rows):
        for j in range(M.cols):
            if i != j:
                assert D[i, j] == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert nz == [x for x in diag[: len(nz)]]  # zeros trail


@given(matrices())
def test_snf_matches_sympy(rows):
    D, _, _ = smith_normal_form(rows)
    assert sorted(x for x in D.diagonal() if x) == sympy_diagonal(rows)


@given(matrices(max_dim=4))
def test_determinantal_divisors(rows):
    D, _, _ = smith_normal_form(rows)
    diag = D.diagonal()
    dd = determinantal_divisors(rows)
    prod = 1
    for k, d in enumerate(dd):
        prod *= diag[k]
        assert d == abs(prod)


def test_determinant_against_sympy():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert determinant(rows) == Matrix(rows).det()


@pytest.mark.parametrize("text, expect", [
    ("Z^2 + Z/6", "Z^2 + Z/6"),
    ("Z/2 + Z/3", "Z/6"),
    ("Z/2 + Z/2", "Z/2 + Z/2"),
    ("0", "0"),
    ("Z + Z/4 + Z/6", "Z + Z/2 + Z/12"),
    ("(Z/2)^3", "Z/2 + Z/2 + Z/2"),
])
def test_type_parse_normalizes(text, expect):
    assert str(AbelianType.parse(text)) == expect


def test_classify_examples():
    assert str(classify([[2, 0], [0, 3]])) == "Z/6"
    assert str(classify([[0, 0]], 2)) == "Z^2"
    assert classify([[1]]).is_trivial


def test_abelian_types_distinct_and_complete():
    first = list(itertools.islice(abelian_types(), 200))
    assert len({(t.rank, t.factors) for t in first}) == 200
    assert [str(t) for t in first[:4]] == ["0", "Z", "Z/2", "Z^2"]
    # every type of weight <= 4 shows up early
    keys = {(t.rank, t.factors) for t in first}
    for r in range(4):
        assert (r, ()) in keys
    assert (0, (2, 2)) in keys and (0, (4,)) in keys
    assert not abelian_iso(first[1], first[2])


def test_kernel_and_lattice():
    K = integer_kernel([[1, 1, 1]], 3)
    assert len(K) == 2
    for v in K:
        assert sum(v) == 0
    B = lattice_basis([[2, 0], [0, 2], [2, 2]], 2)
    assert len(B) == 2
    assert solve_in_lattice(B, [4, 2]) is not None
    assert solve_in_lattice(B, [1, 0]) is None


def test_quotient_lattice_orders():
    Z = [[1, 0], [0, 1]]
    out = quotient_lattice(Z, [[2, 0]])
    assert sorted(o for o, _ in out) == [0, 2]


@given(st.integers(1, 8), st.integers(1, 8), st.randoms(use_true_random=False))
def test_sparse_factors_match_dense(r, c, rnd):
    rows = [[rnd.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(c)] for _ in range(r)]
    cols = [{i: rows[i][j] for i in range(r) if rows[i][j]} for j in range(c)]
    D, _, _ = smith_normal_form(rows)
    assert sorted(sparse_invariant_factors(cols, r)) == sorted(x for x in D.diagonal() if x)
