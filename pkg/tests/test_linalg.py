import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from novikov_configs.linalg import (SparseMatrix, Subspace, column_space, field, intersect,
                                    kernel, persistence_reduce, persistence_reduce_rows,
                                    quotient_dim, rank, subspace_sum)


def dense_rank(rows, p):
    """Plain Gaussian elimination on a dense copy (independent oracle)."""
    m = [[x % p for x in r] for r in rows]
    rk, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = pow(m[rk][c], p - 2, p)
        m[rk] = [x * inv % p for x in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def random_dense(rng, rows, cols, p, density=0.3):
    return [[rng.randrange(1, p) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def subspace_of(rows, n, p):
    F = field(p)
    return Subspace.span(n, [F.from_entries((i, c) for i, c in enumerate(r) if c) for r in rows], p)


@pytest.mark.parametrize("p", [2, 1009])
def test_rank_nullity_on_random_matrices(p):
    rng = random.Random(p)
    for _ in range(100):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        d = random_dense(rng, r, c, p)
        M = SparseMatrix.from_dense(d, p)
        assert rank(M) == dense_rank(d, p)
        assert kernel(M).dim + rank(M) == c
        assert column_space(M).dim == rank(M)


def test_trivial_cases():
    assert rank(SparseMatrix.from_dense([[0, 0], [0, 0]])) == 0
    assert rank(SparseMatrix.identity(5, 7)) == 5
    assert kernel(SparseMatrix.identity(4)).dim == 0
    assert column_space(SparseMatrix.from_dense([[0, 0]], 3)).dim == 0


def test_lines_in_gf2_cubed():
    a = subspace_of([[1, 0, 0]], 3, 2)
    b = subspace_of([[0, 1, 1]], 3, 2)
    assert intersect(a, b).dim == 0
    s = subspace_sum(a, b)
    span = {tuple((x * i + y * j) % 2 for i, j in zip((1, 0, 0), (0, 1, 1)))
            for x in (0, 1) for y in (0, 1)}
    assert s.dim == 2 and len(span) == 2 ** s.dim


@pytest.mark.parametrize("p", [2, 1009])
def test_modular_law_and_canonicity(p):
    rng = random.Random(10 + p)
    for _ in range(60):
        n = rng.randint(1, 64)
        A = subspace_of(random_dense(rng, rng.randint(0, 6), n, p, 0.2) or [[0] * n], n, p)
        B = subspace_of(random_dense(rng, rng.randint(0, 6), n, p, 0.2) or [[0] * n], n, p)
        assert subspace_sum(A, B).dim + intersect(A, B).dim == A.dim + B.dim
        assert intersect(A, A) == A and subspace_sum(A, Subspace.zero(n, p)) == A
        # same subspace from a shuffled, rescaled generating set
        gens = list(A.basis) + [field(p).axpy(A.basis[0], 1, A.basis[-1])] if A.dim else []
        rng.shuffle(gens)
        assert Subspace.span(n, gens, p) == A
        assert quotient_dim(A, A) == 0 and quotient_dim(A, Subspace.zero(n, p)) == A.dim


def test_quotient_requires_containment():
    a = subspace_of([[1, 0]], 2, 2)
    b = subspace_of([[0, 1]], 2, 2)
    with pytest.raises(ValueError):
        quotient_dim(a, b)


def filtration_columns(simplices, p):
    """Boundary columns of a simplex list already in filtration order."""
    F = field(p)
    pos = {s: i for i, s in enumerate(simplices)}
    cols = []
    for s in simplices:
        if len(s) == 1:
            cols.append(F.zero())
        else:
            cols.append(F.from_entries((pos[s[:i] + s[i + 1:]], (-1) ** i)
                                       for i in range(len(s))))
    return cols


def test_fix_c_style_merge_tree():
    # path a(0) - b(2) - c(1): vertices then edges in value order
    simplices = [(0,), (2,), (0, 2), (1,), (1, 2), (0, 1)]
    pairing = persistence_reduce(filtration_columns(simplices, 2))
    # the last edge closes the triangle, an essential 1-cycle
    assert pairing.essential == (0, 5)
    assert sorted(pairing.pairs) == [(1, 2), (3, 4)]


def test_order_violation_detected():
    with pytest.raises(ValueError):
        persistence_reduce(filtration_columns([(0, 1), (0,), (1,)], 2)[::1])


def random_filtration(rng, n):
    """Random flag complex on n vertices in a valid filtration order."""
    verts = [(i,) for i in range(n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    es = set(edges)
    tris = [(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)
            if {(i, j), (j, k), (i, k)} <= es and rng.random() < 0.6]
    val = {v: rng.random() for v in range(n)}
    key = lambda s: (max(val[v] for v in s), len(s), s)  # noqa: E731
    return sorted(verts + edges + tris, key=key)


@pytest.mark.parametrize("p", [2, 1009])
def test_row_and_column_reductions_agree(p):
    rng = random.Random(p)
    for _ in range(40):
        simplices = random_filtration(rng, rng.randint(1, 9))
        cols = filtration_columns(simplices, p)
        assert persistence_reduce(cols, p) == persistence_reduce_rows(cols, p)


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_pairs_count_kernel_of_inclusions(seed):
    """#{pairs birth <= a < death <= b} = dim ker(H(K_a) -> H(K_b)), brute force."""
    rng = random.Random(seed)
    simplices = random_filtration(rng, rng.randint(2, 7))
    p = 2
    cols = filtration_columns(simplices, p)
    pairing = persistence_reduce(cols, p)
    N = len(simplices)
    pos = {s: i for i, s in enumerate(simplices)}

    def matrix(dim, upto):
        rows = [s for s in simplices[:upto] if len(s) == dim]
        cols_ = [s for s in simplices[:upto] if len(s) == dim + 1]
        ri = {s: i for i, s in enumerate(rows)}
        return rows, cols_, [[1 if len(c) == dim + 1 and r in
                              [c[:i] + c[i + 1:] for i in range(len(c))] else 0
                              for c in cols_] for r in rows]

    for a in range(N):
        for b in range(a, N):
            for dim in (1, 2):
                # H_{dim-1}: kernel dim = dim(Z_a cap B_b) - dim B_a
                zrows, _, d_prev = matrix(dim - 2, a + 1) if dim >= 2 else ([], [], [])
                cyc_a = [s for s in simplices[: a + 1] if len(s) == dim]
                if not cyc_a:
                    continue
                F = field(p)
                ambient = [s for s in simplices if len(s) == dim]
                amb = {s: i for i, s in enumerate(ambient)}

                def vec(chain):
                    return F.from_entries((amb[s], 1) for s in chain)

                def bd(s):
                    return [s[:i] + s[i + 1:] for i in range(len(s))]

                n = len(ambient)
                Z = kernel(SparseMatrix.from_entries(
                    max(1, sum(1 for s in simplices if len(s) == dim - 1)), len(cyc_a),
                    [(j, i, 1) for i, s in enumerate(cyc_a) for j, f in enumerate(
                        [t for t in simplices if len(t) == dim - 1]) if f in bd(s)], p))
                zvecs = [vec([cyc_a[i] for i, _ in F.entries(z)]) for z in Z.basis]
                Bb = Subspace.span(n, [vec(bd(s)) for s in simplices[: b + 1] if len(s) == dim + 1], p)
                Ba = Subspace.span(n, [vec(bd(s)) for s in simplices[: a + 1] if len(s) == dim + 1], p)
                Za = Subspace.span(n, zvecs, p)
                expect = intersect(Za, Bb).dim - Ba.dim
                got = sum(1 for i, j in pairing.pairs
                          if len(simplices[i]) == dim and i <= a < j <= b)
                assert got == expect
