import itertools
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_matrix
from linkcob.zlattice import (IntMatrix, Submodule, cokernel, det, hnf, invariant_factors,
                              is_pure, kernel_basis, rank, saturate, snf, solve,
                              unimodular_inverse)


def matrices(max_dim=5, bound=9):
    return st.integers(0, max_dim).flatmap(lambda r: st.integers(0, max_dim).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(lambda rows: IntMatrix(rows, rows=r, cols=c))))


def is_unimodular(U):
    return abs(det(U)) == 1


def determinantal_divisors(A):
    """gcd of all k x k minors, for k = 1..rank."""
    out = []
    M = sympy.Matrix(A.tolist()) if A.rows else None
    for k in range(1, min(A.shape) + 1):
        g = 0
        for rs in itertools.combinations(range(A.rows), k):
            for cs in itertools.combinations(range(A.cols), k):
                g = gcd(g, int(M.extract(list(rs), list(cs)).det()))
        if g == 0:
            break
        out.append(g)
    return out


# -- IntMatrix ----------------------------------------------------------------

def test_shape_is_validated():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix([[1.5]])
    assert IntMatrix([], cols=3).shape == (0, 3)
    assert IntMatrix.zeros(2, 0).T.shape == (0, 2)


def test_product_matches_numpy():
    import numpy as np
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = rng.integers(-9, 10, size=(3, 4))
        b = rng.integers(-9, 10, size=(4, 2))
        got = IntMatrix(a.tolist()) @ IntMatrix(b.tolist())
        assert got.tolist() == (a @ b).tolist()


def test_big_integers_stay_exact():
    big = 2**80 + 1
    A = IntMatrix([[big, 1], [1, big]])
    assert det(A) == big * big - 1
    assert (A @ A)[0, 0] == big * big + 1


def test_empty_products():
    assert (IntMatrix.zeros(2, 0) @ IntMatrix.zeros(0, 3)).tolist() == [[0] * 3] * 2
    assert det(IntMatrix.zeros(0, 0)) == 1


# -- determinant and rank -----------------------------------------------------

def test_det_against_sympy(rng):
    for _ in range(200):
        n = rng.randint(1, 6)
        rows = random_matrix(rng, n, n, 9)
        assert det(IntMatrix(rows)) == sympy.Matrix(rows).det()


def test_rank_against_sympy(rng):
    for _ in range(100):
        rows = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 2)
        assert rank(IntMatrix(rows)) == sympy.Matrix(rows).rank()


# -- Hermite normal form ------------------------------------------------------

def check_hnf(A, H, U):
    assert U @ A == H
    assert is_unimodular(U)
    last = -1
    seen_zero = False
    for i in range(H.rows):
        row = H.row(i)
        if not any(row):
            seen_zero = True
            continue
        assert not seen_zero, "zero rows come last"
        p = next(j for j, x in enumerate(row) if x)
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= H[k, p] < row[p]
        last = p


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_hnf_properties(A):
    H, U = hnf(A)
    check_hnf(A, H, U)


def test_hnf_is_canonical(rng):
    # left multiplication by a unimodular matrix does not change the form
    for _ in range(100):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        A = IntMatrix(random_matrix(rng, r, c, 5))
        W = IntMatrix.identity(r)
        for _ in range(6):
            i, j = rng.sample(range(r), 2) if r > 1 else (0, 0)
            if i != j:
                E = IntMatrix.identity(r).tolist()
                E[i][j] = rng.randint(-3, 3)
                W = IntMatrix(E) @ W
        assert hnf(W @ A)[0] == hnf(A)[0]


# -- Smith normal form --------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(matrices())
def test_snf_round_trip(A):
    dec = snf(A)
    assert dec.U @ A @ dec.V == dec.D
    assert is_unimodular(dec.U) and is_unimodular(dec.V)
    d = dec.diagonal
    for i in range(dec.D.rows):
        for j in range(dec.D.cols):
            if i != j:
                assert dec.D[i, j] == 0
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[:len(nz)] == tuple(nz), "zeros come last"
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_snf_against_determinantal_divisors(rng):
    for _ in range(60):
        A = IntMatrix(random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), 6))
        dd = determinantal_divisors(A)
        expect = [dd[0]] + [b // a for a, b in zip(dd, dd[1:])] if dd else []
        got = [x for x in invariant_factors(A) if x]
        assert got == expect


def test_snf_examples():
    assert invariant_factors(IntMatrix([[2, 4], [6, 8]])) == (2, 4)
    assert invariant_factors(IntMatrix([[2, 0], [0, 3]])) == (1, 6)
    assert invariant_factors(IntMatrix([[0, 0], [0, 0]])) == (0, 0)


# -- kernels, saturation, solving ---------------------------------------------

@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_basis(A):
    K = kernel_basis(A)
    assert K.ambient_rank == A.cols
    assert K.rank == A.cols - rank(A)
    if K.rank:
        assert (A @ K.basis.T).is_zero()
    assert is_pure(K)


def test_kernel_example():
    K = kernel_basis(IntMatrix([[1, 1]]))
    assert K.basis.tolist() in ([[1, -1]], [[-1, 1]])


def submodules(rng, n, k, bound=4):
    return Submodule.from_generators(random_matrix(rng, k, n, bound), n)


def test_saturation_is_a_closure_operator(rng):
    for _ in range(100):
        n = rng.randint(1, 4)
        M = submodules(rng, n, rng.randint(0, n))
        N = M + submodules(rng, n, rng.randint(0, 2))
        sM, sN = saturate(M), saturate(N)
        assert sM.contains_module(M)
        assert saturate(sM) == sM
        assert sN.contains_module(sM)
        assert is_pure(sM) and sM.rank == M.rank


def test_saturation_divides_out_multiples():
    M = Submodule.from_generators([[2, 4, 6]], 3)
    assert not is_pure(M)
    assert saturate(M) == Submodule.from_generators([[1, 2, 3]], 3)
    assert saturate(Submodule.from_generators([[2, 0], [0, 3]], 2)) == Submodule.full(2)


def test_solve(rng):
    assert solve(IntMatrix([[2, 3]]), [1]) is not None
    assert solve(IntMatrix([[2]]), [1]) is None
    assert solve(IntMatrix([[0]]), [1]) is None
    for _ in range(100):
        A = IntMatrix(random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), 5))
        x = [rng.randint(-5, 5) for _ in range(A.cols)]
        b = A.apply(x)
        y = solve(A, b)
        assert y is not None and A.apply(y) == b


def test_submodule_membership_and_intersection_by_enumeration(rng):
    box = list(itertools.product(range(-4, 5), repeat=2))
    for _ in range(30):
        M = submodules(rng, 2, rng.randint(1, 2), 3)
        N = submodules(rng, 2, rng.randint(1, 2), 3)
        I = M.intersection(N)
        S = M + N
        for v in box:
            assert (v in I) == (v in M and v in N)
            if v in M or v in N:
                assert v in S


def test_coordinates_recover_combinations(rng):
    for _ in range(50):
        M = submodules(rng, 4, 3)
        c = [rng.randint(-3, 3) for _ in range(M.rank)]
        v = IntMatrix([c], cols=M.rank) @ M.basis if M.rank else IntMatrix.zeros(1, 4)
        assert M.coordinates(v[0]) == tuple(c)


def test_index_of_full_rank_lattice():
    assert Submodule.from_generators([[2, 1], [0, 3]], 2).index() == 6
    with pytest.raises(ValueError):
        Submodule.from_generators([[1, 0]], 2).index()


# -- cokernels ----------------------------------------------------------------

def test_cokernel_of_square_matrix(rng):
    for _ in range(100):
        n = rng.randint(1, 4)
        A = IntMatrix(random_matrix(rng, n, n, 4))
        G, data = cokernel(A)
        d = det(A)
        if d:
            assert G.free_rank == 0 and G.torsion_order == abs(d)
        for j in range(A.cols):
            assert not any(data.coordinates(A.col(j)))
        for i in range(len(data.moduli)):
            e = tuple(int(k == i) for k in range(len(data.moduli)))
            assert data.coordinates(data.lift.col(i)) == e


def test_cokernel_example():
    G, _ = cokernel(IntMatrix([[2, 1], [1, 2]]))
    assert (G.free_rank, G.torsion) == (0, (3,))
    G, _ = cokernel(IntMatrix([[0, 0], [0, 2]]))
    assert (G.free_rank, G.torsion) == (1, (2,))


def test_unimodular_inverse(rng):
    for _ in range(50):
        A = IntMatrix(random_matrix(rng, 4, 4, 5))
        U = snf(A).U
        assert unimodular_inverse(U) @ U == IntMatrix.identity(4)
    with pytest.raises(ValueError):
        unimodular_inverse(IntMatrix([[2]]))
