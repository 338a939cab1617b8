from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvgoppa import gfla
from mvgoppa.errors import ShapeMismatch, ZeroCode
from mvgoppa.gf import make_field

from helpers import brute_min_weight, f9, rand_matrix

F2, F5, F7 = make_field(2), make_field(5), make_field(7)


def mats(F, max_r=5, max_c=7, cols=None):
    @st.composite
    def build(draw):
        r = draw(st.integers(0, max_r))
        c = cols if cols is not None else draw(st.integers(1, max_c))
        flat = draw(st.lists(st.integers(0, F.q - 1), min_size=r * c, max_size=r * c))
        return np.array(flat, dtype=np.int64).reshape(r, c)

    return build()


def test_rref_identity_and_zero():
    I = np.eye(4, dtype=np.int64)
    R, piv = gfla.rref(F5, I)
    assert np.array_equal(R, I) and piv == [0, 1, 2, 3]
    R, piv = gfla.rref(F5, np.zeros((3, 4), dtype=np.int64))
    assert not R.any() and piv == []


def test_rref_fixpoint_random():
    rng = np.random.default_rng(3)
    M = rand_matrix(rng, F7, 4, 6)
    R, piv = gfla.rref(F7, M)
    R2, piv2 = gfla.rref(F7, R)
    assert np.array_equal(R, R2) and piv == piv2
    assert gfla.rowspace_equal(F7, M, R)


def test_kernel_examples():
    assert gfla.kernel(F5, np.eye(3, dtype=np.int64)).shape == (0, 3)
    K = gfla.kernel(F2, np.array([[1, 1]]))
    assert np.array_equal(K, [[1, 1]])


def test_kronecker_examples():
    A = np.array([[1, 2], [3, 4]])
    assert np.array_equal(gfla.kronecker(F5, A, np.array([[1]])), A)
    a, b, c, d = 2, 3, 4, 1
    K = gfla.kronecker(F5, np.array([[a, b]]), np.array([[c, d]]))
    assert K.tolist() == [[F5.mul(a, c), F5.mul(a, d), F5.mul(b, c), F5.mul(b, d)]]


def test_rowspace_equal_examples():
    rng = np.random.default_rng(4)
    A = rand_matrix(rng, F7, 3, 5)
    assert gfla.rowspace_equal(F7, A, A[::-1])
    assert gfla.rowspace_equal(F7, A, np.vstack([A, np.zeros((1, 5), dtype=np.int64)]))
    with pytest.raises(ShapeMismatch):
        gfla.rowspace_equal(F7, A, A[:, :4])


def test_rowspace_intersect_examples():
    rng = np.random.default_rng(5)
    A = rand_matrix(rng, F5, 2, 4)
    assert gfla.rowspace_equal(F5, gfla.rowspace_intersect(F5, A, A), A)
    E1 = np.array([[1, 0, 0, 0], [0, 1, 0, 0]])
    E2 = np.array([[0, 0, 1, 0], [0, 0, 0, 1]])
    assert gfla.rowspace_intersect(F5, E1, E2).shape[0] == 0


def test_min_distance_examples():
    d, exact = gfla.min_distance(F5, np.eye(4, dtype=np.int64))
    assert (d, exact) == (1, True)
    G = np.array([[1, 1, 1], [1, 2, 3]])  # [3,2] GRS over GF(5)
    assert gfla.min_distance(F5, G) == (2, True)
    with pytest.raises(ZeroCode):
        gfla.min_distance(F5, np.zeros((2, 3), dtype=np.int64))


def test_min_distance_cap_gives_lower_bound():
    # [7,4,3] Hamming code
    G = np.array(
        [[1, 0, 0, 0, 0, 1, 1], [0, 1, 0, 0, 1, 0, 1], [0, 0, 1, 0, 1, 1, 0], [0, 0, 0, 1, 1, 1, 1]]
    )
    assert gfla.min_distance(F2, G) == (3, True)
    d, exact = gfla.min_distance(F2, G, cap=1)
    assert (d, exact) == (2, False)


def test_matrix_json_round_trip():
    F = f9()
    A = np.array([[0, 3, 8], [1, 2, 5]])
    F2_, B = gfla.matrix_from_dict(gfla.matrix_to_dict(F, A))
    assert F2_ == F and np.array_equal(A, B)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_rank_nullity_and_transpose(data):
    F = data.draw(st.sampled_from([F2, F5, f9()]))
    M = data.draw(mats(F))
    r = gfla.rank(F, M)
    K = gfla.kernel(F, M)
    assert r + K.shape[0] == M.shape[1]
    if K.size and M.size:
        assert not F.matmul(M, K.T).any()
    if M.size:
        assert gfla.rank(F, M.T) == r


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_rref_idempotent(data):
    F = data.draw(st.sampled_from([F5, f9()]))
    M = data.draw(mats(F))
    R, piv = gfla.rref(F, M)
    assert len(piv) == gfla.rank(F, M)
    assert np.array_equal(gfla.rref(F, R)[0], R)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_intersection_dimension_identity(data):
    F = F5
    A = data.draw(mats(F, 4, 6))
    B = data.draw(mats(F, 4, cols=A.shape[1]))
    I = gfla.rowspace_intersect(F, A, B)
    S = gfla.rowspace_sum(F, A, B)
    assert gfla.rank(F, A) + gfla.rank(F, B) == gfla.rank(F, S) + gfla.rank(F, I)
    if I.shape[0]:
        assert gfla.rowspace_contains(F, A, I) and gfla.rowspace_contains(F, B, I)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_kronecker_rank_and_mixed_product(data):
    F = F7
    A, B = data.draw(mats(F, 3, 3)), data.draw(mats(F, 3, 3))
    assert gfla.rank(F, gfla.kronecker(F, A, B)) == gfla.rank(F, A) * gfla.rank(F, B)
    # (A x B)(C x D) = AC x BD
    C = data.draw(mats(F, 3, 3))
    D = data.draw(mats(F, 3, 3))
    if A.shape[1] == C.shape[0] and B.shape[1] == D.shape[0]:
        lhs = F.matmul(gfla.kronecker(F, A, B), gfla.kronecker(F, C, D))
        rhs = gfla.kronecker(F, F.matmul(A, C), F.matmul(B, D))
        assert np.array_equal(lhs, rhs)


def test_inverse():
    rng = np.random.default_rng(6)
    for _ in range(20):
        M = rand_matrix(rng, F7, 4, 4)
        if gfla.rank(F7, M) < 4:
            continue
        assert np.array_equal(F7.matmul(M, gfla.inverse(F7, M)), np.eye(4, dtype=np.int64))


def test_min_distance_matches_enumeration():
    """Oracle equivalence on random small codes (q^k well below 2^18)."""
    rng = np.random.default_rng(7)
    for F, kmax in ((F2, 8), (F5, 4), (f9(), 3)):
        for _ in range(25):
            n = int(rng.integers(2, 11))
            k = int(rng.integers(1, min(n, kmax) + 1))
            G = rand_matrix(rng, F, k, n)
            if gfla.rank(F, G) == 0:
                continue
            d, exact = gfla.min_distance(F, G)
            assert exact and d == brute_min_weight(F, gfla.row_basis(F, G))


def test_min_distance_column_search_path():
    """Force the parity-check search (no enumeration fallback) on a larger k."""
    rng = np.random.default_rng(8)
    for _ in range(5):
        G = rand_matrix(rng, F2, 14, 18)
        Gb = gfla.row_basis(F2, G)
        d, exact = gfla.min_distance(F2, Gb, enum_limit=0)
        assert exact and d == brute_min_weight(F2, Gb)


def test_dependent_subsets_literal():
    # columns 0 and 1 equal -> dependent pair
    H = np.array([[1, 1, 0], [0, 0, 1]])
    subs = np.array(list(itertools.combinations(range(3), 2)))
    dep = gfla._dependent_subsets(F2, H, subs)
    assert dep.tolist() == [True, False, False]
