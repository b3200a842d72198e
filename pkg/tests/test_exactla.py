import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socleprobe import Subspace, kernel, lattice, rank, rref
from socleprobe.errors import DimensionMismatch
from socleprobe.exactla import check_prime, is_prime, joint_preimage, preimage, solve


def span_set(rows, p, n):
    """All vectors of the span, by enumerating coefficient tuples."""
    rows = [np.asarray(r) % p for r in rows]
    out = {tuple([0] * n)}
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = sum((c * r for c, r in zip(coeffs, rows)), np.zeros(n, dtype=np.int64)) % p
        out.add(tuple(int(t) for t in v))
    return out


def matrices(max_rows=6, max_cols=6, primes=(2, 3, 5, 7, 32003)):
    @st.composite
    def build(draw):
        p = draw(st.sampled_from(primes))
        r = draw(st.integers(0, max_rows))
        c = draw(st.integers(1, max_cols))
        # small entries make dependent rows likely
        hi = draw(st.sampled_from([1, 2, p - 1]))
        vals = draw(st.lists(st.integers(0, hi), min_size=r * c, max_size=r * c))
        return np.array(vals, dtype=np.int64).reshape(r, c) % p, p

    return build()


class TestExamples:
    def test_identity_is_full(self):
        S = rref(np.eye(3, dtype=int), 5)
        assert S.dim == 3 and S.is_full

    def test_zero_matrix(self):
        assert rref(np.zeros((2, 4), dtype=int), 5).dim == 0

    def test_empty_matrix(self):
        S = rref(np.zeros((0, 3), dtype=int), 5)
        assert S.is_zero and S.ambient_dim == 3

    def test_hand_reduction(self):
        S = rref([[1, 2], [2, 4]], 7)
        assert S.dim == 1
        assert S.basis.tolist() == [[1, 2]]

    def test_kernel_identity(self):
        assert kernel(np.eye(4, dtype=int), 7).is_zero

    def test_kernel_zero_row(self):
        assert kernel([[0, 0, 0]], 3).is_full

    def test_kernel_by_enumeration(self):
        K = kernel([[1, 1, 0]], 3)
        assert K.dim == 2
        brute = {v for v in itertools.product(range(3), repeat=3) if (v[0] + v[1]) % 3 == 0}
        assert span_set(K.basis, 3, 3) == brute
        assert K.member([1, 2, 0]) and K.member([0, 0, 1])

    def test_meet_join_trivial(self):
        V = Subspace.span([[1, 2, 3], [0, 1, 4]], 3, 5)
        Z = Subspace.zero(3, 5)
        assert lattice(V, V, "meet") == V
        assert lattice(V, Z, "join") == V

    def test_meet_axes(self):
        a = Subspace.span([[1, 0]], 2, 11)
        b = Subspace.span([[0, 1]], 2, 11)
        assert lattice(a, b, "meet").is_zero

    def test_meet_by_enumeration(self):
        p = 5
        A = [[1, 1, 0], [0, 1, 1]]
        B = [[1, 0, 0], [0, 0, 1]]
        brute = span_set(A, p, 3) & span_set(B, p, 3)
        M = lattice(Subspace.span(A, 3, p), Subspace.span(B, 3, p), "meet")
        assert M.dim == 1
        assert span_set(M.basis, p, 3) == brute
        assert M.member([1, 0, 4])

    def test_contains_and_member(self):
        V = Subspace.span([[1, 0, 0], [0, 1, 0]], 3, 7)
        assert lattice(V, Subspace.span([[3, 5, 0]], 3, 7), "contains")
        assert lattice(V, V, "member", vector=[2, 2, 0])
        assert not lattice(V, V, "member", vector=[0, 0, 1])

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lattice(Subspace.zero(2, 5), Subspace.zero(3, 5), "meet")

    def test_field_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lattice(Subspace.zero(2, 5), Subspace.zero(2, 7), "join")


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(32003)
    with pytest.raises(ValueError):
        check_prime(32004)


def test_solve_and_preimage():
    p = 7
    M = np.array([[1, 2, 0], [0, 1, 1]])
    x = solve(M, [3, 0, 1], p)
    assert x is not None and ((x @ M) % p).tolist() == [3, 0, 1]
    assert solve(M, [0, 0, 1], p) is None
    target = Subspace.span([[1, 0, 0]], 3, p)
    pre = preimage(M, target)
    brute = {v for v in itertools.product(range(p), repeat=2) if target.member((np.array(v) @ M) % p)}
    assert span_set(pre.basis, p, 2) == brute


def test_joint_preimage_is_meet():
    p = 5
    A = np.array([[1, 0], [0, 1], [1, 1]])
    B = np.array([[0, 1], [1, 0], [2, 2]])
    tA = Subspace.span([[1, 0]], 2, p)
    tB = Subspace.span([[1, 1]], 2, p)
    assert joint_preimage([A, B], [tA, tB], 3, p) == preimage(A, tA).meet(preimage(B, tB))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(mp):
    M, p = mp
    assert rank(M, p) + kernel(M, p).dim == M.shape[1]
    assert (kernel(M, p).basis @ M.T % p == 0).all() if M.shape[0] else True


@settings(max_examples=150, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_rref_canonical_and_idempotent(mp, rnd):
    M, p = mp
    S = rref(M, p, M.shape[1])
    assert rref(S.basis, p, M.shape[1]) == S
    perm = list(range(M.shape[0]))
    rnd.shuffle(perm)
    T = rref(M[perm], p, M.shape[1])
    assert np.array_equal(S.basis, T.basis)
    B = S.basis
    for r, c in enumerate(S.pivots):
        assert B[r, c] == 1 and (B[:, c] != 0).sum() == 1
    assert list(S.pivots) == sorted(set(S.pivots))


@settings(max_examples=150, deadline=None)
@given(matrices(), st.data())
def test_modular_law(mp, data):
    M, p = mp
    n = M.shape[1]
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), max_size=5))
    A = rref(M, p, n)
    B = rref(np.array(rows, dtype=np.int64).reshape(-1, n), p, n)
    meet, join = A.meet(B), A.join(B)
    assert A.dim + B.dim == meet.dim + join.dim
    assert A.contains(meet) and B.contains(meet) and join.contains(A) and join.contains(B)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=3, max_cols=3, primes=(2, 3)), matrices(max_rows=3, max_cols=3, primes=(2, 3)))
def test_meet_matches_enumeration(ma, mb):
    (A, p), (B, _) = ma, mb
    n = A.shape[1]
    B = B[:, :n] % p if B.shape[1] >= n else np.zeros((0, n), dtype=np.int64)
    SA, SB = rref(A, p, n), rref(B, p, n)
    brute = span_set(list(A), p, n) & span_set(list(B), p, n)
    assert span_set(SA.meet(SB).basis, p, n) == brute
