import random

from hypothesis import given
from hypothesis import strategies as st

from flagspread.gf import field_of_order
from flagspread.linalg import det, identity_matrix, mat_inv, mat_mul, nullspace, rank, rref, vec_mat


@given(st.sampled_from([2, 3, 4, 5, 8, 9]), st.integers(0, 10**6))
def test_nullspace_is_kernel(q, seed):
    F = field_of_order(q)
    rng = random.Random(seed)
    rows = [[rng.randrange(q) for _ in range(5)] for _ in range(3)]
    ns = nullspace(F, rows, 5)
    assert len(ns) + rank(F, rows) == 5
    for v in ns:
        for r in rows:
            assert F.sum(F.mul(a, b) for a, b in zip(r, v)) == 0


@given(st.sampled_from([3, 5, 7, 4, 8]), st.integers(0, 10**6))
def test_inverse(q, seed):
    F = field_of_order(q)
    rng = random.Random(seed)
    A = [[rng.randrange(q) for _ in range(3)] for _ in range(3)]
    if det(F, A) == 0:
        return
    B = mat_inv(F, A)
    assert mat_mul(F, A, B) == identity_matrix(3)
    v = (1, 2 % q, 0)
    assert vec_mat(F, vec_mat(F, v, A), B) == v


def test_rref_canonical():
    F = field_of_order(5)
    assert rref(F, [[2, 4], [1, 2]]) == [(1, 2)]
