"""Row reduction and small matrix arithmetic over a FieldSpec (integer element indices)."""

from __future__ import annotations

from typing import Sequence

from .gf import FieldSpec

Matrix = tuple[tuple[int, ...], ...]


def rref(F: FieldSpec, rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped."""
    M = [list(r) for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    out_rows = 0
    for col in range(ncols):
        piv = next((r for r in range(out_rows, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[out_rows], M[piv] = M[piv], M[out_rows]
        inv = F.inv(M[out_rows][col])
        M[out_rows] = [F.mul(inv, x) for x in M[out_rows]]
        for r in range(len(M)):
            if r != out_rows and M[r][col]:
                c = M[r][col]
                M[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[r], M[out_rows])]
        out_rows += 1
    return [tuple(r) for r in M[:out_rows]]


def rank(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows))


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """A basis of {y : rows . y = 0}, in reduced row echelon form."""
    R = rref(F, rows)
    pivots = [next(i for i, x in enumerate(r) if x) for r in R]
    vecs = []
    for free in range(ncols):
        if free in pivots:
            continue
        y = [0] * ncols
        y[free] = 1
        for r, pc in zip(R, pivots):
            y[pc] = F.neg(r[free])
        vecs.append(tuple(y))
    return rref(F, vecs)


def mat_mul(F: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    n, k = len(A), len(B[0])
    return tuple(tuple(F.sum(F.mul(A[i][t], B[t][j]) for t in range(len(B))) for j in range(k))
                 for i in range(n))


def vec_mat(F: FieldSpec, v: Sequence[int], A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Row vector times matrix."""
    return tuple(F.sum(F.mul(v[i], A[i][j]) for i in range(len(v))) for j in range(len(A[0])))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inv(F: FieldSpec, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + list(identity_matrix(n)[i]) for i in range(n)]
    R = rref(F, aug)
    if len(R) < n or any(R[i][i] != 1 for i in range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def det(F: FieldSpec, A: Sequence[Sequence[int]]) -> int:
    M = [list(r) for r in A]
    n = len(M)
    out = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            out = F.neg(out)
        out = F.mul(out, M[col][col])
        inv = F.inv(M[col][col])
        for r in range(col + 1, n):
            if M[r][col]:
                c = F.mul(M[r][col], inv)
                M[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[r], M[col])]
    return out
