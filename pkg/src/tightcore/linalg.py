"""Dense linear algebra over GF(p^e): row echelon, rank, span tools.

Matrices are int64 ndarrays of field elements.  Sizes here are tiny
(dozens of rows), so everything is straightforward vectorized
elimination via the field's table arithmetic.
"""

from __future__ import annotations

import numpy as np


def rref(field, M: np.ndarray):
    """Reduced row echelon form.  Returns (R, pivot_columns); zero rows
    are dropped."""
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hit = np.flatnonzero(M[r:, c])
        if len(hit) == 0:
            continue
        i = r + int(hit[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = field.inv(int(M[r, c]))
        M[r] = field.mul_arr(M[r], inv)
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if len(others):
            factors = M[others, c]
            delta = field.mul_arr(factors[:, None], M[r][None, :])
            M[others] = field.sub_arr(M[others], delta)
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(field, M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    R, _ = rref(field, M)
    return len(R)


def in_row_space(field, R: np.ndarray, pivots, v: np.ndarray) -> bool:
    """Is v in the span of the echelon rows R (with pivot columns)?"""
    v = np.array(v, dtype=np.int64)
    for i, c in enumerate(pivots):
        if v[c]:
            v = field.sub_arr(v, field.mul_arr(R[i], int(v[c])))
    return not np.any(v)


def nullspace(field, M: np.ndarray) -> np.ndarray:
    """Basis (rows) of the right kernel of M."""
    rows, cols = M.shape
    R, pivots = rref(field, M)
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = field.neg(int(R[i, fc]))
    return out


def row_space_intersection(field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Echelon basis of rowspace(A) & rowspace(B)."""
    if A.size == 0 or B.size == 0:
        return np.zeros((0, A.shape[1] if A.size else B.shape[1]), np.int64)
    # kernel of [A^T | -B^T]: coefficient pairs (u, v) with uA = vB
    stacked = np.concatenate([A, field.neg_arr(B)], axis=0)  # (ra+rb, n)
    ker = nullspace(field, stacked.T)  # rows: (u | v)
    if ker.size == 0:
        return np.zeros((0, A.shape[1]), np.int64)
    u = ker[:, :A.shape[0]]
    prods = field.mul_arr(u[:, :, None], A[None, :, :])
    vecs = field.sum_arr(prods, axis=1)
    R, _ = rref(field, vecs)
    return R
