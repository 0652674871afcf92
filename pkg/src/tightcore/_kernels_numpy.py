"""Pure-numpy fallback for the reduction kernel.

Same contract as the numba module, selected with TIGHTCORE_BACKEND=numpy
(or automatically when numba is unavailable).  Each reduction step
re-canonicalizes the working terms with one lexsort instead of the
incremental sorted merge; slower, but dependency-free and bit-identical
in its results.
"""

import numpy as np


def _combine(field, E, K, C):
    """Sort terms descending by key, merge duplicates, drop zeros."""
    if len(C) == 0:
        return E, K, C
    idx = np.lexsort(K.T[::-1])[::-1]
    E, K, C = E[idx], K[idx], C[idx]
    if len(C) > 1:
        new = np.empty(len(C), dtype=bool)
        new[0] = True
        new[1:] = np.any(K[1:] != K[:-1], axis=1)
        if not new.all():
            starts = np.flatnonzero(new)
            C = field.reduceat_add(C, starts)
            E = E[starts]
            K = K[starts]
    nz = C != 0
    if not nz.all():
        E, K, C = E[nz], K[nz], C[nz]
    return E, K, C


def normal_form(field, keymat, E, K, C, BE, BK, BC, boff):
    """Reduce the term triple (E, K, C) by the packed monic basis."""
    lm_rows = boff[:-1]
    lmE = BE[lm_rows]
    out_rows = []
    wE, wK, wC = E, K, C
    wi = 0
    while wi < len(wC):
        div = np.flatnonzero(np.all(lmE <= wE[wi][None, :], axis=1))
        if len(div) == 0:
            out_rows.append((wE[wi], wK[wi], wC[wi]))
            wi += 1
            continue
        b = int(div[0])
        r0, r1 = int(boff[b]), int(boff[b + 1])
        c = int(wC[wi])
        sh = wE[wi] - BE[r0]
        shk = sh @ keymat
        tailC = field.neg_arr(field.mul_arr(BC[r0 + 1:r1], c))
        mE = np.concatenate([wE[wi + 1:], BE[r0 + 1:r1] + sh[None, :]])
        mK = np.concatenate([wK[wi + 1:], BK[r0 + 1:r1] + shk[None, :]])
        mC = np.concatenate([wC[wi + 1:], tailC])
        wE, wK, wC = _combine(field, mE, mK, mC)
        wi = 0
    if not out_rows:
        n, m = E.shape[1], K.shape[1]
        return (np.zeros((0, n), np.int64), np.zeros((0, m), np.int64),
                np.zeros(0, np.int64))
    oE = np.stack([r[0] for r in out_rows])
    oK = np.stack([r[1] for r in out_rows])
    oC = np.array([r[2] for r in out_rows], dtype=np.int64)
    return oE, oK, oC


NAME = "numpy"
