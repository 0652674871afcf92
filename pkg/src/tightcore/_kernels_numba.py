"""JIT-compiled term kernels (the hot path of every Groebner run).

The reduction loop below dominates the runtime of the whole package:
colon, intersection, closure and core computations are all stacks of
normal forms.  Terms are triples of parallel arrays (exponent rows,
order-key rows, coefficient) kept strictly descending in the key; a
reduction step is a sorted two-way merge, so no sorting happens inside
the loop.  Field arithmetic is inlined: log/exp lookups for products,
digit arithmetic mod p for sums.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _fadd(a, b, p, e):
    if p == 2:
        return a ^ b
    if e == 1:
        return (a + b) % p
    r = np.int64(0)
    pk = np.int64(1)
    for _ in range(e):
        r += ((a // pk + b // pk) % p) * pk
        pk *= p
    return r


@njit(cache=True, inline="always")
def _fneg(a, p, e):
    if p == 2:
        return a
    if e == 1:
        return (-a) % p
    r = np.int64(0)
    pk = np.int64(1)
    for _ in range(e):
        r += ((-(a // pk)) % p) * pk
        pk *= p
    return r


@njit(cache=True, inline="always")
def _fmul(a, b, expt, logt, om1):
    if a == 0 or b == 0:
        return np.int64(0)
    return expt[(logt[a] + logt[b]) % om1]


@njit(cache=True)
def _nf(E, K, C, BE, BK, BC, boff, KM, p, e, expt, logt, order):
    n = E.shape[1]
    m = K.shape[1]
    nb = boff.shape[0] - 1
    om1 = order - 1
    cap = E.shape[0] + 8
    oE = np.empty((cap, n), np.int64)
    oK = np.empty((cap, m), np.int64)
    oC = np.empty(cap, np.int64)
    nout = 0
    wE = E.copy()
    wK = K.copy()
    wC = C.copy()
    nw = E.shape[0]
    wi = 0
    sh = np.empty(n, np.int64)
    shk = np.empty(m, np.int64)
    while wi < nw:
        red = -1
        for b in range(nb):
            r0 = boff[b]
            ok = True
            for j in range(n):
                if BE[r0, j] > wE[wi, j]:
                    ok = False
                    break
            if ok:
                red = b
                break
        if red < 0:
            # head term irreducible: emit it
            if nout >= cap:
                cap2 = cap * 2
                nE2 = np.empty((cap2, n), np.int64)
                nK2 = np.empty((cap2, m), np.int64)
                nC2 = np.empty(cap2, np.int64)
                nE2[:nout] = oE[:nout]
                nK2[:nout] = oK[:nout]
                nC2[:nout] = oC[:nout]
                oE, oK, oC, cap = nE2, nK2, nC2, cap2
            for j in range(n):
                oE[nout, j] = wE[wi, j]
            for j in range(m):
                oK[nout, j] = wK[wi, j]
            oC[nout] = wC[wi]
            nout += 1
            wi += 1
            continue
        # cancel head against monic basis element `red`
        r0 = boff[red]
        r1 = boff[red + 1]
        c = wC[wi]
        for j in range(n):
            sh[j] = wE[wi, j] - BE[r0, j]
        for j in range(m):
            s = np.int64(0)
            for i2 in range(n):
                s += sh[i2] * KM[i2, j]
            shk[j] = s
        lena = nw - wi - 1
        lenb = r1 - r0 - 1
        tE = np.empty((lena + lenb, n), np.int64)
        tK = np.empty((lena + lenb, m), np.int64)
        tC = np.empty(lena + lenb, np.int64)
        ia = wi + 1
        ib = r0 + 1
        k = 0
        while ia < nw and ib < r1:
            cmp = 0
            for j in range(m):
                d = wK[ia, j] - (BK[ib, j] + shk[j])
                if d > 0:
                    cmp = 1
                    break
                if d < 0:
                    cmp = -1
                    break
            if cmp > 0:
                for j in range(n):
                    tE[k, j] = wE[ia, j]
                for j in range(m):
                    tK[k, j] = wK[ia, j]
                tC[k] = wC[ia]
                ia += 1
                k += 1
            elif cmp < 0:
                for j in range(n):
                    tE[k, j] = BE[ib, j] + sh[j]
                for j in range(m):
                    tK[k, j] = BK[ib, j] + shk[j]
                tC[k] = _fneg(_fmul(c, BC[ib], expt, logt, om1), p, e)
                ib += 1
                k += 1
            else:
                v = _fadd(wC[ia], _fneg(_fmul(c, BC[ib], expt, logt, om1), p, e), p, e)
                if v != 0:
                    for j in range(n):
                        tE[k, j] = wE[ia, j]
                    for j in range(m):
                        tK[k, j] = wK[ia, j]
                    tC[k] = v
                    k += 1
                ia += 1
                ib += 1
        while ia < nw:
            for j in range(n):
                tE[k, j] = wE[ia, j]
            for j in range(m):
                tK[k, j] = wK[ia, j]
            tC[k] = wC[ia]
            ia += 1
            k += 1
        while ib < r1:
            for j in range(n):
                tE[k, j] = BE[ib, j] + sh[j]
            for j in range(m):
                tK[k, j] = BK[ib, j] + shk[j]
            tC[k] = _fneg(_fmul(c, BC[ib], expt, logt, om1), p, e)
            ib += 1
            k += 1
        wE, wK, wC = tE, tK, tC
        nw = k
        wi = 0
    return oE[:nout], oK[:nout], oC[:nout]


def normal_form(field, keymat, E, K, C, BE, BK, BC, boff):
    """Reduce the term triple (E, K, C) by the packed monic basis."""
    p, e, _pp, expt, logt, order = field.kernel_ctx()
    return _nf(E, K, C, BE, BK, BC, boff, keymat,
               np.int64(p), np.int64(e), expt, logt, np.int64(order))


NAME = "numba"
