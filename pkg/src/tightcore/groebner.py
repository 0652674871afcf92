"""Buchberger's algorithm, normal forms, elimination, dimension.

All computations happen in the ambient polynomial ring; quotient-ring
ideals enter as generators together with the ring's defining relations.
The pair loop uses the normal selection strategy (smallest lcm degree)
with the product and chain criteria, and a hard total-degree ceiling
that aborts runaway computations instead of hanging.  Identical inputs
(including the order) produce byte-identical bases.
"""

from __future__ import annotations

from heapq import heappush, heappop
from itertools import combinations

import numpy as np

from .backend import kernels
from .errors import DomainError, ResourceError
from .poly import GREVLEX, Order, Poly, elim_block, sort_terms

DEFAULT_DEGREE_CAP = 60


def _canon_under(field, exps, coeffs, keymat):
    """(E, K, C) canonical (descending, merged, nonzero) under keymat."""
    exps, coeffs = sort_terms(field, exps, coeffs, keymat)
    return exps, exps @ keymat, coeffs


def _poly_to_terms(f: Poly, keymat):
    return _canon_under(f.ring.field, f.exps.copy(), f.coeffs.copy(), keymat)


def _terms_to_poly(ring, E, C) -> Poly:
    return Poly(ring, E.copy(), C.copy())


class GroebnerBasis:
    """A reduced Groebner basis: monic elements, no head divisible by
    another head, tails fully reduced; sorted by ascending head."""

    __slots__ = ("ring", "order", "polys", "degree_cap", "_keymat", "_packed")

    def __init__(self, ring, order: Order, polys: tuple[Poly, ...],
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.ring = ring
        self.order = order
        self.polys = tuple(polys)
        self.degree_cap = degree_cap
        self._keymat = order.key_matrix(ring.nvars)
        self._packed = None

    reduced = True

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring is other.ring
                and self.order == other.order and self.polys == other.polys)

    def __hash__(self):
        return hash((id(self.ring), self.order, self.polys))

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.polys) + "}"

    @property
    def keymat(self):
        return self._keymat

    def packed(self):
        """(BE, BK, BC, boff) concatenated term arrays for the kernel."""
        if self._packed is None:
            if not self.polys:
                n, m = self.ring.nvars, self._keymat.shape[1]
                self._packed = (np.zeros((0, n), np.int64), np.zeros((0, m), np.int64),
                                np.zeros(0, np.int64), np.zeros(1, np.int64))
            else:
                parts = [_poly_to_terms(g, self._keymat) for g in self.polys]
                boff = np.zeros(len(parts) + 1, dtype=np.int64)
                for i, (E, _K, _C) in enumerate(parts):
                    boff[i + 1] = boff[i] + len(E)
                BE = np.concatenate([P[0] for P in parts])
                BK = np.concatenate([P[1] for P in parts])
                BC = np.concatenate([P[2] for P in parts])
                self._packed = (BE, BK, BC, boff)
        return self._packed

    def lead_exps(self) -> np.ndarray:
        """(len, n) matrix of head-monomial exponents."""
        BE, _BK, _BC, boff = self.packed()
        return BE[boff[:-1]] if len(self.polys) else np.zeros((0, self.ring.nvars), np.int64)

    def normal_form(self, f: Poly) -> Poly:
        """Remainder of f under multivariate division by this basis."""
        if f.ring is not self.ring:
            raise DomainError("polynomial from a different ring")
        if f.is_zero or not self.polys:
            return f
        E, K, C = _poly_to_terms(f, self._keymat)
        BE, BK, BC, boff = self.packed()
        rE, _rK, rC = kernels().normal_form(self.ring.field, self._keymat,
                                            E, K, C, BE, BK, BC, boff)
        return _terms_to_poly(self.ring, rE, rC)

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero

    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].total_degree == 0


def spoly(f: Poly, g: Poly, order: Order = GREVLEX) -> Poly:
    """S-polynomial under the given order (f, g nonzero)."""
    keymat = order.key_matrix(f.ring.nvars)
    fE, _fK, fC = _poly_to_terms(f, keymat)
    gE, _gK, gC = _poly_to_terms(g, keymat)
    lcm = np.maximum(fE[0], gE[0])
    field = f.ring.field
    a = Poly(f.ring, fE + (lcm - fE[0])[None, :],
             field.mul_arr(fC, field.inv(int(fC[0]))))
    b = Poly(g.ring, gE + (lcm - gE[0])[None, :],
             field.mul_arr(gC, field.inv(int(gC[0]))))
    return a - b


def buchberger(gens, *, ring=None, order: Order = GREVLEX,
               include_relations: bool = True,
               degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    """Reduced Groebner basis of (gens) + (ring relations).

    Deterministic for a fixed generator sequence and order.  Raises
    ResourceError when an S-polynomial remainder exceeds ``degree_cap``.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise DomainError("ring required for empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring is not ring:
            raise DomainError("generators from different rings")
    field = ring.field
    keymat = order.key_matrix(ring.nvars)

    seeds = []
    seen = set()
    source = (list(ring.relations) if include_relations else []) + gens
    for g in source:
        if g.is_zero:
            continue
        g = g.monic()
        if g not in seen:
            seen.add(g)
            seeds.append(g)
    if not seeds:
        return GroebnerBasis(ring, order, (), degree_cap)

    # working basis state
    basis: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []  # (E, K, C)
    packed = None

    def repack():
        nonlocal packed
        boff = np.zeros(len(basis) + 1, dtype=np.int64)
        for i, (E, _K, _C) in enumerate(basis):
            boff[i + 1] = boff[i] + len(E)
        BE = np.concatenate([b[0] for b in basis])
        BK = np.concatenate([b[1] for b in basis])
        BC = np.concatenate([b[2] for b in basis])
        packed = (BE, BK, BC, boff)

    def reduce_terms(E, K, C):
        if packed is None or len(C) == 0:
            return E, K, C
        BE, BK, BC, boff = packed
        rE, rK, rC = kernels().normal_form(field, keymat, E, K, C, BE, BK, BC, boff)
        return rE, rK, rC

    heap: list[tuple[int, int, int]] = []
    pending: set[tuple[int, int]] = set()

    def add_poly(E, K, C):
        # monic normalize
        c0 = int(C[0])
        if c0 != 1:
            C = field.mul_arr(C, field.inv(c0))
        idx = len(basis)
        for j in range(idx):
            lm_j = basis[j][0][0]
            lcm_deg = int(np.maximum(lm_j, E[0]).sum())
            heappush(heap, (lcm_deg, j, idx))
            pending.add((j, idx))
        basis.append((E, K, C))
        repack()

    for g in seeds:
        E, K, C = _poly_to_terms(g, keymat)
        rE, rK, rC = reduce_terms(E, K, C)
        if len(rC):
            add_poly(rE, rK, rC)

    while heap:
        _deg, i, j = heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lm_i, lm_j = basis[i][0][0], basis[j][0][0]
        lcm = np.maximum(lm_i, lm_j)
        # product criterion: coprime heads never yield new elements
        if int(np.minimum(lm_i, lm_j).sum()) == 0:
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if np.all(basis[k][0][0] <= lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        # S-polynomial of two monic elements
        Ei, Ki, Ci = basis[i]
        Ej, Kj, Cj = basis[j]
        shi = lcm - lm_i
        shj = lcm - lm_j
        E = np.concatenate([Ei + shi[None, :], Ej + shj[None, :]])
        C = np.concatenate([Ci, field.neg_arr(Cj)])
        E, K, C = _canon_under(field, E, C, keymat)
        rE, rK, rC = reduce_terms(E, K, C)
        if len(rC):
            deg = int(rE.sum(axis=1).max())
            if deg > degree_cap:
                raise ResourceError(
                    f"degree cap {degree_cap} exceeded (S-polynomial remainder "
                    f"of degree {deg}); raise degree_cap if this is intended")
            add_poly(rE, rK, rC)

    # interreduce: minimal heads, then reduced tails
    polys = [_terms_to_poly(ring, E, C) for (E, K, C) in basis]
    lead = [E[0] for (E, _K, _C) in basis]
    order_keys = [tuple((lm @ keymat).tolist()) for lm in lead]
    by_key = sorted(range(len(polys)), key=lambda t: order_keys[t])
    kept: list[int] = []
    for t in by_key:
        if not any(np.all(lead[u] <= lead[t]) for u in kept):
            kept.append(t)
    final = [polys[t] for t in kept]
    changed = True
    guard = 0
    while changed and guard < 100:
        changed = False
        guard += 1
        for idx in range(len(final)):
            others = GroebnerBasis(ring, order,
                                   tuple(final[:idx] + final[idx + 1:]), degree_cap)
            r = others.normal_form(final[idx])
            if r.is_zero:
                final.pop(idx)
                changed = True
                break
            r = r.monic()
            if r != final[idx]:
                final[idx] = r
                changed = True
    final.sort(key=lambda f: tuple((f.exps[0] @ keymat).tolist()) if not f.is_zero else ())
    return GroebnerBasis(ring, order, tuple(final), degree_cap)


def eliminate(G: GroebnerBasis, keep) -> GroebnerBasis:
    """Groebner basis of the ideal's contraction to the subring on the
    kept variables (indices or names)."""
    ring = G.ring
    keep_idx = sorted(ring.name_index[v] if isinstance(v, str) else int(v)
                      for v in keep)
    drop = tuple(i for i in range(ring.nvars) if i not in keep_idx)
    if not drop:
        return G
    want = elim_block(drop)
    if G.order == want:
        H = G
    else:
        H = buchberger(list(G.polys), ring=ring, order=want,
                       include_relations=False, degree_cap=G.degree_cap)
    out = tuple(g for g in H.polys if not np.any(g.exps[:, drop]))
    return GroebnerBasis(ring, want, out, G.degree_cap)


def krull_dimension(G: GroebnerBasis) -> int:
    """Dimension of the quotient by the ideal of G: the largest set of
    variables meeting no head monomial's support (-1 for the unit
    ideal)."""
    n = G.ring.nvars
    if not G.polys:
        return n
    lead = G.lead_exps()
    if int(lead.sum(axis=1).min()) == 0:
        return -1  # contains a unit
    supports = [frozenset(np.flatnonzero(lm).tolist()) for lm in lead]
    for size in range(n, 0, -1):
        for S in combinations(range(n), size):
            sset = set(S)
            if not any(sup <= sset for sup in supports):
                return size
    return 0


def _level_monomials(n: int, d: int):
    """All exponent vectors of total degree d (degrevlex-ish stable order)."""
    if n == 1:
        yield np.array([d], dtype=np.int64)
        return
    for first in range(d, -1, -1):
        for rest in _level_monomials(n - 1, d - first):
            yield np.concatenate([np.array([first], dtype=np.int64), rest])


def quotient_vspace_basis(G: GroebnerBasis, bound: int = DEFAULT_DEGREE_CAP):
    """Standard monomials (not divisible by any head) of total degree
    <= bound.  Returns (list of exponent tuples, complete_flag): the
    flag is set when a whole degree level is empty, which closes the
    staircase for good."""
    n = G.ring.nvars
    lead = G.lead_exps()
    if len(lead) and int(lead.sum(axis=1).min()) == 0:
        return [], True  # unit ideal: nothing survives
    out = []
    for d in range(0, bound + 1):
        level = []
        for ev in _level_monomials(n, d):
            if len(lead) == 0 or not np.any(np.all(lead <= ev[None, :], axis=1)):
                level.append(tuple(int(x) for x in ev))
        if d > 0 and not level:
            return out, True
        out.extend(level)
        if len(out) > 200_000:
            raise ResourceError("standard monomial enumeration too large")
    return out, False
