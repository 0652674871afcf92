"""Ideal calculus in quotient rings.

An :class:`Ideal` holds generators as elements of R (normal forms
modulo the defining relations) and lazily caches the Groebner basis of
its preimage (generators + relations).  Sums, products, bracket powers,
intersections, colons, equality, minimal generators, and the
m-primary / system-of-parameters predicates all reduce to Groebner
computations on preimages, which is faithful for ideals of the
origin-local rings this package targets.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .groebner import (DEFAULT_DEGREE_CAP, GroebnerBasis, buchberger, eliminate,
                       krull_dimension, quotient_vspace_basis)
from .linalg import rref, in_row_space
from .poly import GREVLEX, Poly, divmod_single


class Ideal:
    """Finitely generated ideal of a quotient ring."""

    __slots__ = ("ring", "gens", "degree_cap", "_gb", "_brackets", "_mu",
                 "_min_gens", "_dim_quot", "_powers", "_misc")

    def __init__(self, ring, gens, degree_cap: int = DEFAULT_DEGREE_CAP):
        self.ring = ring
        self.degree_cap = degree_cap
        rel_gb = relations_basis(ring, degree_cap)
        norm = []
        seen = set()
        for g in gens:
            g = ring.poly(g)
            g = rel_gb.normal_form(g) if len(rel_gb) else g
            if g.is_zero:
                continue
            g = g.monic()
            if g not in seen:
                seen.add(g)
                norm.append(g)
        self.gens = tuple(norm)
        self._gb = None
        self._brackets = {}
        self._powers = {}
        self._mu = None
        self._min_gens = None
        self._dim_quot = None
        self._misc = {}

    # -- plumbing ---------------------------------------------------------
    def _check(self, other: "Ideal"):
        if not isinstance(other, Ideal):
            raise DomainError("expected an Ideal")
        if other.ring is not self.ring:
            raise DomainError("ideals from different rings")

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def gb(self) -> GroebnerBasis:
        """Reduced grevlex basis of the preimage ideal (gens + relations)."""
        if self._gb is None:
            self._gb = buchberger(list(self.gens), ring=self.ring,
                                  degree_cap=self.degree_cap)
        return self._gb

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.canonical_gens()) + ")"

    def canonical_gens(self) -> tuple[Poly, ...]:
        """Display form: a minimal generating set when the ideal sits
        inside the irrelevant maximal ideal, the reduced basis otherwise."""
        if self.is_zero:
            return ()
        if self.gb.is_unit_ideal():
            return (self.ring.one,)
        if self.is_proper():
            return self.minimal_generators()[0]
        return self.gb.polys

    def key(self) -> tuple:
        """Canonical hashable identity (reduced basis strings)."""
        return tuple(str(g) for g in self.gb.polys)

    # -- membership / comparison --------------------------------------------
    def contains_poly(self, f) -> bool:
        return self.gb.contains(self.ring.poly(f))

    def contains(self, other: "Ideal") -> bool:
        self._check(other)
        return all(self.gb.contains(g) for g in other.gens)

    def __le__(self, other: "Ideal") -> bool:
        return other.contains(self)

    def __lt__(self, other: "Ideal") -> bool:
        return other.contains(self) and not self.contains(other)

    def equal(self, other: "Ideal") -> bool:
        self._check(other)
        return self.gb.polys == other.gb.polys

    __eq__ = equal

    def __hash__(self):
        return hash((id(self.ring), self.gb.polys))

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens, self.degree_cap)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        prods = [a * b for a in self.gens for b in other.gens]
        return Ideal(self.ring, prods, self.degree_cap)

    def __pow__(self, n: int) -> "Ideal":
        if n < 0:
            raise DomainError("negative ideal power")
        if n == 0:
            return Ideal(self.ring, (self.ring.one,), self.degree_cap)
        got = self._powers.get(n)
        if got is None:
            got = self if n == 1 else self * self ** (n - 1)
            self._powers[n] = got
        return got

    def bracket_power(self, q: int) -> "Ideal":
        """Frobenius power: the ideal of q-th powers of the generators,
        q a power of the characteristic (that generating set suffices
        in characteristic p)."""
        self.ring.field.check_q(q)
        got = self._brackets.get(q)
        if got is None:
            got = Ideal(self.ring, [g ** q for g in self.gens], self.degree_cap)
            self._brackets[q] = got
        return got

    def intersect(self, other: "Ideal") -> "Ideal":
        """Intersection via the auxiliary-variable elimination trick."""
        self._check(other)
        if self.is_zero or other.is_zero:
            return Ideal(self.ring, (), self.degree_cap)
        ring = self.ring
        (t_name,) = ring.fresh_names("t@", 1)
        ext = ring.extend((t_name,))
        t = ext.var(0)
        one = ext.one
        gens = [t * ring.lift(g, ext) for g in self.gens]
        gens += [(one - t) * ring.lift(g, ext) for g in other.gens]
        gens += list(ext.relations)
        G = buchberger(gens, ring=ext, order=_elim_first(ext, 1),
                       include_relations=False, degree_cap=self.degree_cap)
        kept = eliminate(G, range(1, ext.nvars))
        return Ideal(ring, [ring.project(g, ext) for g in kept.polys],
                     self.degree_cap)

    def __and__(self, other):
        return self.intersect(other)

    def colon_poly(self, f) -> "Ideal":
        """(self : f) for a single nonzero element f of R."""
        ring = self.ring
        f = ring.poly(f)
        rel_gb = relations_basis(ring, self.degree_cap)
        fr = rel_gb.normal_form(f) if len(rel_gb) else f
        if fr.is_zero:
            raise DomainError("colon by the zero element")
        if self.is_zero:
            return Ideal(ring, (), self.degree_cap)
        # preimage colon: (I~ : f) = (I~ meet (f)) / f inside the
        # polynomial ring, where I~ includes the relations
        (t_name,) = ring.fresh_names("t@", 1)
        ext = ring.extend((t_name,))
        t = ext.var(0)
        one = ext.one
        gens = [t * ring.lift(g, ext) for g in self.gens]
        gens += [t * r for r in ext.relations]
        gens.append((one - t) * ring.lift(fr, ext))
        G = buchberger(gens, ring=ext, order=_elim_first(ext, 1),
                       include_relations=False, degree_cap=self.degree_cap)
        kept = eliminate(G, range(1, ext.nvars))
        out = []
        for g in kept.polys:
            q, r = divmod_single(ring.project(g, ext), fr)
            if not r.is_zero:
                raise AssertionError("inexact division in colon")  # unreachable
            out.append(q)
        return Ideal(ring, out, self.degree_cap)

    def colon(self, other: "Ideal") -> "Ideal":
        """(self : other) = {r : r*other <= self}."""
        self._check(other)
        if other.is_zero:
            raise DomainError("colon by the zero ideal")
        result = None
        for f in other.gens:
            part = self.colon_poly(f)
            result = part if result is None else result.intersect(part)
        return result

    # -- numerical invariants ---------------------------------------------------
    def dim_quotient(self) -> int:
        """Krull dimension of R / self."""
        if self._dim_quot is None:
            self._dim_quot = krull_dimension(self.gb)
        return self._dim_quot

    def is_proper(self) -> bool:
        return not self.gb.is_unit_ideal()

    def in_max_ideal(self) -> bool:
        """Is the ideal contained in (x_1, .., x_n)?"""
        m = maximal_ideal(self.ring)
        return all(m.gb.contains(g) for g in self.gens)

    def is_m_primary(self) -> bool:
        """Radical equal to the irrelevant maximal ideal."""
        return (not self.is_zero) and self.in_max_ideal() and self.dim_quotient() == 0

    def vspace_dim(self, bound: int = DEFAULT_DEGREE_CAP) -> int:
        """dim_k R/self for m-primary self."""
        mons, complete = quotient_vspace_basis(self.gb, bound)
        if not complete:
            raise DomainError("quotient is not finite dimensional")
        return len(mons)

    def minimal_generators(self):
        """(tuple of polys, mu): images form a basis of I/mI.

        Requires self <= m; mu = dim_k I/mI is independent of the given
        generators (Nakayama), computed by exact linear algebra on
        normal forms modulo mI."""
        if self._min_gens is not None:
            return self._min_gens
        if self.is_zero:
            self._min_gens = ((), 0)
            return self._min_gens
        if not self.in_max_ideal():
            raise DomainError("minimal generators require an ideal inside m")
        ring = self.ring
        field = ring.field
        mI = maximal_ideal(ring) * self
        gb_mI = mI.gb
        nfs = [gb_mI.normal_form(g) for g in self.gens]
        # coordinates over the union of monomials appearing
        mono_index = {}
        for f in nfs:
            for ev in f.exps:
                mono_index.setdefault(tuple(int(x) for x in ev), len(mono_index))
        if not mono_index:
            self._min_gens = ((), 0)
            return self._min_gens
        rows = np.zeros((len(nfs), len(mono_index)), dtype=np.int64)
        for i, f in enumerate(nfs):
            for ev, c in zip(f.exps, f.coeffs):
                rows[i, mono_index[tuple(int(x) for x in ev)]] = int(c)
        kept = []
        R = np.zeros((0, len(mono_index)), dtype=np.int64)
        pivots: list[int] = []
        for i, g in enumerate(self.gens):
            if not np.any(rows[i]):
                continue
            if in_row_space(field, R, pivots, rows[i]):
                continue
            kept.append(g)
            R, pivots = rref(field, np.concatenate([R, rows[i][None, :]]))
        self._min_gens = (tuple(kept), len(kept))
        return self._min_gens

    @property
    def mu(self) -> int:
        """Minimal number of generators."""
        return self.minimal_generators()[1]

    def height(self) -> int:
        """dim R - dim R/I (catenary local setting)."""
        return self.ring.dim - max(self.dim_quotient(), 0)

    def is_sop_ideal(self) -> bool:
        """Generated by a full system of parameters: mu = dim R, the
        quotient is zero dimensional, and some generator ordering drops
        the dimension by one at each step."""
        if self.is_zero or not self.in_max_ideal():
            return False
        d = self.ring.dim
        mg, mu = self.minimal_generators()
        if mu != d or self.dim_quotient() != 0:
            return False
        remaining = list(mg)
        current: list[Poly] = []
        dim_now = d
        while remaining:
            found = None
            for g in remaining:
                cand = Ideal(self.ring, current + [g], self.degree_cap)
                if cand.dim_quotient() == dim_now - 1:
                    found = g
                    break
            if found is None:
                return False
            current.append(found)
            remaining.remove(found)
            dim_now -= 1
        return True


# ----------------------------------------------------------------------
# helpers
# ----------------------------------------------------------------------

def origin_component_cached(I: Ideal) -> Ideal:
    got = I._misc.get("origin_component")
    if got is None:
        got = origin_component(I)
        I._misc["origin_component"] = got
    return got


def origin_component(I: Ideal, cap: int = 50) -> Ideal:
    """Primary component of I at the origin: the stabilized I + m^N.

    For ideals with a zero-dimensional quotient this is the pullback of
    the localization at the irrelevant maximal ideal (once I + m^N
    stabilizes, Nakayama puts m^N inside the localized ideal).  In the
    non-graded rings here an ideal can be m-primary locally while its
    affine variety picks up points away from the origin; colon and
    reduction certificates must be computed on this handle to match the
    local answers.  Returns I itself when I is already m-primary (or
    when no zero-dimensional component exists to extract)."""
    if I.is_zero or not I.in_max_ideal() or I.dim_quotient() != 0:
        return I
    m = maximal_ideal(I.ring)
    # doubling: equal values at exponents a < b force m^a into the
    # component, so the sequence is already stable at a
    N = 2
    prev = I + m ** N
    if prev == I:
        return I
    while N < cap:
        N = min(2 * N, cap)
        cur = I + m ** N
        if cur == I:
            return I
        if cur == prev:
            return prev
        prev = cur
    from .errors import ResourceError
    raise ResourceError("origin component did not stabilize")


def relations_basis(ring, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    """Reduced basis of the defining relations (cached on the ring)."""
    got = ring._gb_cache.get(("relations", degree_cap))
    if got is None:
        got = buchberger([], ring=ring, degree_cap=degree_cap)
        ring._gb_cache[("relations", degree_cap)] = got
    return got


def maximal_ideal(ring) -> Ideal:
    """The irrelevant maximal ideal (all variables)."""
    got = ring._gb_cache.get("maxideal")
    if got is None:
        got = Ideal(ring, ring.vars())
        ring._gb_cache["maxideal"] = got
    return got


def _elim_first(ext_ring, k: int):
    from .poly import elim_block
    return elim_block(tuple(range(k)))
