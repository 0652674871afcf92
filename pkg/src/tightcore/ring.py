"""Quotient-ring descriptors R = k[x_1..x_n] / Q.

Everything downstream computes with preimage ideals in the ambient
polynomial ring: an ideal of R is represented by its generators plus
the defining relations Q, and all ideal identities (sum, product,
colon, intersection, containment) pass through that preimage, which is
faithful for the origin-local questions this package answers.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .poly import GREVLEX, Poly, parse_poly


class Ring:
    """Ambient polynomial ring over GF(p^e) with optional relations.

    ``hypersurface_isolated_singularity`` declares that R is a
    hypersurface (hence Gorenstein) with an isolated singularity at the
    origin; that hypothesis, together with a known test ideal, licenses
    computing the tight closure of parameter ideals as a colon by the
    test ideal.  It is a declared hypothesis of the input, not derived:
    the Jacobian criterion is unreliable in small characteristic.
    """

    __slots__ = ("field", "names", "name_index", "relations", "grevlex_matrix",
                 "hypersurface_isolated_singularity", "test_ideal_gens",
                 "_dim", "_zero", "_one", "_vars", "_gb_cache")

    def __init__(self, field, names, relations=(), *,
                 hypersurface_isolated_singularity: bool = False,
                 test_ideal=None):
        if isinstance(names, str):
            names = tuple(s.strip() for s in names.split(",") if s.strip())
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DomainError("duplicate variable names")
        for nm in names:
            if nm in field.params or (nm == "a" and field.e > 1):
                raise DomainError(f"variable name {nm!r} collides with a scalar name")
        self.field = field
        self.names = names
        self.name_index = {nm: i for i, nm in enumerate(names)}
        self.grevlex_matrix = GREVLEX.key_matrix(len(names))
        self._zero = Poly(self, np.zeros((0, len(names)), dtype=np.int64),
                          np.zeros(0, dtype=np.int64), _canonical=True)
        self._one = Poly(self, np.zeros((1, len(names)), dtype=np.int64),
                         np.ones(1, dtype=np.int64), _canonical=True)
        self._vars = None
        self._gb_cache = {}
        self._dim = None

        rel = []
        for r in relations:
            pr = parse_poly(self, r) if isinstance(r, str) else r
            if pr.ring is not self:
                raise DomainError("relation from a different ring")
            if pr.is_zero:
                continue
            rel.append(pr.monic())
        self.relations = tuple(rel)
        self.hypersurface_isolated_singularity = bool(hypersurface_isolated_singularity)
        if test_ideal is not None:
            test_ideal = tuple(parse_poly(self, g) if isinstance(g, str) else g
                               for g in test_ideal)
        self.test_ideal_gens = test_ideal

    # -- element constructors ------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> Poly:
        return self._zero

    @property
    def one(self) -> Poly:
        return self._one

    def var(self, i: int) -> Poly:
        e = np.zeros((1, self.nvars), dtype=np.int64)
        e[0, i] = 1
        return Poly(self, e, np.ones(1, dtype=np.int64), _canonical=True)

    def vars(self) -> tuple[Poly, ...]:
        if self._vars is None:
            self._vars = tuple(self.var(i) for i in range(self.nvars))
        return self._vars

    def constant(self, c: int) -> Poly:
        if c == 0:
            return self._zero
        return Poly(self, np.zeros((1, self.nvars), dtype=np.int64),
                    np.array([c], dtype=np.int64), _canonical=True)

    def poly(self, src) -> Poly:
        if isinstance(src, Poly):
            if src.ring is not self:
                raise DomainError("polynomial from a different ring")
            return src
        if isinstance(src, str):
            return parse_poly(self, src)
        if isinstance(src, int):
            return self.constant(self.field.scalar(src))
        raise DomainError(f"cannot coerce {type(src).__name__} to a polynomial")

    def __repr__(self):
        base = f"{self.field!r}[{','.join(self.names)}]"
        if self.relations:
            base += "/(" + ", ".join(str(r) for r in self.relations) + ")"
        return base

    # -- structure -------------------------------------------------------------
    @property
    def dim(self) -> int:
        """Krull dimension of R (computed once from the relations)."""
        if self._dim is None:
            from .groebner import buchberger, krull_dimension
            self._dim = krull_dimension(buchberger((), ring=self))
        return self._dim

    def extend(self, extra_names: tuple[str, ...]) -> "Ring":
        """New ring with ``extra_names`` prepended and relations lifted.
        Used internally for elimination tricks (intersections, Rees)."""
        for nm in extra_names:
            if nm in self.name_index:
                raise DomainError(f"auxiliary name {nm!r} collides")
        ext = Ring(self.field, tuple(extra_names) + self.names)
        ext.relations = tuple(self.lift(r, ext) for r in self.relations)
        return ext

    def lift(self, f: Poly, ext: "Ring") -> Poly:
        """Reinterpret f in an extension of this ring (extra vars first)."""
        k = ext.nvars - self.nvars
        if f.is_zero:
            return ext.zero
        e = np.concatenate(
            [np.zeros((len(f), k), dtype=np.int64), f.exps], axis=1)
        return Poly(ext, e, f.coeffs.copy(), _canonical=True)

    def project(self, f: Poly, ext: "Ring") -> Poly:
        """Inverse of lift for polynomials free of the extra variables."""
        k = ext.nvars - self.nvars
        if f.is_zero:
            return self.zero
        if np.any(f.exps[:, :k]):
            raise DomainError("polynomial involves auxiliary variables")
        return Poly(self, f.exps[:, k:].copy(), f.coeffs.copy(), _canonical=True)

    def fresh_names(self, base: str, count: int) -> tuple[str, ...]:
        """count variable names built from ``base`` avoiding collisions."""
        out = []
        k = 0
        while len(out) < count:
            cand = f"{base}{k}"
            if cand not in self.name_index and cand not in self.field.params:
                out.append(cand)
            k += 1
        return tuple(out)
