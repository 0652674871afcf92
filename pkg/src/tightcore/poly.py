"""Multivariate polynomials over GF(p^e) and monomial orders.

A polynomial is a pair of parallel arrays: an ``(T, n)`` int64 exponent
matrix and a length-``T`` int64 coefficient vector, kept in canonical
form (strictly descending grevlex, no zero coefficients, no duplicate
monomials).  The zero polynomial has ``T = 0``.

Monomial orders are realized as integer *key matrices* ``M`` of shape
``(n, m)``: monomial ``u`` beats ``v`` exactly when ``u @ M`` beats
``v @ M`` lexicographically.  Keys are linear in the exponents, which
lets the Groebner kernels shift keys additively instead of recomputing
them.
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from .errors import DomainError


# ----------------------------------------------------------------------
# monomial orders
# ----------------------------------------------------------------------

class Order:
    """A monomial order: grevlex, lex, or a two-block elimination order
    (the dropped block compared first, grevlex within each block)."""

    __slots__ = ("kind", "perm", "drop")

    def __init__(self, kind: str, perm: tuple[int, ...] | None = None,
                 drop: tuple[int, ...] | None = None):
        if kind not in ("grevlex", "lex", "block"):
            raise DomainError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.perm = perm
        self.drop = drop

    def __eq__(self, other):
        return (isinstance(other, Order) and self.kind == other.kind
                and self.perm == other.perm and self.drop == other.drop)

    def __hash__(self):
        return hash((self.kind, self.perm, self.drop))

    def __repr__(self):
        if self.kind == "block":
            return f"Order(block, drop={self.drop})"
        if self.kind == "lex" and self.perm:
            return f"Order(lex, perm={self.perm})"
        return f"Order({self.kind})"

    def key_matrix(self, n: int) -> np.ndarray:
        """(n, m) int64 matrix; lexicographic comparison of exponent @ M
        realizes the order."""
        if self.kind == "grevlex":
            return _grevlex_matrix(n)
        if self.kind == "lex":
            perm = self.perm if self.perm is not None else tuple(range(n))
            m = np.zeros((n, n), dtype=np.int64)
            for c, v in enumerate(perm):
                m[v, c] = 1
            return m
        drop = tuple(sorted(self.drop))
        keep = tuple(i for i in range(n) if i not in drop)
        cols = [_deg_col(n, drop)] + _revneg_cols(n, drop) \
             + [_deg_col(n, keep)] + _revneg_cols(n, keep)
        return np.column_stack(cols) if cols else np.zeros((n, 0), np.int64)


def _deg_col(n, idxs):
    c = np.zeros(n, dtype=np.int64)
    c[list(idxs)] = 1
    return c


def _revneg_cols(n, idxs):
    # grevlex tie-break inside the block: -e_last, ..., -e_second
    out = []
    for v in list(idxs)[:0:-1]:
        c = np.zeros(n, dtype=np.int64)
        c[v] = -1
        out.append(c)
    return out


@lru_cache(maxsize=None)
def _grevlex_matrix(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    m[:, 0] = 1
    for c in range(1, n):
        m[n - c, c] = -1
    return m


GREVLEX = Order("grevlex")


def lex(perm: tuple[int, ...] | None = None) -> Order:
    return Order("lex", perm=perm)


def elim_block(drop: tuple[int, ...]) -> Order:
    """Order eliminating the variables with indices in ``drop``."""
    return Order("block", drop=tuple(sorted(drop)))


# ----------------------------------------------------------------------
# canonical term arrays
# ----------------------------------------------------------------------

def sort_terms(field, exps: np.ndarray, coeffs: np.ndarray, keymat: np.ndarray):
    """Canonicalize raw term arrays: sort descending by key, merge equal
    monomials with field addition, drop zeros."""
    if len(coeffs) == 0:
        return exps.reshape(0, keymat.shape[0]), coeffs
    keys = exps @ keymat
    idx = np.lexsort(keys.T[::-1])[::-1]
    exps = exps[idx]
    coeffs = coeffs[idx]
    keys = keys[idx]
    if len(coeffs) > 1:
        new = np.empty(len(coeffs), dtype=bool)
        new[0] = True
        new[1:] = np.any(keys[1:] != keys[:-1], axis=1)
        if not new.all():
            starts = np.flatnonzero(new)
            coeffs = field.reduceat_add(coeffs, starts)
            exps = exps[starts]
    nz = coeffs != 0
    if not nz.all():
        exps = exps[nz]
        coeffs = coeffs[nz]
    return exps, coeffs


# ----------------------------------------------------------------------
# Poly
# ----------------------------------------------------------------------

class Poly:
    """Immutable multivariate polynomial in canonical grevlex form."""

    __slots__ = ("ring", "exps", "coeffs", "_hash")

    def __init__(self, ring, exps: np.ndarray, coeffs: np.ndarray, _canonical=False):
        self.ring = ring
        if not _canonical:
            exps = np.asarray(exps, dtype=np.int64).reshape(-1, ring.nvars)
            coeffs = np.asarray(coeffs, dtype=np.int64)
            exps, coeffs = sort_terms(ring.field, exps, coeffs, ring.grevlex_matrix)
        exps.flags.writeable = False
        coeffs.flags.writeable = False
        self.exps = exps
        self.coeffs = coeffs
        self._hash = None

    # -- basics -----------------------------------------------------------
    def __len__(self):
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return int(self.exps.sum(axis=1).max())

    def lm_exp(self) -> np.ndarray:
        """Leading monomial exponent vector under grevlex."""
        if self.is_zero:
            raise DomainError("zero polynomial has no leading monomial")
        return self.exps[0]

    def lc(self) -> int:
        if self.is_zero:
            return 0
        return int(self.coeffs[0])

    def monic(self) -> "Poly":
        if self.is_zero or self.coeffs[0] == 1:
            return self
        inv = self.ring.field.inv(int(self.coeffs[0]))
        return Poly(self.ring, self.exps.copy(),
                    self.ring.field.mul_arr(self.coeffs, inv), _canonical=True)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.ring is other.ring
                and self.exps.shape == other.exps.shape
                and bool(np.array_equal(self.exps, other.exps))
                and bool(np.array_equal(self.coeffs, other.coeffs)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ring), self.exps.tobytes(), self.coeffs.tobytes()))
        return self._hash

    def _check(self, other):
        if self.ring is not other.ring:
            raise DomainError("polynomials from different rings")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        return Poly(self.ring,
                    np.concatenate([self.exps, other.exps]),
                    np.concatenate([self.coeffs, other.coeffs]))

    def __neg__(self):
        return Poly(self.ring, self.exps.copy(),
                    self.ring.field.neg_arr(self.coeffs), _canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero or other.is_zero:
            return self.ring.zero
        ta, tb = len(self), len(other)
        e = (self.exps[:, None, :] + other.exps[None, :, :]).reshape(ta * tb, -1)
        c = self.ring.field.mul_arr(
            np.repeat(self.coeffs, tb), np.tile(other.coeffs, ta))
        return Poly(self.ring, e, c)

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c: int) -> "Poly":
        """Multiply by a field scalar."""
        if c == 0:
            return self.ring.zero
        return Poly(self.ring, self.exps.copy(),
                    self.ring.field.mul_arr(self.coeffs, c), _canonical=True)

    def shift(self, expvec) -> "Poly":
        """Multiply by the monomial with exponent vector expvec."""
        if self.is_zero:
            return self
        return Poly(self.ring, self.exps + np.asarray(expvec, dtype=np.int64),
                    self.coeffs.copy(), _canonical=True)

    def subs(self, mapping: dict) -> "Poly":
        """Substitute polynomials for variables (oracle/testing aid)."""
        ring = self.ring
        out = ring.zero
        for ev, c in zip(self.exps, self.coeffs):
            term = ring.constant(int(c))
            for v, k in enumerate(ev):
                if k:
                    repl = mapping.get(ring.names[v])
                    if repl is None:
                        term = term * (ring.var(v) ** int(k))
                    else:
                        term = term * (repl ** int(k))
            out = out + term
        return out

    # -- printing -------------------------------------------------------------
    def __str__(self):
        if self.is_zero:
            return "0"
        field = self.ring.field
        parts = []
        for ev, c in zip(self.exps, self.coeffs):
            factors = []
            for v, k in enumerate(ev):
                if k == 1:
                    factors.append(self.ring.names[v])
                elif k > 1:
                    factors.append(f"{self.ring.names[v]}^{int(k)}")
            cs = field.scalar_str(int(c))
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self}>"


def divmod_single(f: Poly, g: Poly):
    """Quotient and remainder of division by a single polynomial
    (grevlex).  Exact division checks use ``r.is_zero``."""
    if g.is_zero:
        raise DomainError("division by the zero polynomial")
    ring = f.ring
    field = ring.field
    ginv = field.inv(g.lc())
    q = ring.zero
    r = f
    glm = g.lm_exp()
    while not r.is_zero:
        # first divisible term of r
        hit = np.flatnonzero(np.all(r.exps >= glm[None, :], axis=1))
        if len(hit) == 0:
            break
        i = int(hit[0])
        c = field.mul(int(r.coeffs[i]), ginv)
        sh = r.exps[i] - glm
        t = Poly(ring, sh.reshape(1, -1), np.array([c], dtype=np.int64))
        q = q + t
        r = r - t * g
    return q, r


# ----------------------------------------------------------------------
# parser:  expr := term (("+"|"-") term)* ;  term := factor ("*" factor)* ;
#          factor := atom ("^" int)? ;  atom := INT | NAME | "(" expr ")"
# ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([0-9]+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|\-|\(|\))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise DomainError(f"bad character {text[pos:].strip()[0]!r} in polynomial")
            break
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        p = self.term()
        if neg:
            p = -p
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            p = p - t if op == "-" else p + t
        return p

    def term(self):
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        p = self.atom()
        if self.peek() == "^":
            self.take()
            n = self.take()
            if n is None or not n.isdigit():
                raise DomainError("expected integer exponent after '^'")
            p = p ** int(n)
        return p

    def atom(self):
        ring = self.ring
        t = self.take()
        if t is None:
            raise DomainError("unexpected end of polynomial")
        if t == "(":
            p = self.expr()
            if self.take() != ")":
                raise DomainError("missing ')'")
            return p
        if t.isdigit():
            return ring.constant(ring.field.scalar(int(t)))
        if t in ring.name_index:
            return ring.var(ring.name_index[t])
        if t in ring.field.params:
            return ring.constant(ring.field.params[t])
        if t == "a" and ring.field.e > 1:
            # generator of the coefficient field, possibly then powered;
            # 'a^k' must exponentiate the scalar, so handle it here
            if self.peek() == "^":
                self.take()
                n = self.take()
                if n is None or not n.isdigit():
                    raise DomainError("expected integer exponent after '^'")
                return ring.constant(ring.field.pow(ring.field.generator, int(n)))
            return ring.constant(ring.field.generator)
        raise DomainError(f"unknown name {t!r} in polynomial")


def parse_poly(ring, text: str) -> Poly:
    toks = _tokenize(text)
    if not toks:
        raise DomainError("empty polynomial text")
    p = _Parser(ring, toks)
    out = p.expr()
    if p.i != len(toks):
        raise DomainError(f"trailing input near {toks[p.i][0]!r}")
    return out
