"""Exact arithmetic in GF(p^e) with table-based multiplication.

Field elements are plain Python ints in ``[0, p^e)``: the base-p digits
of the int are the coefficients of the residue-class representative in
``GF(p)[x]/(modulus)``, least-significant digit first.  The modulus is
the first monic irreducible polynomial of degree e when monic degree-e
polynomials are enumerated by that same integer encoding, so a field is
completely determined by (p, e) and two runs always agree.

Multiplication, division approximately and powering go through discrete
log/antilog tables built once per (p, e) and shared.  Addition is
digit-wise mod p (a single XOR when p = 2).  The table size bounds the
supported field order; everything here is desk scale, not crypto scale.

Nonzero elements print as powers ``a^k`` of the table generator ``a``
(prime-field elements print as integers); ``GF.scalar`` parses the same
forms back.

A field may carry named *parameters*: transcendental coefficients of a
ring family specialized to random nonzero field values drawn from
``seed``.  Equal (p, e, seed) always give identical specializations;
re-running a computation under several seeds is the caller's genericity
check.
"""

from __future__ import annotations

import numpy as np

from ._rng import Rng
from .errors import DomainError

#: largest p^e for which log/exp tables are built (2 x 64 MiB of int64)
MAX_TABLE_ORDER = 1 << 23


# ----------------------------------------------------------------------
# dense polynomial helpers over Z/p (lists of digits, low degree first);
# only used while deriving the modulus and the generator, never in hot
# paths.
# ----------------------------------------------------------------------

def _trim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _polymulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _polyrem(out, mod, p)


def _polyrem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    linv = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        _trim(a)
        if len(a) - 1 < dm or not a:
            break
        c = (a[-1] * linv) % p
        s = len(a) - 1 - dm
        for j, mj in enumerate(mod):
            a[s + j] = (a[s + j] - c * mj) % p
        _trim(a)
    return _trim(a)


def _polypowmod(base, n, mod, p):
    r = [1]
    b = _polyrem(base, mod, p)
    while n:
        if n & 1:
            r = _polymulmod(r, b, mod, p)
        b = _polymulmod(b, b, mod, p)
        n >>= 1
    return r


def _polymod_pair(a, b, p):
    """Remainder of a mod b (b nonzero)."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError
    dm = len(b) - 1
    linv = pow(b[-1], p - 2, p)
    while a and len(a) - 1 >= dm:
        c = (a[-1] * linv) % p
        s = len(a) - 1 - dm
        for j, bj in enumerate(b):
            a[s + j] = (a[s + j] - c * bj) % p
        _trim(a)
    return a


def _gcd_poly(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, _polymod_pair(a, b, p)
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(mod, p):
    """Rabin test: x^(p^e) == x mod f, and gcd(x^(p^(e/l)) - x, f) = 1
    for every prime l dividing e."""
    e = len(mod) - 1
    x = [0, 1]
    if _poly_sub(_polypowmod(x, p ** e, mod, p), x, p):
        return False
    for ell in _prime_factors(e):
        diff = _poly_sub(_polypowmod(x, p ** (e // ell), mod, p), x, p)
        g = _gcd_poly(diff, mod, p)
        if len(g) - 1 != 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _derive_modulus(p, e):
    """First monic irreducible of degree e in the integer enumeration of
    the low digits; returns the digit list of length e+1 (monic)."""
    if e == 1:
        return None
    pp = [p ** i for i in range(e)]
    for code in range(1, p ** e):
        low = [(code // pp[i]) % p for i in range(e)]
        if low[0] == 0:
            continue  # divisible by x
        mod = low + [1]
        if _is_irreducible(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")  # impossible


# ----------------------------------------------------------------------
# shared tables, one instance per (p, e)
# ----------------------------------------------------------------------

_TABLE_CACHE: dict[tuple[int, int], "_Tables"] = {}


class _Tables:
    def __init__(self, p: int, e: int):
        order = p ** e
        if order > MAX_TABLE_ORDER:
            raise DomainError(
                f"GF({p}^{e}) has order {order} > {MAX_TABLE_ORDER}; "
                "too large for table-based arithmetic")
        self.p = p
        self.e = e
        self.order = order
        self.modulus = _derive_modulus(p, e)
        self.pp = np.array([p ** i for i in range(e)], dtype=np.int64)
        self.generator = self._find_generator()
        self.exp, self.log = self._build_tables()

    # -- element <-> digit vector -------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // int(q)) % p for q in self.pp]

    def from_digits(self, d) -> int:
        return int(sum(int(c) % self.p * int(q) for c, q in zip(d, self.pp)))

    def _raw_mul(self, a: int, b: int) -> int:
        """Table-free product, used to bootstrap and cross-check tables."""
        if self.e == 1:
            return (a * b) % self.p
        prod = _polymulmod(self.digits(a), self.digits(b), self.modulus, self.p)
        return self.from_digits(prod + [0] * (self.e - len(prod)))

    def _raw_pow(self, a: int, n: int) -> int:
        r, b = 1, a
        while n:
            if n & 1:
                r = self._raw_mul(r, b)
            b = self._raw_mul(b, b)
            n >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        primes = _prime_factors(n)
        for cand in range(2, self.order):
            if all(self._raw_pow(cand, n // ell) != 1 for ell in primes):
                return cand
        raise AssertionError("no generator found")  # impossible

    def _mul_vec_const(self, vals: np.ndarray, c: int) -> np.ndarray:
        """Field product of every entry of vals with the constant c."""
        p, e = self.p, self.e
        if e == 1:
            return (vals * c) % p
        dig = (vals[:, None] // self.pp[None, :]) % p  # (B, e)
        cd = self.digits(c)
        acc = np.zeros((vals.shape[0], 2 * e - 1), dtype=np.int64)
        for j in range(e):
            if cd[j]:
                acc[:, j:j + e] += cd[j] * dig
        red = self._red_rows()
        for k in range(e - 2, -1, -1):
            col = acc[:, e + k] % p
            acc[:, :e] += col[:, None] * red[k][None, :]
        return ((acc[:, :e] % p) * self.pp[None, :]).sum(axis=1)

    def _red_rows(self) -> np.ndarray:
        """Row k = digit vector of x^(e+k) mod modulus, k = 0..e-2."""
        if getattr(self, "_red", None) is not None:
            return self._red
        p, e = self.p, self.e
        rows = np.zeros((max(e - 1, 1), e), dtype=np.int64)
        base = np.array([(-c) % p for c in self.modulus[:e]], dtype=np.int64)
        rows[0] = base
        for k in range(1, e - 1):
            prev = rows[k - 1]
            carry = int(prev[e - 1])
            shifted = np.concatenate(([0], prev[:e - 1]))
            rows[k] = (shifted + carry * base) % p
        self._red = rows
        return rows

    def _build_tables(self):
        n = self.order - 1
        if n <= 1:
            exp = np.array([1], dtype=np.int64)
        elif self.p == 2 and self.e > 1:
            exp = self._exp_table_p2(n)
        elif self.e == 1:
            exp = self._exp_table_prime(n)
        else:
            exp = self._exp_table_digits(n)
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(max(n, 1), dtype=np.int64)
        log[exp[0]] = 0
        return exp, log

    def _exp_table_prime(self, n):
        exp = np.zeros(n, dtype=np.int64)
        exp[0] = 1
        if n > 1:
            exp[1] = self.generator
            filled = 2
            while filled < n:
                blk = min(filled - 1, n - filled)
                c = int(exp[filled - 1])
                exp[filled:filled + blk] = (exp[1:1 + blk] * c) % self.p
                filled += blk
        return exp

    def _exp_table_p2(self, n):
        """Packed-bit doubling: coefficients over GF(2) live in the bits
        of the int64 code itself, so a constant multiply is e shifted
        XORs plus e-1 reduction folds."""
        e = self.e
        red = np.zeros(e - 1, dtype=np.int64)
        base = 0
        for i, c in enumerate(self.modulus[:e]):
            if c:
                base |= 1 << i
        red[0] = base
        for k in range(1, e - 1):
            r = int(red[k - 1]) << 1
            if r >> e & 1:
                r = (r ^ (1 << e)) ^ base
            red[k] = r
        exp = np.zeros(n, dtype=np.int64)
        exp[0] = 1
        exp[1] = self.generator
        filled = 2
        while filled < n:
            blk = min(filled - 1, n - filled)
            c = int(exp[filled - 1])
            v = exp[1:1 + blk]
            acc = np.zeros(blk, dtype=np.int64)
            for j in range(e):
                if c >> j & 1:
                    acc ^= v << j
            for k in range(2 * e - 2, e - 1, -1):
                bit = (acc >> k) & 1
                acc ^= bit * ((1 << k) | int(red[k - e]))
            exp[filled:filled + blk] = acc
            filled += blk
        return exp

    def _exp_table_digits(self, n):
        """Doubling in the digit domain.  Multiplying by a constant c is
        a GF(p)-linear map on digit vectors, so a whole block is one
        float matmul (exact: entries stay far below 2^53) plus a mod."""
        p, e = self.p, self.e
        dig = np.zeros((n, e), dtype=np.float64)
        dig[0, 0] = 1.0
        dig[1] = self.digits(self.generator)
        filled = 2
        while filled < n:
            blk = min(filled - 1, n - filled)
            c = self.from_digits(dig[filled - 1].astype(np.int64))
            mc = np.empty((e, e), dtype=np.float64)
            for j in range(e):
                mc[j] = self.digits(self._raw_mul(c, int(self.pp[j])))
            dig[filled:filled + blk] = (dig[1:1 + blk] @ mc) % p
            filled += blk
        return (dig.astype(np.int64) * self.pp[None, :]).sum(axis=1)


class GF:
    """The field GF(p^e), optionally carrying specialized parameters.

    Parameters are named transcendentals of a ring family pinned to
    deterministic nonzero values derived from ``seed``.
    """

    def __init__(self, p: int, e: int = 1, params: tuple[str, ...] = (), seed: int = 0):
        if not _is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if e < 1:
            raise DomainError("extension degree must be >= 1")
        key = (p, e)
        tab = _TABLE_CACHE.get(key)
        if tab is None:
            tab = _Tables(p, e)
            _TABLE_CACHE[key] = tab
        self._t = tab
        self.p = p
        self.e = e
        self.order = tab.order
        self.seed = seed
        rng = Rng(seed).child(0x6F1D)
        self.params: dict[str, int] = {
            name: rng.randrange(1, self.order) for name in params}

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p and self.e == other.e
                and self.params == other.params)

    def __hash__(self):
        return hash((self.p, self.e, tuple(sorted(self.params.items()))))

    def __repr__(self):
        base = f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"
        if self.params:
            base += "[" + ",".join(self.params) + f"; seed={self.seed}]"
        return base

    @property
    def generator(self) -> int:
        return self._t.generator

    @property
    def modulus_digits(self):
        """Digit list of the modulus (None for prime fields)."""
        return None if self._t.modulus is None else tuple(self._t.modulus)

    # -- scalar arithmetic ----------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % p
        r = 0
        pk = 1
        for _ in range(self.e):
            r += ((a // pk + b // pk) % p) * pk
            pk *= p
        return r

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.e == 1:
            return (-a) % p
        r = 0
        pk = 1
        for _ in range(self.e):
            r += ((-(a // pk)) % p) * pk
            pk *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self._t
        return int(t.exp[(int(t.log[a]) + int(t.log[b])) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("division by zero in " + repr(self))
        t = self._t
        return int(t.exp[(-int(t.log[a])) % (self.order - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise DomainError("division by zero in " + repr(self))
            return 0
        t = self._t
        return int(t.exp[(int(t.log[a]) * n) % (self.order - 1)])

    def arith(self, a: int, b: int, op: str) -> int:
        """Dispatch form of the four scalar operations."""
        try:
            fn = {"add": self.add, "sub": self.sub,
                  "mul": self.mul, "div": self.div}[op]
        except KeyError:
            raise DomainError(f"unknown scalar op {op!r}") from None
        return fn(a, b)

    def frobenius(self, a: int, q: int) -> int:
        """a^q for q a power of the characteristic."""
        self.check_q(q)
        return self.pow(a, q)

    def check_q(self, q: int) -> int:
        """Validate q = p^k (k >= 0) and return k."""
        if q < 1:
            raise DomainError(f"{q} is not a power of {self.p}")
        k = 0
        while q % self.p == 0:
            q //= self.p
            k += 1
        if q != 1:
            raise DomainError("not a power of the characteristic")
        return k

    # -- vectorized arithmetic (int64 ndarrays of elements) --------------
    def add_arr(self, a: np.ndarray, b) -> np.ndarray:
        p = self.p
        if p == 2:
            return np.bitwise_xor(a, b)
        if self.e == 1:
            return (a + b) % p
        pp = self._t.pp
        da = (np.asarray(a)[..., None] // pp) % p
        db = (np.asarray(b)[..., None] // pp) % p
        return (((da + db) % p) * pp).sum(axis=-1)

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        p = self.p
        if p == 2:
            return np.asarray(a).copy()
        if self.e == 1:
            return (-np.asarray(a)) % p
        pp = self._t.pp
        da = (np.asarray(a)[..., None] // pp) % p
        return (((-da) % p) * pp).sum(axis=-1)

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(np.asarray(b)))

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        t = self._t
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        mask = (a != 0) & (b != 0)
        if np.any(mask):
            la = t.log[np.broadcast_to(a, out.shape)[mask]]
            lb = t.log[np.broadcast_to(b, out.shape)[mask]]
            out[mask] = t.exp[(la + lb) % (self.order - 1)]
        return out

    def sum_arr(self, a: np.ndarray, axis=None) -> np.ndarray:
        """Field sum along an axis (digit-wise mod p)."""
        p = self.p
        a = np.asarray(a)
        if p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.e == 1:
            return a.sum(axis=axis) % p
        pp = self._t.pp
        dig = (a[..., None] // pp) % p
        s = dig.sum(axis=axis if axis is not None else tuple(range(a.ndim))) % p
        return (s * pp).sum(axis=-1)

    def reduceat_add(self, a: np.ndarray, starts: np.ndarray) -> np.ndarray:
        """Segment-wise field sums of a 1-d array (canonicalization)."""
        p = self.p
        pp = self._t.pp
        dig = (a[:, None] // pp) % p
        seg = np.add.reduceat(dig, starts, axis=0) % p
        return (seg * pp).sum(axis=1)

    # -- printing / parsing of scalars ------------------------------------
    def scalar_str(self, a: int) -> str:
        if self.e == 1:
            return str(a % self.p)
        if a == 0:
            return "0"
        k = int(self._t.log[a])
        if k == 0:
            return "1"
        if k == 1:
            return "a"
        return f"a^{k}"

    def scalar(self, text) -> int:
        """Parse an element: an integer (mod p), 'a', or 'a^k'."""
        if isinstance(text, int):
            return text % self.p  # integers embed through the prime subfield
        s = text.strip()
        if s.lstrip("-").isdigit():
            return int(s) % self.p
        if self.e == 1:
            raise DomainError(f"cannot parse scalar {text!r} in {self!r}")
        if s == "a":
            return self.generator
        if s.startswith("a^"):
            return self.pow(self.generator, int(s[2:]))
        if s in self.params:
            return self.params[s]
        raise DomainError(f"cannot parse scalar {text!r} in {self!r}")

    # -- table handles for kernels ----------------------------------------
    def kernel_ctx(self):
        """(p, e, pp, exp, log, order) arrays consumed by the backends."""
        t = self._t
        return (self.p, self.e, t.pp, t.exp, t.log, self.order)
