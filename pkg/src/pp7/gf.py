"""Finite fields F_q = F_p[z]/(m(z)) with an explicit multiplicative generator.

An element is stored as its integer encoding sum(c_i * p**i) over the
power-basis coefficients (c_0, ..., c_{r-1}).  Every "smallest" choice in
this package (default modulus, generator, canonical representatives) uses
that integer order.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

# Coefficients from degree 0 up; these pin the field model for the four
# fields whose tables print generator powers.
REFERENCE_MODULI = {
    9: (2, 2, 1),  # x^2 + 2x + 2
    25: (2, 4, 1),  # x^2 + 4x + 2
    49: (3, 6, 1),  # x^2 + 6x + 3
    343: (4, 0, 6, 1),  # x^3 + 6x^2 + 4
}

MAX_CLASSIFIABLE_Q = 409

# exp/log tables are built up to this size, add/mul tables up to _VEC_LIMIT.
_LOG_LIMIT = 1 << 16
_VEC_LIMIT = 2048


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, r) with q = p**r, or None if q is not a prime power."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    p = p[0]
    r = 0
    while q > 1:
        q //= p
        r += 1
    return p, r


# -- polynomials over F_p as coefficient lists (degree 0 first) --------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _fp_polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(modulus, p: int) -> bool:
    """Brute force: no monic factor of degree 1..r//2 divides the modulus."""
    m = [c % p for c in modulus]
    r = len(m) - 1
    if r < 1 or m[-1] == 0:
        return False
    for d in range(1, r // 2 + 1):
        for low in range(p**d):
            cand = [(low // p**i) % p for i in range(d)] + [1]
            if not _fp_polymod(m, cand, p):
                return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    for low in range(p**r):
        m = [(low // p**i) % p for i in range(r)] + [1]
        if is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def encode_coeffs(coeffs, p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


class FieldElement:
    """An element of a FieldCtx.

    Arithmetic operators accept ints, which are read as n * 1 (the image of n
    in the prime field).  ``ctx.element(v)`` builds an element from its
    encoding instead.
    """

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.digits(self.value)

    def _other(self, b):
        if isinstance(b, FieldElement):
            if b.ctx is not self.ctx and b.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return b.value
        if isinstance(b, int):
            return b % self.ctx.p
        return None

    def __add__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._sub(self.value, v))

    def __rsub__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._sub(v, self.value))

    def __mul__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._mul(self.value, self.ctx._inv(v)))

    def __rtruediv__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._mul(v, self.ctx._inv(self.value)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx._neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx._pow(self.value, n))

    def __eq__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return self.value == v

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return self.ctx.format(self.value)


class FieldCtx:
    """Immutable description of F_q: prime p, degree r, modulus, generator.

    Use :func:`make_field` to build one.  Scalar arithmetic works for any q;
    the vectorized ``vec_*`` helpers need q <= 2048.
    """

    def __init__(self, p: int, r: int, modulus: tuple[int, ...], generator: int):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus)
        self._gen = generator
        self._key = (p, r, self.modulus, generator)
        if self.q <= _LOG_LIMIT:
            self._build_log_tables()
        else:
            self._exp = self._log = None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FieldCtx(q={self.q}, modulus={list(self.modulus)}, generator={self._gen})"

    def __reduce__(self):
        return (FieldCtx, (self.p, self.r, self.modulus, self._gen))

    # -- element construction ---------------------------------------------

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, self._gen)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def __call__(self, n: int | FieldElement) -> FieldElement:
        """The image of an integer in the prime field (or pass an element through)."""
        if isinstance(n, FieldElement):
            if n.ctx != self:
                raise ValueError("element of a different field")
            return n
        return FieldElement(self, n % self.p)

    def element(self, value) -> FieldElement:
        """Element with the given integer encoding, or from a coefficient vector."""
        if isinstance(value, FieldElement):
            return self(value)
        if isinstance(value, (tuple, list)):
            if len(value) > self.r:
                raise ValueError(f"expected at most {self.r} coefficients")
            value = encode_coeffs([c % self.p for c in value], self.p)
        value = int(value)
        if not 0 <= value < self.q:
            raise ValueError(f"encoding {value} out of range for F_{self.q}")
        return FieldElement(self, value)

    def gen_power(self, k: int) -> FieldElement:
        return FieldElement(self, self._pow(self._gen, k % (self.q - 1)))

    def digits(self, v: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.r):
            v, d = divmod(v, p)
            out.append(d)
        return tuple(out)

    def _undigits(self, d) -> int:
        return encode_coeffs(d, self.p)

    def enumerate(self) -> list[FieldElement]:
        """All q elements in encoding order (0 first)."""
        return [FieldElement(self, v) for v in range(self.q)]

    def format(self, v: int) -> str:
        if v < self.p:
            return str(v)
        return "e" if self.log(v) == 1 else f"e^{self.log(v)}"

    # -- scalar arithmetic on encodings -----------------------------------

    def _add(self, a: int, b: int) -> int:
        p = self.p
        if self.r == 1:
            return (a + b) % p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _neg(self, a: int) -> int:
        p = self.p
        if self.r == 1:
            return -a % p
        out, w = 0, 1
        while a:
            out += (-(a % p) % p) * w
            a //= p
            w *= p
        return out

    def _sub(self, a: int, b: int) -> int:
        return self._add(a, self._neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        prod = _fp_polymul(list(self.digits(a)), list(self.digits(b)), self.p)
        return self._undigits(_fp_polymod(prod, list(self.modulus), self.p))

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return self._mul_slow(a, b)
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def _pow_slow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            n >>= 1
        return result

    def _pow(self, a: int, n: int) -> int:
        if n < 0:
            return self._pow(self._inv(a), -n)
        if a == 0:
            return 1 if n == 0 else 0
        if self._exp is None:
            return self._pow_slow(a, n)
        return self._exp[self._log[a] * n % (self.q - 1)]

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._exp is None:
            return self._pow_slow(a, self.q - 2)
        return self._exp[-self._log[a] % (self.q - 1)]

    # public spellings of the above on FieldElements

    def add(self, a, b) -> FieldElement:
        return self(a) + self(b)

    def sub(self, a, b) -> FieldElement:
        return self(a) - self(b)

    def mul(self, a, b) -> FieldElement:
        return self(a) * self(b)

    def neg(self, a) -> FieldElement:
        return -self(a)

    def inv(self, a) -> FieldElement:
        a = self(a)
        return FieldElement(self, self._inv(a.value))

    def pow(self, a, n: int) -> FieldElement:
        """Square-and-multiply; negative n needs a != 0."""
        a = self(a)
        if n < 0 and a.value == 0:
            raise ZeroDivisionError("negative power of zero")
        return FieldElement(self, self._pow(a.value, n))

    def log(self, a) -> int:
        """Discrete log to base the generator."""
        v = a.value if isinstance(a, FieldElement) else int(a)
        if v == 0:
            raise ValueError("log of zero")
        if self._log is not None:
            return self._log[v]
        x, k = 1, 0
        while x != v:
            x = self._mul_slow(x, self._gen)
            k += 1
        return k

    def order(self, a) -> int:
        v = a.value if isinstance(a, FieldElement) else int(a)
        if v == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for ell in prime_factors(n):
            while n % ell == 0 and self._pow_slow(v, n // ell) == 1:
                n //= ell
        return n

    def _build_log_tables(self):
        n = self.q - 1
        exp = [0] * n
        log = [0] * self.q
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, self._gen)
        if x != 1 or len(set(exp)) != n:
            raise ValueError("generator does not have order q-1")
        self._exp = exp
        self._log = log

    # -- vectorized arithmetic over int64 arrays of encodings -------------

    @cached_property
    def exp_array(self) -> np.ndarray:
        """Generator powers e^0..e^(q-2), repeated twice to skip a modulo."""
        return np.array(self._exp + self._exp, dtype=np.int64)

    @cached_property
    def log_array(self) -> np.ndarray:
        out = np.array(self._log, dtype=np.int64)
        out[0] = -1
        return out

    @cached_property
    def digit_array(self) -> np.ndarray:
        v = np.arange(self.q, dtype=np.int64)
        return np.stack([(v // self.p**i) % self.p for i in range(self.r)], axis=1)

    @cached_property
    def place_values(self) -> np.ndarray:
        return self.p ** np.arange(self.r, dtype=np.int64)

    @cached_property
    def _tables(self):
        if self.q > _VEC_LIMIT:
            raise ValueError(f"vectorized arithmetic needs q <= {_VEC_LIMIT}")
        d = self.digit_array
        add = ((d[:, None, :] + d[None, :, :]) % self.p) @ self.place_values
        neg = ((-d) % self.p) @ self.place_values
        log = self.log_array
        exp = self.exp_array
        la = log[:, None] + log[None, :]
        mul = np.where((log[:, None] < 0) | (log[None, :] < 0), 0, exp[np.maximum(la, 0)])
        return add.astype(np.int64), neg.astype(np.int64), mul.astype(np.int64)

    def vec_add(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        return self._tables[0][a, b]

    def vec_neg(self, a):
        if self.r == 1:
            return -a % self.p
        return self._tables[1][a]

    def vec_sub(self, a, b):
        if self.r == 1:
            return (a - b) % self.p
        return self._tables[0][a, self._tables[1][b]]

    def vec_mul(self, a, b):
        if self.r == 1:
            return (a * b) % self.p
        return self._tables[2][a, b]

    def vec_pow(self, a, n: int):
        """Elementwise a**n for n >= 0."""
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones_like(a)
        log = self.log_array[a]
        out = self.exp_array[np.maximum(log, 0) * n % (self.q - 1)]
        return np.where(log < 0, 0, out)

    def vec_inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        log = self.log_array[a]
        if np.any(log < 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp_array[(-log) % (self.q - 1)]

    def vec_const(self, n: int) -> int:
        """Encoding of the integer n mapped into the prime field."""
        return n % self.p


def find_generator(p: int, r: int, modulus) -> int:
    """Smallest encoding whose multiplicative order is q - 1."""
    ctx = FieldCtx.__new__(FieldCtx)
    ctx.p, ctx.r, ctx.q, ctx.modulus = p, r, p**r, tuple(modulus)
    ctx._exp = ctx._log = None
    n = ctx.q - 1
    factors = prime_factors(n) if n > 1 else []
    for v in range(1, ctx.q):
        if all(ctx._pow_slow(v, n // ell) != 1 for ell in factors):
            return v
    raise AssertionError("multiplicative group is cyclic")  # unreachable


def make_field(p: int, r: int = 1, modulus=None, generator=None) -> FieldCtx:
    """Build F_{p^r}.

    Without an explicit modulus, q in REFERENCE_MODULI gets its fixed modulus and
    every other field the smallest monic irreducible in encoding order.  The
    generator defaults to the smallest encoding of order q - 1; an explicit
    one (encoding or coefficient vector) is verified.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"degree must be a positive integer, got {r}")
    q = p**r
    if modulus is None:
        modulus = REFERENCE_MODULI.get(q) or smallest_irreducible(p, r)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != r + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {r}")
    if not is_irreducible(modulus, p):
        raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
    if generator is None:
        gen = find_generator(p, r, modulus)
    else:
        if isinstance(generator, (tuple, list)):
            generator = encode_coeffs([c % p for c in generator], p)
        gen = int(generator)
        if not 0 < gen < q:
            raise ValueError("generator encoding out of range")
        probe = FieldCtx.__new__(FieldCtx)
        probe.p, probe.r, probe.q, probe.modulus = p, r, q, modulus
        probe._exp = probe._log = None
        if probe.order(gen) != q - 1:
            raise ValueError(f"element {gen} is not a multiplicative generator")
    return FieldCtx(p, r, modulus, gen)


def field_of_order(q: int, **kwargs) -> FieldCtx:
    pr = prime_power(q)
    if pr is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(pr[0], pr[1], **kwargs)


def classifiable_orders() -> list[int]:
    """Odd prime powers 7 < q <= 409."""
    return [q for q in range(9, MAX_CLASSIFIABLE_Q + 1, 2) if prime_power(q)]
