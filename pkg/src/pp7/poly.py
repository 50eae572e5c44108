"""Dense polynomials over F_q and value-set permutation tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldCtx, FieldElement


def _as_encodings(ctx: FieldCtx, coeffs) -> np.ndarray:
    out = []
    for c in coeffs:
        if isinstance(c, FieldElement):
            out.append(ctx(c).value)
        else:
            out.append(ctx.element(c).value)
    return np.array(out, dtype=np.int64)


def _trimmed(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


class Polynomial:
    """Coefficient vector over F_q, index i holding the coefficient of x^i.

    Plain ints given as coefficients are element encodings.  Trailing zeros
    are trimmed, so the zero polynomial has an empty vector and degree -1.
    """

    __slots__ = ("ctx", "_c")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        c = coeffs if isinstance(coeffs, np.ndarray) else _as_encodings(ctx, coeffs)
        c = _trimmed(np.asarray(c, dtype=np.int64))
        c.flags.writeable = False
        self._c = c

    @classmethod
    def monomial(cls, ctx: FieldCtx, n: int, c=1) -> Polynomial:
        a = np.zeros(n + 1, dtype=np.int64)
        a[n] = ctx(c).value
        return cls(ctx, a)

    @classmethod
    def x(cls, ctx: FieldCtx) -> Polynomial:
        return cls.monomial(ctx, 1)

    @property
    def encodings(self) -> np.ndarray:
        return self._c

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.ctx, int(v)) for v in self._c]

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def __len__(self):
        return len(self._c)

    def __getitem__(self, i: int) -> FieldElement:
        return coeff(self, i)

    def __call__(self, x) -> FieldElement:
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self.ctx, self._c.tobytes()))

    def __add__(self, other):
        other = _coerce(self.ctx, other)
        n = max(len(self), len(other))
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: len(self)] = self._c
        b[: len(other)] = other._c
        return Polynomial(self.ctx, self.ctx.vec_add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, self.ctx.vec_neg(self._c))

    def __sub__(self, other):
        return self + (-_coerce(self.ctx, other))

    def __rsub__(self, other):
        return _coerce(self.ctx, other) - self

    def __mul__(self, other):
        return mul(self, _coerce(self.ctx, other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return pow_poly(self, k)

    def __repr__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            v = int(self._c[i])
            if v == 0:
                continue
            c = self.ctx.format(v)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(c)
            elif v == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) or "0"


def _coerce(ctx: FieldCtx, g) -> Polynomial:
    if isinstance(g, Polynomial):
        if g.ctx != ctx:
            raise ValueError("polynomials over different fields")
        return g
    return Polynomial(ctx, [ctx(g)])


def coeff(f: Polynomial, i: int) -> FieldElement:
    """[x^i : f], zero beyond the degree."""
    if i < 0:
        raise ValueError("coefficient index must be non-negative")
    v = int(f._c[i]) if i < len(f._c) else 0
    return FieldElement(f.ctx, v)


def evaluate(f: Polynomial, x) -> FieldElement:
    """Horner evaluation."""
    ctx = f.ctx
    x = ctx(x).value
    acc = 0
    for c in f._c[::-1]:
        acc = ctx._add(ctx._mul(acc, x), int(c))
    return FieldElement(ctx, acc)


def evaluate_many(f: Polynomial, xs) -> np.ndarray:
    """Vectorized Horner over an array of encodings."""
    ctx = f.ctx
    xs = np.asarray(xs, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in f._c[::-1]:
        acc = ctx.vec_add(ctx.vec_mul(acc, xs), int(c))
    return acc


def convolve(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two encoded coefficient vectors."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    p = ctx.p
    if ctx.r == 1:
        return np.convolve(a, b) % p
    # multiply in F_p[z][x], then reduce z-powers through the modulus
    da = ctx.digit_array[a]
    db = ctx.digit_array[b]
    r = ctx.r
    acc = np.zeros((len(a) + len(b) - 1, 2 * r - 1), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            acc[:, i + j] += np.convolve(da[:, i], db[:, j])
    return (((acc % p) @ _reduction_matrix(ctx)) % p) @ ctx.place_values


_REDUCTION_CACHE: dict = {}


def _reduction_matrix(ctx: FieldCtx) -> np.ndarray:
    """Row d holds the power-basis digits of z^d mod m(z), d < 2r - 1."""
    key = (ctx.p, ctx.modulus)
    red = _REDUCTION_CACHE.get(key)
    if red is None:
        r, p = ctx.r, ctx.p
        rows = []
        cur = [0] * r
        cur[0] = 1
        for _ in range(2 * r - 1):
            rows.append(list(cur))
            # multiply by z and reduce: z^r = -sum m_i z^i
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m) % p for c, m in zip(cur, ctx.modulus[:r])]
        red = np.array(rows, dtype=np.int64)
        _REDUCTION_CACHE[key] = red
    return red


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return Polynomial(f.ctx, convolve(f.ctx, f._c, g._c))


def pow_poly(f: Polynomial, k: int) -> Polynomial:
    """f**k by square-and-multiply over true coefficients (no x^q - x reduction)."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    ctx = f.ctx
    result = np.array([1], dtype=np.int64)
    base = f._c
    while k:
        if k & 1:
            result = convolve(ctx, result, base)
        k >>= 1
        if k:
            base = convolve(ctx, base, base)
    return Polynomial(ctx, result)


def valueset_sample_size(q: int, degree: int) -> int:
    """1 + floor(q - (q-1)/degree): distinct values on this many points prove a PP."""
    return 1 + (degree * q - (q - 1)) // degree


def is_pp_valueset(f: Polynomial) -> bool:
    """Permutation test via Wan's value-set bound.

    Walks the field in enumeration order and stops at the first repeated
    value; if the first 1 + floor(q - (q-1)/deg f) values are distinct the
    map is a bijection.
    """
    if f.degree < 1:
        raise ValueError("need a polynomial of degree at least 1")
    ctx = f.ctx
    seen = bytearray(ctx.q)
    for x in range(valueset_sample_size(ctx.q, f.degree)):
        v = evaluate(f, FieldElement(ctx, x)).value
        if seen[v]:
            return False
        seen[v] = 1
    return True


def is_pp_bruteforce(f: Polynomial) -> bool:
    """Evaluate at all q points and check bijectivity."""
    ctx = f.ctx
    vals = evaluate_many(f, np.arange(ctx.q, dtype=np.int64))
    return len(np.unique(vals)) == ctx.q


# -- normalized septics -----------------------------------------------------


@dataclass(frozen=True)
class NormalizedSeptic:
    """x^7 + a6 x^6 + a5 x^5 + ... + a1 x with a6 = 0 except in the p = 7 reduced shape.

    Fields are listed in display order (a5, a4, a3, a2, a1).
    """

    a5: FieldElement
    a4: FieldElement
    a3: FieldElement
    a2: FieldElement
    a1: FieldElement
    a6: FieldElement | None = None

    def __post_init__(self):
        if self.a6 is None:
            object.__setattr__(self, "a6", self.a5.ctx.zero)

    @classmethod
    def of(cls, ctx: FieldCtx, a5, a4, a3, a2, a1, a6=0) -> NormalizedSeptic:
        """Build from encodings or elements."""
        return cls(*(ctx.element(v) for v in (a5, a4, a3, a2, a1, a6)))

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> NormalizedSeptic:
        if f.degree != 7 or f._c[7] != 1 or f._c[0] != 0:
            raise ValueError("expected a monic septic with zero constant term")
        return cls.of(f.ctx, *(int(f._c[i]) for i in (5, 4, 3, 2, 1, 6)))

    @property
    def ctx(self) -> FieldCtx:
        return self.a5.ctx

    @property
    def values(self) -> tuple[int, int, int, int, int]:
        """Encodings (a5, a4, a3, a2, a1)."""
        return (self.a5.value, self.a4.value, self.a3.value, self.a2.value, self.a1.value)

    @property
    def key(self) -> tuple[int, ...]:
        """Sort key; a6 leads so the p = 7 shape orders consistently."""
        return (self.a6.value,) + self.values

    def coefficient(self, i: int) -> FieldElement:
        return {6: self.a6, 5: self.a5, 4: self.a4, 3: self.a3, 2: self.a2, 1: self.a1}[i]

    @property
    def top_index(self) -> int:
        """Largest k in 1..6 with a_k != 0, or 0 for x^7."""
        for k in (6, 5, 4, 3, 2, 1):
            if self.coefficient(k):
                return k
        return 0

    def polynomial(self) -> Polynomial:
        v = [0, *reversed(self.values), self.a6.value, 1]
        return Polynomial(self.ctx, np.array(v, dtype=np.int64))

    def __repr__(self):
        body = ",".join(repr(c) for c in (self.a5, self.a4, self.a3, self.a2, self.a1))
        if self.a6:
            return f"({body}; a6={self.a6!r})"
        return f"({body})"


def septic_values(ctx: FieldCtx, coeffs: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Values of x^7 + a5 x^5 + ... + a1 x for each row (a5, a4, a3, a2, a1).

    ``coeffs`` has shape (n, 5); the result has shape (n, len(xs)).
    """
    xs = np.asarray(xs, dtype=np.int64)
    powers = {i: ctx.vec_pow(xs, i) for i in (1, 2, 3, 4, 5, 7)}
    if ctx.r == 1:
        acc = np.broadcast_to(powers[7], (len(coeffs), len(xs))).copy()
        for col, i in enumerate((5, 4, 3, 2, 1)):
            acc += coeffs[:, col, None] * powers[i][None, :]
        return acc % ctx.p
    acc = np.broadcast_to(powers[7], (len(coeffs), len(xs)))
    for col, i in enumerate((5, 4, 3, 2, 1)):
        acc = ctx.vec_add(acc, ctx.vec_mul(coeffs[:, col, None], powers[i][None, :]))
    return acc


def _rows_injective(vals: np.ndarray) -> np.ndarray:
    s = np.sort(vals, axis=1)
    return ~np.any(s[:, 1:] == s[:, :-1], axis=1)


def batch_is_pp(ctx: FieldCtx, coeffs, chunk: int = 1 << 14) -> np.ndarray:
    """Vectorized value-set test for many normalized septics at once.

    Rows are screened on growing prefixes of the enumeration; most non-PPs
    repeat a value early, and a row surviving the full Wan prefix is a PP.
    """
    coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1, 5)
    out = np.zeros(len(coeffs), dtype=bool)
    if len(coeffs) == 0:
        return out
    full = valueset_sample_size(ctx.q, 7)
    root = int(np.sqrt(ctx.q))
    stages = sorted({min(full, 2 * root + 2), min(full, 5 * root + 4), full})
    for start in range(0, len(coeffs), chunk):
        idx = np.arange(start, min(start + chunk, len(coeffs)))
        for n in stages:
            vals = septic_values(ctx, coeffs[idx], np.arange(n))
            idx = idx[_rows_injective(vals)]
            if idx.size == 0:
                break
        out[idx] = True
    return out
