"""Degree-7 exceptional polynomials up to linear transformations.

Off characteristic 7 every such polynomial is related to a Dickson
polynomial D_7(x, a), with a = 0 allowed only when q is not 1 mod 7 and
a != 0 only when q^2 is not 1 mod 7.  Over F_{7^r} the families are x^7 and
x (x^(6/s) - a)^s for s in {1, 2, 3} with a^(s (7^r - 1)/6) != 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .equiv import canonical, canonical_rows, normalize
from .gf import FieldCtx, FieldElement
from .poly import NormalizedSeptic, Polynomial

MONOMIAL = "Monomial"
DICKSON7 = "Dickson7"
P7_LINEARIZED = "P7Linearized"


@dataclass(frozen=True)
class ExceptionalEntry:
    family: str
    parameter: FieldElement
    s: int | None
    polynomial: Polynomial

    @property
    def septic(self) -> NormalizedSeptic:
        return normalize(self.polynomial)


def dickson7(ctx: FieldCtx, a) -> Polynomial:
    """D_7(x, a) = x^7 - 7a x^5 + 14a^2 x^3 - 7a^3 x."""
    a = ctx(a)
    z = ctx.zero
    return Polynomial(ctx, [z, -7 * a**3, z, 14 * a**2, z, -7 * a, z, ctx.one])


def p7_family(ctx: FieldCtx, a, s: int) -> Polynomial:
    """x (x^(6/s) - a)^s."""
    a = ctx(a)
    inner = Polynomial.monomial(ctx, 6 // s) - a
    return Polynomial.x(ctx) * inner**s


@lru_cache(maxsize=None)
def catalog(ctx: FieldCtx) -> tuple[ExceptionalEntry, ...]:
    """One entry per class of degree-7 exceptional polynomials over ctx."""
    if ctx.p == 2:
        raise ValueError("characteristic 2 is not supported")
    x7 = Polynomial.monomial(ctx, 7)
    if ctx.p == 7:
        return _p7_catalog(ctx, x7)
    q = ctx.q
    out = []
    if q % 7 != 1:
        out.append(ExceptionalEntry(MONOMIAL, ctx.zero, None, x7))
    if q * q % 7 != 1:
        c = -1 / ctx(7)
        for a in (c, c * ctx.generator):
            out.append(ExceptionalEntry(DICKSON7, a, None, dickson7(ctx, a)))
    return tuple(out)


def _p7_catalog(ctx: FieldCtx, x7: Polynomial) -> tuple[ExceptionalEntry, ...]:
    out = [ExceptionalEntry(MONOMIAL, ctx.zero, None, x7)]
    seen = {canonical(normalize(x7)).key}
    for s in (1, 2, 3):
        exponent = s * (ctx.q - 1) // 6
        for v in range(1, ctx.q):
            a = ctx.element(v)
            if a**exponent == 1:
                continue
            f = p7_family(ctx, a, s)
            key = canonical(normalize(f)).key
            if key not in seen:
                seen.add(key)
                out.append(ExceptionalEntry(P7_LINEARIZED, a, s, f))
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_keys(ctx: FieldCtx) -> dict[tuple[int, ...], ExceptionalEntry]:
    """Canonical key -> catalog entry."""
    entries = catalog(ctx)
    rows = np.array([e.septic.key for e in entries], dtype=np.int64).reshape(-1, 6)
    canon = canonical_rows(ctx, rows)
    return {tuple(int(v) for v in row): e for row, e in zip(canon, entries)}


def is_exceptional(s: NormalizedSeptic) -> ExceptionalEntry | None:
    """The catalog entry s is linearly related to; None means non-exceptional.

    s is assumed to be a PP over its field.
    """
    return catalog_keys(s.ctx).get(canonical(s).key)
