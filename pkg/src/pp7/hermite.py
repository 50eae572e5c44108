"""Hermite's criterion and the coefficient identities it forces on septic PPs.

``hermite_full`` is the exact criterion, used as an oracle.  The identities
below are necessary conditions on a normalized septic x^7 + a5 x^5 + ... + a1 x
over F_q, one or two per residue class of q mod 7, and serve as cheap filters
in the search.  They are kept as integer polynomials and mapped into F_p when
evaluated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .gf import FieldCtx, FieldElement
from .poly import NormalizedSeptic, Polynomial, convolve

VARIABLES = ("a5", "a4", "a3", "a2", "a1")


@dataclass(frozen=True)
class Identity:
    name: str
    terms: tuple[tuple[int, tuple[tuple[str, int], ...]], ...]
    text: str

    def variables(self) -> set[str]:
        return {v for _, mono in self.terms for v, _ in mono}


_TERM = re.compile(r"([+-])\s*(\d*)\s*((?:a\d(?:\^\d+)?\s*)*)")


def parse_identity(name: str, text: str) -> Identity:
    """Parse '49 a1 - 14 a3 a5 + 3 a5^3' style integer polynomials."""
    body = text.strip()
    if not body.startswith(("+", "-")):
        body = "+ " + body
    terms = []
    pos = 0
    for m in _TERM.finditer(body):
        if m.start() != pos or not (m.group(2) or m.group(3).strip()):
            raise ValueError(f"cannot parse identity {name!r} near {body[pos:]!r}")
        pos = m.end()
        coef = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        mono = []
        for factor in m.group(3).split():
            v, _, k = factor.partition("^")
            mono.append((v, int(k or 1)))
        terms.append((coef, tuple(mono)))
    if pos != len(body):
        raise ValueError(f"cannot parse identity {name!r} near {body[pos:]!r}")
    return Identity(name, tuple(terms), text)


def _I(name, text):
    return parse_identity(name, text)


# [x^(q-1) : f^(k+1)] = 0, scaled to integer coefficients.
Q2_FIRST = _I("q≡2 first", "49 a1 - 14 a3 a5 - 7 a4^2 + 3 a5^3")
Q3_FIRST = _I("q≡3 first", "7 a2 - 3 a4 a5")
Q4_FIRST = _I("q≡4 first", "7 a3 - 2 a5^2")
Q5_FIRST = _I("q≡5 first", "a4")
Q6_FIRST = _I("q≡6 first", "a5")

# [x^(q-1) : f^(k+2)] = 0 on the surface cut out by the first identity.
Q2_SECOND = _I(
    "q≡2 second",
    "3430 a1 a2 a5 + 3430 a1 a3 a4 + 1715 a2 a3^2 + 1715 a2^2 a4"
    " - 2205 a2 a4^2 a5 - 2205 a1 a4 a5^2 - 2205 a2 a3 a5^2 - 2205 a3^2 a4 a5"
    " - 735 a3 a4^3 + 1680 a3 a4 a5^3 + 840 a4^3 a5^2 + 420 a2 a5^4 - 276 a4 a5^5",
)
Q3_SECOND = _I(
    "q≡3 second",
    "4802 a1^2 - 4116 a1 a3 a5 - 4116 a2 a3 a4 - 2058 a2^2 a5 - 2058 a1 a4^2"
    " - 686 a3^3 + 2940 a3 a4^2 a5 + 2940 a2 a4 a5^2 + 1470 a3^2 a5^2"
    " + 980 a1 a5^3 + 245 a4^4 - 1190 a4^2 a5^3 - 595 a3 a5^4 + 68 a5^6",
)
Q4_SECOND = _I(
    "q≡4 second",
    "1029 a1 a2 - 588 a1 a4 a5 - 588 a2 a3 a5 - 294 a2 a4^2 - 294 a3^2 a4"
    " + 154 a2 a5^3 + 154 a4^3 a5 + 462 a3 a4 a5^2 - 99 a4 a5^4",
)
Q5_SECOND = _I(
    "q≡5 second",
    "686 a1 a3 + 343 a2^2 - 245 a1 a5^2 - 245 a3^2 a5 + 140 a3 a5^3 - 19 a5^5",
)
Q6_SECOND = _I("q≡6 second", "7 a1 a4 + 7 a2 a3 - a4^3")

# q = 81: [x^80 : f^13] and [x^80 : f^14]; q = 243: [x^242 : f^38].
Q81_F13 = _I("q=81 [x^80:f^13]", "a2 a5^3 + a4^3 a5")
Q81_F14 = _I(
    "q=81 [x^80:f^14]",
    "a5^9 + a3^3 a4^2 - a2 a3 a4^3 - a1 a4^4 - a3^4 a5 + a1^2 a5^3 - a1 a3^3 - a2^3 a4 + a1^3",
)
Q243_F38 = _I("q=243 [x^242:f^38]", "a1 a5 + a3 a5^2")

# p = 7, a5 != 0: a1 = 3(a3 a5 + a3^2 / a5), multiplied through by a5.
P7_RELATION = _I("p=7 a1 relation", "a1 a5 - 3 a3 a5^2 - 3 a3^2")

FIRST_IDENTITIES = {2: Q2_FIRST, 3: Q3_FIRST, 4: Q4_FIRST, 5: Q5_FIRST, 6: Q6_FIRST}
SECOND_IDENTITIES = {2: Q2_SECOND, 3: Q3_SECOND, 4: Q4_SECOND, 5: Q5_SECOND, 6: Q6_SECOND}


def applicable_identities(ctx: FieldCtx) -> list[Identity]:
    """Identities every normalized septic PP over ctx must satisfy."""
    p, q = ctx.p, ctx.q
    if p == 2 or p == 7 or not 7 < q <= 409:
        raise ValueError(f"no identity filter for q = {q}")
    qm = q % 7
    if qm == 1:
        raise ValueError(f"no degree-7 PP exists for q = {q} (7 divides q - 1)")
    out = []
    if qm == 2:
        out.append(Q2_FIRST)
        if p not in (3, 5):
            out.append(Q2_SECOND)
    elif qm == 3:
        out.append(Q3_FIRST)
        if p != 11:
            out.append(Q3_SECOND)
    elif qm == 4:
        if p != 3:
            out.append(Q4_FIRST)
        if p not in (3, 5) and q > 25:
            out.append(Q4_SECOND)
        if q == 81:
            out += [Q81_F13, Q81_F14]
    elif qm == 5:
        out.append(Q5_FIRST)
        if p != 3:
            out.append(Q5_SECOND)
        if q == 243:
            out.append(Q243_F38)
    else:
        out += [Q6_FIRST, Q6_SECOND]
    return out


# -- evaluation -------------------------------------------------------------


def _monomial(ctx, coef, mono, env, cache):
    factors = []
    for v, k in mono:
        key = (v, k)
        if key not in cache:
            cache[key] = ctx.vec_pow(env[v], k)
        factors.append(cache[key])
    factors.sort(key=np.size)
    acc = np.int64(ctx.vec_const(coef))
    for arr in factors:
        acc = ctx.vec_mul(acc, arr)
    return np.asarray(acc, dtype=np.int64)


def _sum(ctx, arrays):
    # add like-shaped partial sums first so the full grid is touched rarely
    groups = {}
    for a in arrays:
        s = np.shape(a)
        groups[s] = a if s not in groups else ctx.vec_add(groups[s], a)
    acc = np.int64(0)
    for a in sorted(groups.values(), key=np.size):
        acc = ctx.vec_add(acc, a)
    return np.asarray(acc, dtype=np.int64)


def evaluate_identity(ctx: FieldCtx, ident: Identity, env: dict, cache=None) -> np.ndarray:
    """Value (as encodings) of an identity's left side on broadcastable arrays."""
    cache = {} if cache is None else cache
    return _sum(ctx, [_monomial(ctx, c, m, env, cache) for c, m in ident.terms])


def solve_linear(ctx: FieldCtx, ident: Identity, var: str, env: dict) -> tuple[np.ndarray, np.ndarray]:
    """Solve an identity that is linear in ``var`` for that variable.

    Returns (value, ok) where ok marks entries whose coefficient of ``var``
    is nonzero; value is meaningless where ok is False.
    """
    lin, rest = [], []
    for c, mono in ident.terms:
        powers = dict(mono)
        if var not in powers:
            rest.append((c, mono))
        elif powers[var] == 1:
            lin.append((c, tuple(f for f in mono if f[0] != var)))
        else:
            raise ValueError(f"{ident.name} is not linear in {var}")
    cache = {}
    coef = _sum(ctx, [_monomial(ctx, c, m, env, cache) for c, m in lin])
    rhs = _sum(ctx, [_monomial(ctx, c, m, env, cache) for c, m in rest])
    ok = coef != 0
    safe = np.where(ok, coef, 1)
    return ctx.vec_mul(ctx.vec_neg(rhs), ctx.vec_inv(safe)), ok


def _env(a5, a4, a3, a2, a1) -> dict:
    return {v: np.asarray(a, dtype=np.int64) for v, a in zip(VARIABLES, (a5, a4, a3, a2, a1))}


def identity_mask(ctx: FieldCtx, a5, a4, a3, a2, a1, identities=None) -> np.ndarray:
    """Boolean array: which broadcast tuples satisfy every applicable identity."""
    env = _env(a5, a4, a3, a2, a1)
    if identities is None:
        identities = applicable_identities(ctx)
    cache = {}
    shape = np.broadcast_shapes(*(a.shape for a in env.values()))
    mask = np.ones(shape, dtype=bool)
    for ident in identities:
        mask &= evaluate_identity(ctx, ident, env, cache) == 0
    return mask


def identity_filter(ctx: FieldCtx, s: NormalizedSeptic) -> bool:
    """True iff s satisfies every identity that applies to (q mod 7, p)."""
    return bool(identity_mask(ctx, *s.values))


def p7_a1_relation(ctx: FieldCtx, s: NormalizedSeptic) -> bool:
    """For p = 7, r in {2, 3}, a5 != 0, a4 = 0: is a1 = 3(a3 a5 + a3^2 / a5)?"""
    if ctx.p != 7 or ctx.r not in (2, 3):
        raise ValueError("relation holds only over F_49 and F_343")
    if not s.a5:
        raise ValueError("relation needs a5 != 0")
    if s.a4 or s.a6:
        raise ValueError("relation needs the reduced shape a4 = a6 = 0")
    return s.a1 == 3 * (s.a3 * s.a5 + s.a3 * s.a3 / s.a5)


# -- the full criterion -----------------------------------------------------


@dataclass(frozen=True)
class HermiteReport:
    passed: bool
    failing_k: int | None
    cond1_sum: FieldElement | None  # None when an earlier k already failed


def _field_sum(ctx: FieldCtx, vals: np.ndarray) -> int:
    if ctx.r == 1:
        return int(vals.sum() % ctx.p)
    return int((ctx.digit_array[vals].sum(axis=0) % ctx.p) @ ctx.place_values)


def hermite_full(f: Polynomial) -> HermiteReport:
    """Exact PP test by Hermite's criterion.

    Powers f^k are built by repeated multiplication for k = 1..q-1.  For k
    prime to p and k <= q-2, the sum of [x^(j(q-1)) : f^k] over j >= 1 must
    vanish; at k = q-1 the same sum over j = 1..deg f must not.
    """
    ctx = f.ctx
    q, d = ctx.q, f.degree
    if d < 1:
        raise ValueError("need a polynomial of degree at least 1")
    base = f.encodings
    power = np.array([1], dtype=np.int64)
    for k in range(1, q):
        power = convolve(ctx, power, base)
        if k == q - 1:
            idx = (q - 1) * np.arange(1, d + 1)
            total = _field_sum(ctx, power[idx[idx < len(power)]])
            return HermiteReport(total != 0, None, FieldElement(ctx, total))
        if k % ctx.p == 0:
            continue
        top = k * d // (q - 1)
        if top == 0:
            continue
        idx = (q - 1) * np.arange(1, top + 1)
        if _field_sum(ctx, power[idx]) != 0:
            return HermiteReport(False, k, None)
    raise AssertionError("unreachable")
