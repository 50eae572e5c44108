"""Linear equivalence of septics: g(x) = s f(t x + u) + v.

Normalized septics x^7 + a5 x^5 + ... + a1 x are related exactly when
a_i = b_i t^(7-i) for one t in F_q^*, so a class is an orbit of that scaling
action and its canonical representative is the orbit minimum in encoding
order.  Over F_{7^r} the same holds on the reduced shape a_{k-1} = 0 below
the top nonzero a_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import hermite
from .gf import FieldCtx, FieldElement
from .poly import NormalizedSeptic, Polynomial

# coefficient slots in key order and the scaling exponent 7 - i of each
SLOTS = (6, 5, 4, 3, 2, 1)
_EXPONENTS = np.array([7 - i for i in SLOTS], dtype=np.int64)


@dataclass(frozen=True)
class CosetReps:
    m: int
    kind: str
    reps: tuple[FieldElement, ...]

    def encodings(self) -> np.ndarray:
        return np.array([r.value for r in self.reps], dtype=np.int64)


def coset_reps(ctx: FieldCtx, m: int, kind: str) -> CosetReps:
    """CK: {e^j : j < gcd(m, q-1)}; CI: {e^j : j < (q-1)/gcd(m, q-1)}."""
    if m < 1:
        raise ValueError("m must be positive")
    g = math.gcd(m, ctx.q - 1)
    if kind == "CK":
        n = g
    elif kind == "CI":
        n = (ctx.q - 1) // g
    else:
        raise ValueError(f"kind must be 'CK' or 'CI', got {kind!r}")
    return CosetReps(m, kind, tuple(ctx.gen_power(j) for j in range(n)))


@dataclass(frozen=True)
class LinearMap:
    s: FieldElement
    t: FieldElement
    u: FieldElement
    v: FieldElement

    def __post_init__(self):
        if not self.s or not self.t:
            raise ValueError("s and t must be nonzero")


def apply_linear(f: Polynomial, m: LinearMap) -> Polynomial:
    """s * f(t x + u) + v."""
    ctx = f.ctx
    inner = Polynomial(ctx, [ctx(m.u), ctx(m.t)])
    acc = Polynomial(ctx)
    for c in reversed(f.coeffs):
        acc = acc * inner + c
    return acc * ctx(m.s) + ctx(m.v)


def normalize(f: Polynomial) -> NormalizedSeptic:
    """A normalized septic linearly related to the degree-7 polynomial f.

    Off characteristic 7 the x^6 term is shifted away.  Over F_{7^r} the
    shift instead clears a_{k-1} below the top nonzero a_k (k <= 6), and
    c7 x^7 + c0 collapses to x^7.
    """
    ctx = f.ctx
    if f.degree != 7:
        raise ValueError("expected a polynomial of degree 7")
    c = f.coeffs
    if ctx.p != 7:
        u = -c[6] / (7 * c[7])
    else:
        ks = [j for j in range(1, 7) if c[j]]
        if not ks:
            return NormalizedSeptic.of(ctx, 0, 0, 0, 0, 0)
        k = max(ks)
        u = -c[k - 1] / (k * c[k])
    g = apply_linear(f, LinearMap(1 / c[7], ctx.one, u, ctx.zero))
    g = g - g[0]
    return NormalizedSeptic.from_polynomial(g)


# -- the scaling action, vectorized -----------------------------------------


def _rows(septics) -> np.ndarray:
    return np.array([s.key for s in septics], dtype=np.int64).reshape(-1, 6)


def orbit_rows(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """Images of each (a6, a5, ..., a1) row under t = e^j, shape (n, q-1, 6)."""
    rows = np.asarray(rows, dtype=np.int64)
    log = ctx.log_array[rows]  # (n, 6), -1 marks zero
    j = np.arange(ctx.q - 1, dtype=np.int64)
    shift = (j[:, None] * _EXPONENTS[None, :]) % (ctx.q - 1)  # (q-1, 6)
    img = ctx.exp_array[(np.maximum(log, 0)[:, None, :] + shift[None, :, :]) % (ctx.q - 1)]
    return np.where(log[:, None, :] < 0, 0, img)


def _keys(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    weights = ctx.q ** np.arange(rows.shape[-1] - 1, -1, -1, dtype=np.int64)
    return rows @ weights


def canonical_rows(ctx: FieldCtx, rows, chunk: int = 1024) -> np.ndarray:
    """Orbit-minimum representatives for many (a6, a5, ..., a1) rows."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, 6)
    out = np.empty_like(rows)
    for start in range(0, len(rows), chunk):
        orb = orbit_rows(ctx, rows[start : start + chunk])
        best = np.argmin(_keys(ctx, orb), axis=1)
        out[start : start + chunk] = orb[np.arange(len(orb)), best]
    return out


def canonical(s: NormalizedSeptic) -> NormalizedSeptic:
    """Minimum of the orbit {(b_i t^(7-i)) : t in F_q^*} in encoding order."""
    a6, a5, a4, a3, a2, a1 = (int(v) for v in canonical_rows(s.ctx, _rows([s]))[0])
    return NormalizedSeptic.of(s.ctx, a5, a4, a3, a2, a1, a6)


def linearly_related(s1: NormalizedSeptic, s2: NormalizedSeptic) -> FieldElement | None:
    """Some t with s1_i = s2_i * t^(7-i) for every i, or None.

    Scans all of F_q^* in generator-power order, so the witness returned for
    equal inputs is t = 1.
    """
    ctx = s1.ctx
    if s2.ctx != ctx:
        raise ValueError("septics over different fields")
    orb = orbit_rows(ctx, _rows([s2]))[0]
    hit = np.flatnonzero(np.all(orb == np.array(s1.key), axis=1))
    return ctx.gen_power(int(hit[0])) if hit.size else None


# -- candidate space ----------------------------------------------------------


@dataclass
class CandidateBlock:
    """A product of coefficient menus with a5, a4 fixed.

    If ``a1_follows_a3`` is set, a1 is pinned and a1[i] goes with a3[i];
    otherwise the block is the full product a3 x a2 x a1.
    """

    a5: int
    a4: int
    a3: np.ndarray
    a2: np.ndarray
    a1: np.ndarray
    a1_follows_a3: bool = False

    @property
    def prefix(self) -> tuple[int, int]:
        return (self.a5, self.a4)

    def __len__(self):
        n1 = 1 if self.a1_follows_a3 else len(self.a1)
        return len(self.a3) * len(self.a2) * n1

    def chunks(self, limit: int = 1 << 20) -> Iterator[CandidateBlock]:
        per_a3 = max(1, len(self) // max(1, len(self.a3)))
        step = max(1, limit // per_a3)
        for i in range(0, len(self.a3), step):
            yield CandidateBlock(
                self.a5,
                self.a4,
                self.a3[i : i + step],
                self.a2,
                self.a1[i : i + step] if self.a1_follows_a3 else self.a1,
                self.a1_follows_a3,
            )

    def grid(self) -> tuple[np.ndarray, ...]:
        """Broadcastable (a5, a4, a3, a2, a1) arrays spanning the block."""
        a3 = self.a3[:, None, None]
        a2 = self.a2[None, :, None]
        a1 = self.a1[:, None, None] if self.a1_follows_a3 else self.a1[None, None, :]
        return np.int64(self.a5), np.int64(self.a4), a3, a2, a1

    def rows(self) -> np.ndarray:
        """All members as an (n, 5) array of encodings (a5, a4, a3, a2, a1)."""
        arrays = np.broadcast_arrays(*self.grid())
        return np.stack([a.reshape(-1) for a in arrays], axis=1)


def no_pp_reason(ctx: FieldCtx) -> str | None:
    if ctx.q % 7 == 1:
        return "no degree-7 PP exists: 7 divides q - 1"
    return None


def check_search_field(ctx: FieldCtx) -> None:
    if ctx.p == 2:
        raise ValueError("even characteristic is not supported")
    if ctx.p == 7:
        if ctx.r not in (2, 3):
            raise ValueError("characteristic 7 is supported only for q = 49, 343")
    elif not 7 < ctx.q <= 409:
        raise ValueError(f"q = {ctx.q} is outside 7 < q <= 409")


def _menu(values) -> np.ndarray:
    return np.asarray(values, dtype=np.int64).reshape(-1)


def _raw_blocks(ctx: FieldCtx) -> list[CandidateBlock]:
    q = ctx.q
    full = np.arange(q, dtype=np.int64)

    def CK(m):
        return coset_reps(ctx, m, "CK").encodings()

    def CI(m):
        return coset_reps(ctx, m, "CI").encodings()

    def zero_or(arr):
        return np.concatenate([[0], arr]).astype(np.int64)

    one_mod_4 = q % 4 == 1
    k3_a1 = zero_or(CI(2)) if one_mod_4 else full
    out = []
    if ctx.p == 7:
        # a_{k-1} = 0 throughout; a6 = 0 for PPs
        for a5 in CK(2):
            out.append(CandidateBlock(a5, 0, full, zero_or(CI(2)), full))
        for a4 in CK(3):
            out.append(CandidateBlock(0, a4, _menu(0), zero_or(CI(3)), full))
        for a3 in CK(4):
            out.append(CandidateBlock(0, 0, _menu(a3), _menu(0), k3_a1))
        for a2 in CK(5):
            out.append(CandidateBlock(0, 0, _menu(0), _menu(a2), _menu(0)))
    else:
        for a5 in CK(2):
            out.append(CandidateBlock(a5, 0, full, zero_or(CI(2)), full))
            for a4 in CI(2):
                out.append(CandidateBlock(a5, a4, full, full, full))
        for a4 in CK(3):
            out.append(CandidateBlock(0, a4, _menu(0), zero_or(CI(3)), full))
            out.append(CandidateBlock(0, a4, CI(3), full, full))
        for a3 in CK(4):
            out.append(CandidateBlock(0, 0, _menu(a3), _menu(0), k3_a1))
            out.append(CandidateBlock(0, 0, _menu(a3), CI(4), full))
        for a2 in CK(5):
            out.append(CandidateBlock(0, 0, _menu(0), _menu(a2), zero_or(CI(5))))
    out.append(CandidateBlock(0, 0, _menu(0), _menu(0), zero_or(CK(6))))
    return out


def pinned_variable(ctx: FieldCtx):
    """(variable, identity) forced by the first coefficient identity, if any."""
    if ctx.p == 7:
        return "a1", hermite.P7_RELATION
    qm = ctx.q % 7
    if qm == 4 and ctx.p == 3:
        return None
    var = {2: "a1", 3: "a2", 4: "a3", 5: "a4", 6: "a5"}[qm]
    return var, hermite.FIRST_IDENTITIES[qm]


def _pin(ctx: FieldCtx, b: CandidateBlock, var: str, ident) -> CandidateBlock | None:
    if ctx.p == 7 and b.a5 == 0:
        return b  # the relation only binds when a5 != 0
    env = dict(zip(hermite.VARIABLES, (np.int64(b.a5), np.int64(b.a4), b.a3, b.a2, b.a1)))
    if var == "a1":
        env["a1"] = np.int64(0)  # placeholder; solve_linear ignores it
        val, ok = hermite.solve_linear(ctx, ident, "a1", env)
        val = np.broadcast_to(val, b.a3.shape)
        ok = np.broadcast_to(ok, b.a3.shape)
        keep = ok & np.isin(val, b.a1)
        if not keep.any():
            return None
        return CandidateBlock(b.a5, b.a4, b.a3[keep], b.a2, val[keep].astype(np.int64), True)
    env[var] = np.int64(0)
    val, ok = hermite.solve_linear(ctx, ident, var, env)
    val = int(val)
    if var in ("a5", "a4"):
        return b if int(getattr(b, var)) == val else None
    menu = getattr(b, var)
    if val not in menu:
        return None
    fields = dict(a3=b.a3, a2=b.a2)
    fields[var] = _menu(val)
    return CandidateBlock(b.a5, b.a4, fields["a3"], fields["a2"], b.a1, b.a1_follows_a3)


def candidate_blocks(ctx: FieldCtx, pinned: bool = True) -> list[CandidateBlock]:
    """The candidate space as a list of product blocks.

    Every degree-7 PP class over F_q has a member in the union.  With
    ``pinned`` the coefficient forced by the first identity for q mod 7 (or
    the a1 relation over F_{7^r}) is solved for instead of enumerated.
    """
    check_search_field(ctx)
    if no_pp_reason(ctx):
        return []
    blocks = _raw_blocks(ctx)
    pin = pinned_variable(ctx) if pinned else None
    if pin is not None:
        blocks = [nb for b in blocks if (nb := _pin(ctx, b, *pin)) is not None]
    return [b for b in blocks if len(b)]


def candidate_space(ctx: FieldCtx, pinned: bool = True) -> Iterator[NormalizedSeptic]:
    """Lazily yield every candidate normalized septic."""
    for block in candidate_blocks(ctx, pinned):
        for chunk in block.chunks(1 << 14):
            for row in chunk.rows():
                yield NormalizedSeptic.of(ctx, *(int(v) for v in row))
