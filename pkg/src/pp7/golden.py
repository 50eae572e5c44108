"""Reference classification tables, stored as printed tuples (a5,a4,a3,a2,a1).

Entries are strings in generator-power notation ("e", "2e^3", "e+2", "-1")
and are resolved against a field at load time.  Fields not listed here have
no non-exceptional degree-7 PP.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .equiv import canonical_rows
from .gf import FieldCtx, classifiable_orders
from .poly import NormalizedSeptic

NONEXCEPTIONAL = {
    11: """
        (0,0,0,5,0) (0,0,0,8,0) (0,1,0,0,4) (0,1,0,8,5) (0,1,0,9,5)
        (1,0,5,0,2) (1,0,5,0,7) (1,0,5,8,6) (1,1,5,2,5) (1,2,5,9,8)
        (1,4,5,8,0) (1,8,5,8,0) (1,5,5,1,5) (2,0,9,0,8) (2,0,9,0,9)
        (2,0,9,4,4) (2,1,9,5,3) (2,2,9,5,8) (2,4,9,8,3) (2,8,9,5,2)
        (2,8,9,7,8) (2,8,9,8,1) (2,5,9,5,2) (2,5,9,6,1) (2,5,9,8,3)
    """,
    13: """
        (0,0,0,0,2) (0,0,0,0,6) (0,0,2,0,8) (0,0,4,0,4) (0,0,8,0,3)
        (0,1,0,0,2) (0,1,1,10,5) (0,1,2,1,0) (0,1,2,3,9) (0,1,8,7,11)
        (0,2,1,0,8) (0,4,0,0,6) (0,4,1,7,1) (0,4,4,3,3)
    """,
    17: """
        (0,1,10,0,16) (1,0,6,0,11) (1,0,7,0,0) (1,0,13,0,7) (1,0,13,0,14)
        (1,0,14,0,3) (1,3,13,11,10) (1,10,3,14,11) (3,0,7,0,4) (3,0,10,0,14)
        (3,0,12,0,0) (3,0,14,0,8) (3,0,15,0,2) (3,9,11,14,10) (3,9,12,14,5)
        (3,9,15,14,12) (3,15,10,12,4)
    """,
    19: """
        (0,0,0,0,16) (1,0,3,14,11) (1,0,5,0,4) (1,0,7,0,11) (1,0,11,0,16)
        (1,0,18,9,4) (2,0,14,0,5) (2,0,16,0,9) (2,0,17,0,5)
    """,
    23: "(1,1,0,4,9) (1,5,11,5,9) (1,2,6,19,21)",
    31: "(1,0,16,0,2) (1,17,25,25,29) (3,1,14,19,10)",
    25: "(0,0,0,0,e) (0,0,0,0,e^5) (e,0,e^2,0,0)",
    9: """
        (0,0,e^2,0,0) (0,1,e,1,1) (0,1,e^2,e,1) (0,1,e^2,2e,1) (0,1,e^3,1,1)
        (0,1,2,2,1) (0,1,2e^2,e^3,1) (0,1,2e^2,2e^3,1) (1,0,e,0,2e) (1,0,e^3,0,2e^3)
        (1,0,2e,0,e) (1,0,2e^3,0,e^3) (1,0,1,0,2) (1,e,e,2e^2,1) (1,e,e,1,1)
        (1,e,e^2,2,0) (1,e,e^2,1,0) (1,e,e^3,e^2,2e) (1,e,e^3,2e^2,2e) (1,e,1,e^2,e)
        (1,e,1,2,e) (1,e^2,0,e^2,2) (1,e^2,e,2,2e^2) (1,e^2,e^2,1,e^3) (1,e^2,e^3,1,e^2)
        (1,e^2,2,e^2,0) (1,e^2,2e^2,2,e) (1,e^3,e,e^2,2e^3) (1,e^3,e,2e^2,2e^3) (1,e^3,e^3,e^2,1)
        (1,e^3,e^3,1,1) (1,e^3,2e^2,2,0) (1,e^3,2e^2,1,0) (1,e^3,1,2,e^3) (1,e^3,1,2e^2,e^3)
        (e,0,0,0,0) (e,0,e,1,2e^2) (e,0,e,e^2,2e^2) (e,0,e^2,0,2e^3) (e,0,2e^3,e,2)
        (e,0,2e^3,e^3,2) (e,1,0,2,1) (e,1,e^2,2e^2,e) (e,1,e^3,e^3,2) (e,1,e^3,2e^3,2)
        (e,1,2,e,e^2) (e,1,2,e+2,e^2) (e,1,2e^2,2e^2,2e^2) (e,e,0,e^3,e^2) (e,e,e^2,e,2e)
        (e,e,2e,2,2e^2) (e,e,2e,1,2e^2) (e,e,2e^2,e,2) (e,e,1,e^2,1) (e,e,1,2,1)
        (e,e^2,e,e^2,e^3) (e,e^2,e^3,2,0) (e,e^2,2,2e^2,2e^3) (e,e^2,2e,e^3,e) (e,e^2,2e,2e,e)
        (e,e^3,e^3,e^2,2e) (e,e^3,e^3,2,2e) (e,e^3,2e,2e^3,0) (e,e^3,2e^3,e,e^3) (e,e^3,1,2e,2e^3)
    """,
    27: "(0,0,-1,0,1)",
    49: "(e,0,e^18,0,e^35)",
}

# only the characteristic-7 tables list exceptional classes explicitly
EXCEPTIONAL = {
    49: """
        (0,0,0,0,0) (0,0,0,0,e) (0,0,0,0,e^2) (0,0,0,0,e^3) (0,0,0,0,e^4) (0,0,0,0,e^5)
        (0,1,0,0,2) (0,e^2,0,0,2e^4) (e,0,5e^2,0,6e^3)
    """,
    343: """
        (0,0,0,0,0) (0,0,0,0,1) (0,0,0,0,e) (0,0,0,0,e^2) (0,0,0,0,e^4) (0,0,0,0,e^5)
        (0,e,0,0,2e^2) (0,e^2,0,0,2e^4) (e,0,5e^2,0,6e^3)
    """,
}

_TUPLE = re.compile(r"\(([^()]*)\)")
_TERM = re.compile(r"^([+-]?)(\d*)(e(?:\^\{?(\d+)\}?)?)?$")


def parse_element(ctx: FieldCtx, text: str) -> int:
    """Encoding of an expression like '2e^3', 'e+2', '-1' or 'e^{18}'.

    'e' is the field's generator and integers map into the prime field.
    """
    body = text.replace(" ", "")
    if not body:
        raise ValueError("empty coefficient")
    total = ctx.zero
    for term in re.findall(r"[+-]?[^+-]+", body):
        m = _TERM.match(term)
        if not m or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse coefficient {text!r}")
        c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        if m.group(3):
            total = total + c * ctx.gen_power(int(m.group(4) or 1))
        else:
            total = total + c
    return total.value


def parse_tuples(ctx: FieldCtx, text: str) -> list[NormalizedSeptic]:
    out = []
    for body in _TUPLE.findall(text):
        parts = body.split(",")
        if len(parts) != 5:
            raise ValueError(f"expected five coefficients in ({body})")
        out.append(NormalizedSeptic.of(ctx, *(parse_element(ctx, t) for t in parts)))
    return out


@dataclass(frozen=True)
class GoldenEntry:
    q: int
    nonexceptional: tuple[str, ...]
    exceptional: tuple[str, ...] | None  # None: take the catalog's classes

    def resolve(self, ctx: FieldCtx):
        """(non-exceptional keys, exceptional keys or None) canonicalized over ctx."""
        if ctx.q != self.q:
            raise ValueError(f"table is for q = {self.q}, field has q = {ctx.q}")
        return _keys(ctx, self.nonexceptional), (
            None if self.exceptional is None else _keys(ctx, self.exceptional)
        )


def _keys(ctx, tuples) -> frozenset[tuple[int, ...]]:
    septics = parse_tuples(ctx, " ".join(tuples))
    if not septics:
        return frozenset()
    rows = np.array([s.key for s in septics], dtype=np.int64)
    return frozenset(tuple(int(v) for v in r) for r in canonical_rows(ctx, rows))


def _split(text: str) -> tuple[str, ...]:
    return tuple(f"({b})" for b in _TUPLE.findall(text))


def golden_tables() -> dict[int, GoldenEntry]:
    """Expected classes for every odd 7 < q <= 409."""
    out = {}
    for q in classifiable_orders():
        exc = EXCEPTIONAL.get(q)
        out[q] = GoldenEntry(q, _split(NONEXCEPTIONAL.get(q, "")), None if exc is None else _split(exc))
    return out
