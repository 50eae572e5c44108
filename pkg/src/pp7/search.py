"""Classification of degree-7 PPs over F_q up to linear transformations.

The candidate space is scanned block by block: coefficient identities prune
each block on a broadcast grid, the survivors get the vectorized value-set
test, and the PPs are reduced to canonical class keys.  Work is split by the
(a5, a4) prefix and merged deterministically.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import hermite
from .equiv import candidate_blocks, canonical_rows, check_search_field, no_pp_reason, pinned_variable
from .exceptional import catalog_keys
from .gf import FieldCtx, make_field
from .golden import golden_tables
from .poly import NormalizedSeptic, batch_is_pp, is_pp_bruteforce

JOBS_ENV = "PP7_JOBS"


def default_jobs() -> int:
    return max(1, int(os.environ.get(JOBS_ENV, "1")))


@dataclass(frozen=True)
class PPClassRecord:
    q: int
    coeffs: NormalizedSeptic
    is_exceptional: bool
    catalog_tag: str | None
    witness_count: int


@dataclass
class ClassificationReport:
    p: int
    r: int
    modulus: tuple[int, ...]
    generator: int
    records: list[PPClassRecord]
    elapsed_ms: float = 0.0
    golden_diff: list[str] | None = None
    reason: str | None = None
    # PPs found that break an identity the filters assume (always empty so far)
    identity_violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def nonexceptional_count(self) -> int:
        return sum(not rec.is_exceptional for rec in self.records)

    @property
    def nonexceptional(self) -> list[PPClassRecord]:
        return [rec for rec in self.records if not rec.is_exceptional]

    @property
    def exceptional(self) -> list[PPClassRecord]:
        return [rec for rec in self.records if rec.is_exceptional]

    def field(self) -> FieldCtx:
        return make_field(self.p, self.r, self.modulus, self.generator)

    # -- serialization ------------------------------------------------------

    def to_dict(self, with_elapsed: bool = True) -> dict:
        out = {
            "q": self.q,
            "p": self.p,
            "r": self.r,
            "modulus": list(self.modulus),
            "generator": self.generator,
            "classes": [
                {
                    "coeffs": list(rec.coeffs.values),
                    "exceptional": rec.is_exceptional,
                    "family": rec.catalog_tag,
                    "witnesses": rec.witness_count,
                }
                for rec in self.records
            ],
            "nonexceptional_count": self.nonexceptional_count,
            "reason": self.reason,
            "golden_diff": self.golden_diff,
            "identity_violations": [list(v) for v in self.identity_violations],
        }
        if with_elapsed:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self, with_elapsed: bool = True, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(with_elapsed), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> ClassificationReport:
        ctx = make_field(d["p"], d["r"], d["modulus"], d["generator"])
        records = [
            PPClassRecord(
                ctx.q,
                NormalizedSeptic.of(ctx, *c["coeffs"]),
                c["exceptional"],
                c["family"],
                c["witnesses"],
            )
            for c in d["classes"]
        ]
        if d.get("nonexceptional_count", None) not in (None, sum(not r.is_exceptional for r in records)):
            raise ValueError("nonexceptional_count disagrees with the class list")
        return cls(
            d["p"],
            d["r"],
            tuple(d["modulus"]),
            d["generator"],
            records,
            d.get("elapsed_ms", 0.0),
            d.get("golden_diff"),
            d.get("reason"),
            [tuple(v) for v in d.get("identity_violations", [])],
        )

    @classmethod
    def from_json(cls, text: str) -> ClassificationReport:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "a5", "a4", "a3", "a2", "a1", "exceptional", "family", "witnesses"])
        for rec in self.records:
            w.writerow([self.q, *rec.coeffs.values, int(rec.is_exceptional), rec.catalog_tag or "", rec.witness_count])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [
            f"q = {self.q} (p = {self.p}, r = {self.r}), modulus {list(self.modulus)}, generator {self.generator}",
        ]
        if self.reason:
            lines.append(f"no PP: {self.reason}")
        for title, recs in (("non-exceptional", self.nonexceptional), ("exceptional", self.exceptional)):
            lines.append(f"{title} classes: {len(recs)}")
            for rec in recs:
                tag = f"  [{rec.catalog_tag}]" if rec.catalog_tag else ""
                lines.append(f"  {rec.coeffs!r}{tag}")
        if self.identity_violations:
            lines.append(f"identity violations: {self.identity_violations}")
        if self.golden_diff is not None:
            lines.append("golden diff: " + ("empty" if not self.golden_diff else ""))
            lines += [f"  {d}" for d in self.golden_diff]
        lines.append(f"elapsed: {self.elapsed_ms / 1000:.2f} s")
        return "\n".join(lines)


# -- the scan -----------------------------------------------------------------


def _all_identities(ctx: FieldCtx) -> list[hermite.Identity]:
    if ctx.p == 7:
        return [hermite.P7_RELATION]
    return hermite.applicable_identities(ctx)


def _scan_filters(ctx: FieldCtx, prune: bool) -> list[hermite.Identity]:
    if not prune or ctx.p == 7:
        return []
    pin = pinned_variable(ctx)
    return [i for i in hermite.applicable_identities(ctx) if pin is None or i is not pin[1]]


def _violations(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """Rows of confirmed PPs that break one of the identities."""
    if ctx.p == 7:
        rows = rows[rows[:, 0] != 0]  # the relation binds only when a5 != 0
    if len(rows) == 0:
        return rows
    ok = hermite.identity_mask(ctx, *rows.T, identities=_all_identities(ctx))
    return rows[~ok]


def _survivors(ctx, chunk, filters) -> np.ndarray:
    grid = chunk.grid()
    if filters:
        mask = hermite.identity_mask(ctx, *grid, identities=filters)
    else:
        mask = np.ones(np.broadcast_shapes(*(np.shape(a) for a in grid)), dtype=bool)
    idx = np.nonzero(mask)
    return np.stack([np.broadcast_to(a, mask.shape)[idx] for a in grid], axis=1)


def _scan(ctx: FieldCtx, prefixes, prune: bool):
    """Class key -> witness count over the blocks whose prefix is listed."""
    wanted = set(prefixes)
    counts = Counter()
    violations = []
    filters = _scan_filters(ctx, prune)
    for block in candidate_blocks(ctx, pinned=prune):
        if block.prefix not in wanted:
            continue
        for chunk in block.chunks():
            rows = _survivors(ctx, chunk, filters)
            if len(rows) == 0:
                continue
            pps = rows[batch_is_pp(ctx, rows)]
            if len(pps) == 0:
                continue
            violations += [tuple(int(v) for v in r) for r in _violations(ctx, pps)]
            keys = canonical_rows(ctx, np.hstack([np.zeros((len(pps), 1), dtype=np.int64), pps]))
            counts.update(tuple(int(v) for v in k) for k in keys)
    return counts, violations


def _prefixes(ctx: FieldCtx, prune: bool) -> list[tuple[int, int]]:
    return sorted({b.prefix for b in candidate_blocks(ctx, pinned=prune)})


def classify(ctx: FieldCtx, jobs: int | None = None, prune: bool = True) -> ClassificationReport:
    """One record per linear-equivalence class of degree-7 PPs over ctx.

    ``prune=False`` drops the identity filters and the pinned coefficient so
    every candidate goes through the value-set test; the identities are then
    only checked against the PPs found.  The result does not depend on
    ``jobs``.
    """
    check_search_field(ctx)
    jobs = default_jobs() if jobs is None else int(jobs)
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    start = time.perf_counter()
    reason = no_pp_reason(ctx)
    counts, violations = Counter(), []
    if reason is None:
        prefixes = _prefixes(ctx, prune)
        parts = [prefixes[i::jobs] for i in range(jobs)]
        if jobs == 1:
            results = [_scan(ctx, prefixes, prune)]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_scan, [ctx] * jobs, parts, [prune] * jobs))
        for c, v in results:
            counts.update(c)
            violations += v
    known = catalog_keys(ctx)
    records = []
    for key in sorted(counts):
        s = NormalizedSeptic.of(ctx, *key[1:], a6=key[0])
        if not is_pp_bruteforce(s.polynomial()):
            raise AssertionError(f"class {s!r} failed the brute-force check")
        entry = known.get(key)
        records.append(PPClassRecord(ctx.q, s, entry is not None, entry.family if entry else None, counts[key]))
    elapsed = (time.perf_counter() - start) * 1000
    return ClassificationReport(ctx.p, ctx.r, ctx.modulus, ctx._gen, records, elapsed, None, reason, sorted(violations))


def verify_paper(ctx: FieldCtx, report: ClassificationReport | None = None, jobs: int | None = None) -> list[str]:
    """Differences between a classification and the reference tables; empty means agreement."""
    tables = golden_tables()
    if ctx.q not in tables:
        raise ValueError(f"no reference table for q = {ctx.q}")
    if report is None:
        report = classify(ctx, jobs)
    expected_non, expected_exc = tables[ctx.q].resolve(ctx)
    if expected_exc is None:
        expected_exc = frozenset(catalog_keys(ctx))
    got_non = {rec.coeffs.key for rec in report.nonexceptional}
    got_exc = {rec.coeffs.key for rec in report.exceptional}
    diff = []
    for label, want, got in (("non-exceptional", expected_non, got_non), ("exceptional", expected_exc, got_exc)):
        for key in sorted(want - got):
            diff.append(f"missing {label} class {_show(ctx, key)}")
        for key in sorted(got - want):
            diff.append(f"unexpected {label} class {_show(ctx, key)}")
    report.golden_diff = diff
    return diff


def _show(ctx, key) -> str:
    return repr(NormalizedSeptic.of(ctx, *key[1:], a6=key[0]))
