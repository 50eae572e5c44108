"""Command-line front end.

Exit codes: 0 success, 1 a mathematical "no" (not a PP, not related, table
mismatch), 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .equiv import canonical, linearly_related, normalize
from .exceptional import catalog, is_exceptional
from .gf import FieldCtx, classifiable_orders, field_of_order
from .golden import golden_tables, parse_element
from .hermite import hermite_full
from .poly import NormalizedSeptic, Polynomial, is_pp_bruteforce, is_pp_valueset
from .search import ClassificationReport, classify, default_jobs, verify_paper


class UsageError(Exception):
    pass


def parse_token(ctx: FieldCtx, token: str) -> int:
    """A bare non-negative integer is an encoding; anything else an expression in e, the generator."""
    token = token.strip()
    try:
        if token.isdigit():
            v = int(token)
            if not 0 <= v < ctx.q:
                raise UsageError(f"encoding {v} out of range for F_{ctx.q}")
            return v
        return parse_element(ctx, token)
    except ValueError as err:
        raise UsageError(f"bad coefficient {token!r}: {err}") from None


def parse_coeffs(text: str, ctx: FieldCtx) -> Polynomial:
    """Comma-separated coefficients, constant term first."""
    tokens = [t for t in text.split(",")]
    if not text.strip() or any(not t.strip() for t in tokens):
        raise UsageError(f"malformed coefficient list {text!r}")
    return Polynomial(ctx, [parse_token(ctx, t) for t in tokens])


def parse_septic(text: str, ctx: FieldCtx) -> Polynomial:
    """'a5,a4,a3,a2,a1' for x^7 + a5 x^5 + ... + a1 x."""
    tokens = text.split(",")
    if len(tokens) != 5:
        raise UsageError("--septic needs exactly five values a5,a4,a3,a2,a1")
    vals = [parse_token(ctx, t) for t in tokens]
    return NormalizedSeptic.of(ctx, *vals).polynomial()


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def build_field(args) -> FieldCtx:
    if args.q is None:
        raise UsageError("--q is required")
    kwargs = {}
    if args.modulus:
        kwargs["modulus"] = _int_list(args.modulus)
    if args.generator:
        g = _int_list(args.generator)
        kwargs["generator"] = g[0] if len(g) == 1 else g
    try:
        return field_of_order(args.q, **kwargs)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _polynomial(args, ctx, which="coeffs") -> Polynomial:
    coeffs = getattr(args, which, None)
    septic = getattr(args, "septic" if which == "coeffs" else "other_septic", None)
    if coeffs and septic:
        raise UsageError("give either --coeffs or --septic, not both")
    if coeffs:
        f = parse_coeffs(coeffs, ctx)
    elif septic:
        f = parse_septic(septic, ctx)
    else:
        raise UsageError(f"--{which if which == 'coeffs' else 'other'} (or the --septic form) is required")
    if f.degree < 1:
        raise UsageError("polynomial must have degree at least 1")
    return f


def _septic(args, ctx, which="coeffs") -> NormalizedSeptic:
    f = _polynomial(args, ctx, which)
    if f.degree != 7:
        raise UsageError("polynomial must have degree 7")
    return normalize(f)


# -- output -------------------------------------------------------------------


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(payload))
        w.writerow([json.dumps(v) if isinstance(v, (list, dict)) else v for v in payload.values()])
        out = buf.getvalue()
    else:
        out = text + "\n"
    _write(args, out)


def _write(args, out: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _values(s: NormalizedSeptic) -> list[int]:
    return list(s.values) if not s.a6 else [s.a6.value, *s.values]


# -- commands -----------------------------------------------------------------


def cmd_classify(args) -> int:
    ctx = build_field(args)
    rep = classify(ctx, args.jobs, prune=not args.no_prune)
    if args.verify:
        verify_paper(ctx, rep)
    _write_report(args, rep)
    return 1 if rep.golden_diff else 0


def _write_report(args, rep: ClassificationReport) -> None:
    if args.format == "json":
        _write(args, rep.to_json(with_elapsed=not args.no_elapsed) + "\n")
    elif args.format == "csv":
        _write(args, rep.to_csv())
    else:
        _write(args, rep.to_text() + "\n")


def cmd_is_pp(args) -> int:
    ctx = build_field(args)
    f = _polynomial(args, ctx)
    test = {"valueset": is_pp_valueset, "bruteforce": is_pp_bruteforce, "hermite": lambda g: hermite_full(g).passed}
    ok = test[args.method](f)
    _emit(args, {"q": ctx.q, "polynomial": repr(f), "is_pp": ok, "method": args.method}, "true" if ok else "false")
    return 0 if ok else 1


def cmd_hermite(args) -> int:
    ctx = build_field(args)
    f = _polynomial(args, ctx)
    rep = hermite_full(f)
    cond1 = None if rep.cond1_sum is None else rep.cond1_sum.value
    lines = [f"passed: {str(rep.passed).lower()}"]
    if rep.failing_k is not None:
        lines.append(f"first failing k: {rep.failing_k}")
    if rep.cond1_sum is not None:
        lines.append(f"sum at k = q-1: {rep.cond1_sum!r}")
    _emit(args, {"q": ctx.q, "passed": rep.passed, "failing_k": rep.failing_k, "cond1_sum": cond1}, "\n".join(lines))
    return 0 if rep.passed else 1


def cmd_exceptional(args) -> int:
    ctx = build_field(args)
    if not (args.coeffs or args.septic):
        entries = catalog(ctx)
        rows = [
            {
                "family": e.family,
                "parameter": e.parameter.value,
                "s": e.s,
                "septic": _values(e.septic),
                "canonical": _values(canonical(e.septic)),
            }
            for e in entries
        ]
        text = "\n".join(f"{e.family:13s} {e.polynomial!r}" for e in entries) or "(empty)"
        if args.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["family", "parameter", "s", "septic", "canonical"])
            for r in rows:
                w.writerow([r["family"], r["parameter"], r["s"] or "", *(" ".join(map(str, r[k])) for k in ("septic", "canonical"))])
            _write(args, buf.getvalue())
        else:
            _emit(args, {"q": ctx.q, "catalog": rows}, text)
        return 0
    s = _septic(args, ctx)
    if not is_pp_valueset(s.polynomial()):
        _emit(args, {"q": ctx.q, "is_pp": False, "family": None}, "not a permutation polynomial")
        return 1
    entry = is_exceptional(s)
    family = entry.family if entry else None
    _emit(args, {"q": ctx.q, "is_pp": True, "family": family}, family or "non-exceptional")
    return 0 if entry else 1


def cmd_canonical(args) -> int:
    ctx = build_field(args)
    s = _septic(args, ctx)
    c = canonical(s)
    _emit(args, {"q": ctx.q, "normalized": _values(s), "canonical": _values(c)}, repr(c))
    return 0


def cmd_related(args) -> int:
    ctx = build_field(args)
    s1 = _septic(args, ctx)
    s2 = _septic(args, ctx, "other")
    t = linearly_related(s1, s2)
    text = f"related, t = {t!r}" if t is not None else "not related"
    _emit(args, {"q": ctx.q, "related": t is not None, "t": None if t is None else t.value}, text)
    return 0 if t is not None else 1


def cmd_verify_paper(args) -> int:
    tables = golden_tables()
    if args.all:
        qs = sorted(tables)
    else:
        build_field(args)  # validates --q
        if args.q not in tables:
            raise UsageError(f"no reference table for q = {args.q}")
        qs = [args.q]
    results = {}
    for q in qs:
        ctx = build_field(argparse.Namespace(q=q, modulus=args.modulus if not args.all else None,
                                             generator=args.generator if not args.all else None))
        results[q] = verify_paper(ctx, jobs=args.jobs)
    bad = {q: d for q, d in results.items() if d}
    lines = [f"q = {q}: " + ("ok" if not d else f"{len(d)} differences") for q, d in results.items()]
    for q, d in bad.items():
        lines += [f"  q = {q}: {x}" for x in d]
    _emit(args, {"diff": {str(q): d for q, d in results.items()}}, "\n".join(lines))
    return 1 if bad else 0


def cmd_list_fields(args) -> int:
    tables = golden_tables()
    rows = []
    for q in classifiable_orders():
        ctx = field_of_order(q)
        rows.append(
            {
                "q": q,
                "p": ctx.p,
                "r": ctx.r,
                "modulus": list(ctx.modulus),
                "generator": ctx._gen,
                "q_mod_7": q % 7,
                "expected_nonexceptional": len(tables[q].nonexceptional),
            }
        )
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({**r, "modulus": " ".join(map(str, r["modulus"]))})
        _write(args, buf.getvalue())
        return 0
    text = "\n".join(
        f"{r['q']:4d}  p={r['p']:<3d} r={r['r']}  modulus={r['modulus']}  generator={r['generator']}"
        f"  q mod 7 = {r['q_mod_7']}  non-exceptional classes: {r['expected_nonexceptional']}"
        for r in rows
    )
    _emit(args, {"fields": rows}, text)
    return 0


# -- parser -------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field order")
    common.add_argument("--modulus", help="irreducible modulus, coefficients from degree 0, e.g. 2,2,1")
    common.add_argument("--generator", help="multiplicative generator as an encoding or coefficient vector")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", help="write to this file instead of stdout")

    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("--coeffs", help="coefficients from the constant term up, e.g. 0,2,0,0,0,0,0,1")
    poly.add_argument("--septic", help="a5,a4,a3,a2,a1 of x^7 + a5 x^5 + ... + a1 x")

    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=_positive, default=None, help="worker processes (default $PP7_JOBS or 1)")

    parser = argparse.ArgumentParser(prog="pp7", description="Degree-7 permutation polynomials over odd finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common, jobs], help="list all classes over F_q")
    p.add_argument("--no-prune", action="store_true", help="value-set test every candidate")
    p.add_argument("--verify", action="store_true", help="compare with the reference tables")
    p.add_argument("--no-elapsed", action="store_true", help="omit timing from JSON")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("is-pp", parents=[common, poly], help="test whether a polynomial permutes F_q")
    p.add_argument("--method", choices=("valueset", "bruteforce", "hermite"), default="valueset")
    p.set_defaults(func=cmd_is_pp)

    p = sub.add_parser("hermite", parents=[common, poly], help="run Hermite's criterion")
    p.set_defaults(func=cmd_hermite)

    p = sub.add_parser("exceptional", parents=[common, poly], help="catalog, or classify one PP")
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("canonical", parents=[common, poly], help="canonical class representative")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("related", parents=[common, poly], help="test linear relatedness of two septics")
    p.add_argument("--other", help="second polynomial, constant term first")
    p.add_argument("--other-septic", help="second polynomial as a5,a4,a3,a2,a1")
    p.set_defaults(func=cmd_related)

    p = sub.add_parser("verify-paper", parents=[common, jobs], help="diff against the reference tables")
    p.add_argument("--all", action="store_true", help="every supported q")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("list-fields", parents=[common], help="supported fields and their models")
    p.set_defaults(func=cmd_list_fields)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) is None:
        try:
            args.jobs = default_jobs()
        except ValueError:
            print("pp7: error: bad PP7_JOBS value", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except UsageError as err:
        print(f"pp7: error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        # out-of-range fields and similar precondition failures
        print(f"pp7: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
