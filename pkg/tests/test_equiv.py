import numpy as np
import pytest

from pp7.equiv import (
    CandidateBlock,
    LinearMap,
    apply_linear,
    candidate_blocks,
    candidate_space,
    canonical,
    canonical_rows,
    coset_reps,
    linearly_related,
    normalize,
    orbit_rows,
)
from pp7.gf import field_of_order, make_field
from pp7.poly import NormalizedSeptic, Polynomial


def rand_septic(ctx, rng):
    return NormalizedSeptic.of(ctx, *(int(v) for v in rng.integers(0, ctx.q, 5)))


def rand_map(ctx, rng):
    s, t = (ctx.element(int(v)) for v in rng.integers(1, ctx.q, 2))
    u, v = (ctx.element(int(w)) for w in rng.integers(0, ctx.q, 2))
    return LinearMap(s, t, u, v)


def scale(s, t):
    vals = [s.coefficient(i) * t ** (7 - i) for i in (5, 4, 3, 2, 1)]
    return NormalizedSeptic(*vals, a6=s.a6 * t)


def test_coset_reps_examples():
    f11 = make_field(11)
    e = f11.generator
    assert coset_reps(f11, 2, "CK").reps == (f11.one, e)
    assert coset_reps(f11, 7, "CK").reps == (f11.one,)
    f13 = make_field(13)
    reps = coset_reps(f13, 6, "CI")
    assert reps.reps == (f13.one, f13.generator)
    assert len(coset_reps(f13, 4, "CK").reps) == 4 and len(coset_reps(f13, 4, "CI").reps) == 3
    with pytest.raises(ValueError):
        coset_reps(f13, 0, "CK")
    with pytest.raises(ValueError):
        coset_reps(f13, 2, "XX")


@pytest.mark.parametrize("q", [11, 13, 49, 81])
def test_coset_reps_are_transversals(q):
    ctx = field_of_order(q)
    n = q - 1
    for m in range(2, 7):
        g = np.gcd(m, n)
        ck = [ctx.log(r) for r in coset_reps(ctx, m, "CK").reps]
        ci = [ctx.log(r) for r in coset_reps(ctx, m, "CI").reps]
        # CK: one rep per class of F* modulo m-th powers; CI: modulo the m-th roots of unity
        assert sorted(j % g for j in ck) == list(range(g))
        assert sorted(j % (n // g) for j in ci) == list(range(n // g))


def test_linear_map_examples():
    ctx = make_field(7, 2)
    e = ctx.generator
    f = Polynomial(ctx, [0, 3, 0, e, 0, 1, 0, 1])
    assert apply_linear(f, LinearMap(ctx.one, ctx.one, ctx.zero, ctx.zero)) == f
    x7 = Polynomial.monomial(ctx, 7)
    assert apply_linear(x7, LinearMap(e ** (-7), e, ctx.zero, ctx.zero)) == x7
    with pytest.raises(ValueError):
        LinearMap(ctx.zero, e, ctx.zero, ctx.zero)


def test_normalize_examples():
    f11 = make_field(11)
    f = Polynomial(f11, [4, 1, 2, 0, 9, 3, 6, 3])
    s = normalize(f)
    assert s.a6 == 0 and s.polynomial().coeffs[7] == 1 and s.polynomial().coeffs[0] == 0
    f343 = make_field(7, 3)
    s = normalize(Polynomial.monomial(f343, 7) + 5)
    assert s.values == (0, 0, 0, 0, 0) and s.a6 == 0
    with pytest.raises(ValueError):
        normalize(Polynomial.monomial(f11, 6))


def test_normalize_keeps_top_index_p7():
    rng = np.random.default_rng(3)
    ctx = make_field(7, 2)
    for _ in range(200):
        f = Polynomial(ctx, [*rng.integers(0, 49, 7), rng.integers(1, 49)])
        s = normalize(f)
        k = s.top_index
        if k > 1:
            assert s.coefficient(k - 1) == 0
        t = ctx.element(int(rng.integers(1, 49)))
        s2 = normalize(apply_linear(s.polynomial(), LinearMap(t ** (-7), t, ctx.zero, ctx.zero)))
        assert s2.top_index == k


def test_linearly_related_examples():
    f13 = make_field(13)
    a = NormalizedSeptic.of(f13, 0, 0, 0, 0, 2)
    assert linearly_related(a, a) == 1
    e = f13.generator
    b = NormalizedSeptic(f13.zero, f13.zero, f13.zero, f13.zero, 2 * e**6)
    t = linearly_related(b, a)
    assert t is not None and scale(a, t) == b
    c = NormalizedSeptic.of(f13, 0, 0, 0, 0, 6)
    assert linearly_related(a, c) is None
    assert canonical(a) != canonical(c)
    with pytest.raises(ValueError):
        linearly_related(a, NormalizedSeptic.of(make_field(11), 0, 0, 0, 0, 2))


def test_canonical_properties_randomized():
    rng = np.random.default_rng(4)
    n = 0
    for q in (9, 11, 13, 25, 49, 81, 343):
        ctx = field_of_order(q)
        for _ in range(150):
            s = rand_septic(ctx, rng)
            c = canonical(s)
            assert canonical(c) == c
            t = ctx.element(int(rng.integers(1, q)))
            assert canonical(scale(s, t)) == c
            assert c.key <= s.key
            assert linearly_related(c, s) is not None
            n += 1
    assert n >= 1000


def test_canonical_rows_matches_orbit_scan():
    ctx = field_of_order(19)
    rng = np.random.default_rng(9)
    rows = np.column_stack([np.zeros(50, dtype=np.int64), rng.integers(0, 19, (50, 5))])
    orb = orbit_rows(ctx, rows)
    for row, canon in zip(orb, canonical_rows(ctx, rows, chunk=7)):
        assert tuple(canon) == min(tuple(r) for r in row)


def test_equivalence_relation_laws_randomized():
    rng = np.random.default_rng(5)
    n = 0
    for q in (11, 13, 27, 49):
        ctx = field_of_order(q)
        for _ in range(250):
            a = rand_septic(ctx, rng)
            t1, t2 = (ctx.element(int(v)) for v in rng.integers(1, q, 2))
            b = scale(a, t1)
            c = scale(b, t2)
            assert linearly_related(a, a) == 1
            u = linearly_related(b, a)
            assert u is not None and scale(a, u) == b
            w = linearly_related(a, b)
            assert w is not None and scale(b, w) == a
            v = linearly_related(c, a)
            assert v is not None and scale(a, v) == c
            d = rand_septic(ctx, rng)
            assert (linearly_related(d, a) is None) == (canonical(d) != canonical(a))
            n += 1
    assert n >= 1000


def test_normalization_respects_linear_maps():
    rng = np.random.default_rng(6)
    n = 0
    for q in (9, 11, 13, 25, 27, 31):
        ctx = field_of_order(q)
        for _ in range(200):
            c = rng.integers(0, q, 8)
            c[7] = rng.integers(1, q)
            f = Polynomial(ctx, c)
            g = apply_linear(f, rand_map(ctx, rng))
            assert canonical(normalize(g)) == canonical(normalize(f))
            n += 1
    assert n >= 1000


def test_normalization_respects_linear_maps_p7():
    rng = np.random.default_rng(7)
    ctx = field_of_order(49)
    for _ in range(300):
        c = rng.integers(0, 49, 8)
        c[7] = rng.integers(1, 49)
        c[6] = 0  # PPs over F_{7^r} have no x^6 term
        f = Polynomial(ctx, c)
        g = apply_linear(f, rand_map(ctx, rng))
        if g.coeffs[6] != 0:
            continue
        assert canonical(normalize(g)) == canonical(normalize(f))


def test_candidate_space_examples():
    f13 = make_field(13)
    assert all(s.a5 == 0 for s in candidate_space(f13))
    f11 = make_field(11)
    assert {s.a5.value for s in candidate_space(f11)} == {0, 1, f11.generator.value}
    assert list(candidate_space(make_field(29))) == []
    assert len(list(candidate_space(f11))) == 1481
    with pytest.raises(ValueError):
        candidate_blocks(make_field(2, 4))
    with pytest.raises(ValueError):
        candidate_blocks(make_field(7))
    with pytest.raises(ValueError):
        candidate_blocks(make_field(421))


def test_candidate_block_chunks_cover_block():
    ctx = field_of_order(23)
    for b in candidate_blocks(ctx):
        rows = b.rows()
        assert len(rows) == len(b)
        parts = np.vstack([c.rows() for c in b.chunks(limit=100)])
        assert np.array_equal(parts, rows)
    pinned = [b for b in candidate_blocks(field_of_order(9)) if b.a1_follows_a3]
    assert pinned and isinstance(pinned[0], CandidateBlock)


@pytest.mark.parametrize("q", [9, 11, 13])
def test_candidate_space_complete(q):
    from oracles import brute_force_classes

    ctx = field_of_order(q)
    want = brute_force_classes(ctx)
    got = set()
    from pp7.poly import batch_is_pp

    for b in candidate_blocks(ctx):
        rows = b.rows()
        pps = rows[batch_is_pp(ctx, rows)]
        got |= {canonical(NormalizedSeptic.of(ctx, *(int(v) for v in r))).key for r in pps}
    assert got == want
