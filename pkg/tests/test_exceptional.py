import itertools

import numpy as np
import pytest

from pp7.equiv import canonical, linearly_related, normalize
from pp7.exceptional import DICKSON7, MONOMIAL, P7_LINEARIZED, catalog, dickson7, is_exceptional, p7_family
from pp7.gf import classifiable_orders, field_of_order, make_field
from pp7.golden import golden_tables
from pp7.poly import NormalizedSeptic, Polynomial, is_pp_bruteforce


def test_catalog_sizes():
    assert [e.family for e in catalog(make_field(13))] == [MONOMIAL]
    assert [e.family for e in catalog(make_field(11))] == [MONOMIAL, DICKSON7, DICKSON7]
    assert catalog(make_field(29)) == ()
    assert len(catalog(field_of_order(49))) == 9
    assert len(catalog(field_of_order(343))) == 9
    with pytest.raises(ValueError):
        catalog(make_field(2, 3))


def test_dickson_examples():
    ctx = make_field(11)
    assert dickson7(ctx, 0) == Polynomial.monomial(ctx, 7)
    inv7 = 1 / ctx(7)
    want = Polynomial(ctx, [0, inv7 * inv7, 0, 2 * inv7, 0, 1, 0, 1])
    assert dickson7(ctx, -inv7) == want


@pytest.mark.parametrize("q", [11, 13, 25, 27, 49, 125])
def test_dickson_functional_equation(q):
    ctx = field_of_order(q)
    rng = np.random.default_rng(q)
    for _ in range(10):
        a = ctx.element(int(rng.integers(0, q)))
        d = dickson7(ctx, a)
        for y in rng.integers(1, q, 5):
            y = ctx.element(int(y))
            assert d(y + a / y) == y**7 + (a / y) ** 7


@pytest.mark.parametrize("q", [9, 11, 13, 17, 19, 23, 25, 27, 31, 41, 49, 81, 121, 243, 343, 409])
def test_catalog_entries_are_pps_and_distinct(q):
    ctx = field_of_order(q)
    entries = catalog(ctx)
    for e in entries:
        assert is_pp_bruteforce(e.polynomial)
        assert e.polynomial.degree == 7
        assert is_exceptional(e.septic) is e
    for e1, e2 in itertools.combinations(entries, 2):
        assert linearly_related(e1.septic, e2.septic) is None


def test_monomial_pp_iff_q_not_1_mod_7():
    for q in classifiable_orders()[:30]:
        ctx = field_of_order(q)
        assert is_pp_bruteforce(Polynomial.monomial(ctx, 7)) == (q % 7 != 1)


def test_dickson_catalog_complete_over_all_parameters():
    # every a with D_7(x, a) a PP lands in one of the listed classes
    for q in (11, 17, 19, 23, 25, 27, 37, 41, 43):
        ctx = field_of_order(q)
        known = {canonical(e.septic).key for e in catalog(ctx)}
        for v in range(q):
            f = dickson7(ctx, ctx.element(v))
            if is_pp_bruteforce(f):
                assert canonical(normalize(f)).key in known


def test_p7_family_matches_condition():
    ctx = field_of_order(49)
    for s in (1, 2, 3):
        for v in range(1, 49):
            a = ctx.element(v)
            f = p7_family(ctx, a, s)
            admissible = a ** (s * 48 // 6) != 1
            assert is_pp_bruteforce(f) == admissible
    assert {e.s for e in catalog(ctx) if e.family == P7_LINEARIZED} == {1, 2, 3}


@pytest.mark.parametrize("q", [49, 343])
def test_p7_catalog_matches_reference(q):
    ctx = field_of_order(q)
    _, exc = golden_tables()[q].resolve(ctx)
    assert {canonical(e.septic).key for e in catalog(ctx)} == exc


def test_is_exceptional_examples():
    f27 = field_of_order(27)
    s = NormalizedSeptic.of(f27, 0, 0, f27(-1).value, 0, 1)
    assert is_pp_bruteforce(s.polynomial())
    assert is_exceptional(s) is None
    f25 = field_of_order(25)
    e = f25.generator
    assert is_exceptional(NormalizedSeptic(e, f25.zero, e**2, f25.zero, f25.zero)) is None
    f11 = make_field(11)
    entry = is_exceptional(normalize(dickson7(f11, -1 / f11(7))))
    assert entry is not None and entry.family == DICKSON7
    # any linear image of a catalog member is recognized
    rng = np.random.default_rng(0)
    t = f11.element(int(rng.integers(1, 11)))
    s = normalize(dickson7(f11, -f11.generator / 7))
    scaled = NormalizedSeptic(*(s.coefficient(i) * t ** (7 - i) for i in (5, 4, 3, 2, 1)))
    assert is_exceptional(scaled).family == DICKSON7
