import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cubicirr.corpus import random_cubic, random_mobius
from cubicirr.errors import SearchBudgetError, ValidationError
from cubicirr.field import field_new, field_of_order
from cubicirr.poly import Poly, monic_polys, parse_poly
from cubicirr.ratexpr import (
    INF,
    CanonicalClass,
    Mobius,
    canonical_forms,
    classify,
    equivalent,
    is_normalized,
    normalize_cubic,
    parse_ratexpr,
    post_compose,
    pre_compose,
    ramification_data,
    transform,
)

C = CanonicalClass


def R(F, text):
    return parse_ratexpr(text, F)


def test_construction():
    F5 = field_new(5)
    assert R(F5, "x^3").r == 3
    assert R(F5, "x^3+x / 3*x^2+2").r == 3
    with pytest.raises(ValidationError, match="coprime"):
        R(F5, "x^2 / x")
    with pytest.raises(ValidationError):
        R(F5, "x / 0")
    with pytest.raises(ValidationError):
        R(F5, "3 / 1")


def test_transform_examples():
    F2 = field_new(2)
    Rx = R(F2, "x^3+x^2")
    assert transform(parse_poly("x", F2), Rx) == Rx.g
    assert transform(parse_poly("x^2+x+1", F2), Rx) == parse_poly("x^6+x^4+x^3+x^2+1", F2)
    F5 = field_new(5)
    fr = transform(parse_poly("x-1", F5), R(F5, "x^3+1 / x^3"))
    assert fr.deg == 0 and fr.c == (1,)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_transform_matches_oracle_and_is_multiplicative(q):
    F = field_of_order(q)
    T = oracles.TinyField(F.p, F.k)
    rng = random.Random(q)
    for _ in range(5):
        Rx = random_cubic(F, rng)
        u = Poly(F, [rng.randrange(q) for _ in range(3)] + [1])
        v = Poly(F, [rng.randrange(q) for _ in range(2)] + [1])
        got = transform(u, Rx)
        assert list(got.c) == oracles.cubic_transform(T, list(u.c), list(Rx.g.c), list(Rx.h.c))
        assert transform(u * v, Rx) == got * transform(v, Rx)


def test_composition_examples():
    F2 = field_new(2)
    x3 = R(F2, "x^3")
    assert pre_compose(x3, Mobius.identity(F2)) == x3
    inv = Mobius(F2, 0, 1, 1, 0)
    p = post_compose(inv, x3)
    assert p.g == Poly(F2, [1]) and p.h == x3.g
    assert pre_compose(x3, Mobius(F2, 1, 1, 0, 1)) == R(F2, "x^3+x^2+x+1")


def test_mobius_rejects_singular():
    with pytest.raises(ValidationError):
        Mobius(field_new(5), 1, 2, 2, 4)


def test_mobius_on_projective_line():
    F = field_new(5)
    M = Mobius(F, 0, 1, 1, 0)
    assert M(0) is INF and M(INF).code == 0
    N = Mobius(F, 2, 1, 1, 4)
    for i in range(6):
        assert (N @ N.inverse()).index_apply(i) == i


def test_normalize_examples():
    F5 = field_new(5)
    x3 = R(F5, "x^3")
    Rn, B = normalize_cubic(x3)
    assert Rn == x3 and B == Mobius.identity(F5)
    Rn, B = normalize_cubic(R(F5, "x^3+1 / x^3"))
    assert is_normalized(Rn)
    F2 = field_new(2)
    c2 = R(F2, "x^3+x+1 / x^2+x")
    assert normalize_cubic(c2)[0] == c2


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_normalize_invariants(q):
    F = field_of_order(q)
    rng = random.Random(100 + q)
    for _ in range(15):
        Rx = random_cubic(F, rng)
        Rn, B = normalize_cubic(Rx)
        assert is_normalized(Rn)
        assert post_compose(B, Rx).same_function(Rn)
        w = equivalent(Rx, Rn)
        assert w is not None
        A, B2 = w
        assert post_compose(B2, pre_compose(Rx, A)).same_function(Rn)


def test_ramification_examples():
    F5 = field_new(5)
    d = ramification_data(R(F5, "x^3"))
    assert d.finite == 1 and d.infinity and d.total == 2
    assert ramification_data(R(F5, "x^3-3*x")).total == 3
    assert ramification_data(R(field_new(3), "x^3")).inseparable


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_ramification_bounds(q):
    F = field_of_order(q)
    rng = random.Random(200 + q)
    for _ in range(20):
        d = ramification_data(random_cubic(F, rng))
        if d.inseparable:
            assert F.p == 3
            continue
        assert 1 <= d.total <= (3 if F.p == 2 else 4)


def test_equivalence_examples():
    F = field_new(7)
    x3 = R(F, "x^3")
    A, B = equivalent(x3, x3)
    assert post_compose(B, pre_compose(x3, A)).same_function(x3)
    assert equivalent(x3, R(F, "x^3-3*x")) is None
    F2 = field_new(2)
    c = R(F2, "x^3+1 / x")
    shifted = post_compose(Mobius(F2, 1, 1, 0, 1), c)
    A, B = equivalent(c, shifted)
    assert post_compose(B, pre_compose(c, A)).same_function(shifted)
    with pytest.raises(SearchBudgetError):
        equivalent(R(field_new(17), "x^3"), R(field_new(17), "x^3"))


def test_classify_examples():
    assert classify(R(field_new(3), "x^3+x^2")).kind is C.C3_32
    assert classify(R(field_new(2), "x^3+x+1 / x^2+x")).kind is C.C2_II
    assert classify(R(field_new(7), "x^3-3*x")).kind is C.THREE_RAM_SQUARE
    assert classify(R(field_new(3), "x^3")).kind is C.C3_INSEPARABLE
    assert classify(R(field_new(5), "x^3+2*x / x^2+1")).kind is C.FOUR_RAMIFICATION


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_canonical_forms_classify_to_themselves(q):
    F = field_of_order(q)
    forms = canonical_forms(F)
    for cf in forms:
        got = classify(cf.expr)
        assert (got.kind, got.param) == (cf.kind, cf.param)
    # forms are pairwise inequivalent
    for i, a in enumerate(forms):
        for b in forms[i + 1:]:
            assert equivalent(a.expr, b.expr) is None


def test_char2_case_iv_has_three_forms_over_square_fields():
    kinds = [cf.kind for cf in canonical_forms(field_new(2, 2))]
    assert kinds.count(C.C2_IV) == 3
    assert [cf.kind for cf in canonical_forms(field_new(2, 3))].count(C.C2_IV) == 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(0, 10**6))
def test_classification_is_invariant(q, seed):
    F = field_of_order(q)
    rng = random.Random(seed)
    Rx = random_cubic(F, rng)
    S = post_compose(random_mobius(F, rng), pre_compose(Rx, random_mobius(F, rng)))
    a, b = classify(Rx), classify(S)
    assert (a.kind, a.param) == (b.kind, b.param)
    if a.A is not None:
        assert post_compose(a.B, pre_compose(Rx, a.A)).same_function(a.canonical)


def test_parse_ratexpr_rejects_extra_slash():
    with pytest.raises(ValidationError):
        R(field_new(5), "x / x^2 / 1")


def test_monic_polys_count():
    assert sum(1 for _ in monic_polys(field_new(3), 2)) == 9
