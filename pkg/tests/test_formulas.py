import math
from fractions import Fraction

import pytest

from cubicirr.corpus import random_cubics, random_four_ram
from cubicirr.counting import count_brute, count_inversion
from cubicirr.errors import ValidationError
from cubicirr.field import field_new, field_of_order
from cubicirr.formulas import (
    BOUND,
    EMPTY,
    EXACT,
    dispatch,
    f_char3_32,
    f_char3_lin,
    f_genus_one_bound,
    f_three_ram,
    f_two_ram,
    f_x3,
)
from cubicirr.ratexpr import canonical_forms, parse_ratexpr


def R(F, text):
    return parse_ratexpr(text, F)


def test_f_x3():
    assert f_x3(2, 7).value == 14
    assert f_x3(2, 5).value == 8
    assert f_x3(3, 4).value == 14
    r = f_x3(3, 5)
    assert r.kind == EMPTY and r.value == 0
    r = f_x3(2, 9)
    assert r.value == 0 and r.reason == "inseparable"


def test_f_two_ram():
    assert f_two_ram(2, 5).value == 6
    assert f_two_ram(3, 7).value == 0 and f_two_ram(3, 7).kind == EMPTY
    r = f_two_ram(2, 2)
    assert r.value == 0 and r.kind == EXACT


def test_f_three_ram():
    assert f_three_ram(2, 5).value == 3
    assert f_three_ram(2, 2).value == 0
    assert f_three_ram(2, 7).value == 7


def test_char3_evaluators():
    assert f_char3_32(2, 3).value == 1
    assert f_char3_lin(2, 3, True).value == 2
    assert f_char3_lin(2, 3, False).value == 3
    assert f_char3_lin(3, 3, False).kind == EMPTY
    with pytest.raises(ValidationError):
        f_char3_32(2, 5)


@pytest.mark.parametrize("fn", [f_x3, f_two_ram, f_three_ram])
def test_n_must_exceed_one(fn):
    with pytest.raises(ValidationError):
        fn(1, 7)


def test_dispatch_examples():
    assert dispatch(R(field_new(7), "x^3"), 2).value == 14
    F5 = field_new(5)
    a = dispatch(R(F5, "x^3-3*x"), 2)
    b = dispatch(R(F5, "x^3-6*x"), 2)
    assert a.value == b.value == 3
    assert dispatch(R(field_new(3), "x^3+x^2"), 4).value == 6
    r = dispatch(R(field_new(3), "x^3"), 2)
    assert r.value == 0 and r.reason == "inseparable"


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_dispatch_matches_brute_on_canonical_forms(q):
    F = field_of_order(q)
    for cf in canonical_forms(F):
        for n in (2, 3, 4):
            if q**n > 5000:
                continue
            fr = dispatch(cf.expr, n)
            got = count_inversion(cf.expr, n).value
            if fr.kind == BOUND:
                assert fr.contains(got)
            else:
                assert fr.value == got == count_brute(cf.expr, n).value


@pytest.mark.parametrize("q", [3, 5, 7])
def test_three_ram_count_does_not_depend_on_representative(q):
    F = field_of_order(q)
    forms = [cf.expr for cf in canonical_forms(F) if cf.kind.value.startswith("ThreeRam")]
    for n in (2, 3, 4):
        assert len({dispatch(e, n).value for e in forms}) <= 1


def test_genus_one_bound_shape():
    b = f_genus_one_bound(2, 5, 2)
    assert b.kind == BOUND
    assert b.center == Fraction(25 - 5, 6)
    assert math.isclose(b.radius, (2 * 5 + 4 + 2 * math.sqrt(5) + 4) / 6)
    with pytest.raises(ValidationError):
        f_genus_one_bound(2, 5, 3)


def test_genus_one_bound_examples():
    F2 = field_new(2)
    x = R(F2, "x^3+1 / x")
    fr = dispatch(x, 4)
    assert fr.kind == BOUND and fr.contains(count_inversion(x, 4).value)
    F4 = field_new(2, 2)
    vi = next(cf.expr for cf in canonical_forms(F4) if cf.kind.value == "C2_vi")
    fr = dispatch(vi, 2)
    assert fr.radius == f_genus_one_bound(2, 4, 6).radius
    assert fr.contains(count_inversion(vi, 2).value)


@pytest.mark.parametrize("q", [5, 7])
def test_four_ram_counts_lie_in_envelope(q):
    for Rx in random_four_ram(field_of_order(q), 6, seed=11):
        for n in (2, 3):
            assert dispatch(Rx, n).contains(count_inversion(Rx, n).value)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_dispatch_matches_brute_on_random_cubics(q):
    for Rx in random_cubics(field_of_order(q), 8, seed=21):
        for n in (2, 3):
            fr = dispatch(Rx, n)
            assert fr.contains(count_brute(Rx, n).value)
