import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cubicirr.counting import I_func
from cubicirr.errors import ValidationError
from cubicirr.field import extend, field_new, field_of_order
from cubicirr.poly import (
    CubicPattern,
    Poly,
    count_roots_in,
    cubic_discriminant,
    cubic_pattern,
    enumerate_monic_irreducible,
    format_poly,
    gcd,
    is_irreducible,
    monic_polys,
    parse_poly,
    quadratic_resolvent,
)

F2 = field_new(2)
F3 = field_new(3)
F5 = field_new(5)


def P(F, text):
    return parse_poly(text, F)


def test_basic_ops():
    assert P(F3, "x^3").derivative().deg == -1
    assert gcd(P(F5, "x^2-1"), P(F5, "x-1")) == P(F5, "x-1")
    assert P(F2, "x^3+x^2")(1) == 0
    f, g = P(F5, "x^3+2*x+1"), P(F5, "3*x^2+4")
    qt, r = divmod(f, g)
    assert qt * g + r == f and r.deg < g.deg
    assert (f * g) // g == f
    assert (f - f).deg == -1
    assert P(F5, "2*x+1").monic() == P(F5, "x+3")


def test_parse_and_format():
    f = P(F5, "x^3 - 2*x + 1")
    assert f.c == (1, 3, 0, 1)
    assert format_poly(f) == "x^3+3*x+1"
    assert P(F5, "1,0,3,1") == f
    assert P(F5, "3") == Poly(F5, [3])
    F4 = field_new(2, 2)
    assert P(F4, "x^2+2*x+3").c == (3, 2, 1)


@pytest.mark.parametrize("bad", ["", "x^", "x^2,1", "3*", "x**2", "1,a"])
def test_parse_rejects(bad):
    with pytest.raises(ValidationError):
        P(F5, bad)


def test_parse_rejects_out_of_range_codes():
    with pytest.raises(ValidationError):
        P(field_new(2, 2), "5*x")


def test_named_irreducibility_cases():
    assert is_irreducible(P(F2, "x^2+x+1"))
    assert not is_irreducible(P(F2, "x^6+x^4+x^3+x^2+1"))
    assert is_irreducible(P(F2, "x^6+x^3+1"))
    with pytest.raises(ValidationError):
        is_irreducible(P(F2, "1"))


@pytest.mark.parametrize("q,maxdeg", [(2, 6), (3, 6), (4, 4), (5, 3)])
def test_irreducibility_agrees_with_trial_division(q, maxdeg):
    F = field_of_order(q)
    T = oracles.TinyField(F.p, F.k)
    for d in range(1, maxdeg + 1):
        for f in monic_polys(F, d):
            assert is_irreducible(f) == oracles.trial_irreducible(T, list(f.c)), f


def test_irreducible_enumeration_small():
    assert [f.c for f in enumerate_monic_irreducible(F2, 2)] == [(1, 1, 1)]
    assert len(list(enumerate_monic_irreducible(F2, 3))) == 2
    assert len(list(enumerate_monic_irreducible(F5, 2))) == 10


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_irreducible_count_matches_necklace_formula(q, n):
    F = field_of_order(q)
    assert len(list(enumerate_monic_irreducible(F, n))) == I_func(n, q)
    if q**n <= 256:
        assert oracles.irreducible_count(F.p, F.k, n) == I_func(n, q)


def test_enumeration_is_ascending_by_code():
    F = field_new(3)
    seen = [sum(c * 3**i for i, c in enumerate(f.c)) for f in enumerate_monic_irreducible(F, 3)]
    assert seen == sorted(seen)


def _oracle_pattern(T, f):
    roots = [z for z in T.elements() if oracles.peval(T, f, z) == 0]
    if not roots:
        return CubicPattern.IRREDUCIBLE_CUBIC
    if len(roots) == 3:
        return CubicPattern.THREE_DISTINCT_ROOTS
    if len(roots) == 2:
        return CubicPattern.DOUBLE_PLUS_SIMPLE
    z = roots[0]
    lin = [T.neg(z), 1]
    cube = oracles.pmul(T, lin, oracles.pmul(T, lin, lin))
    return CubicPattern.TRIPLE_ROOT if cube == list(f) else CubicPattern.QUADRATIC_TIMES_LINEAR


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_cubic_pattern_agrees_with_root_scan(q):
    F = field_of_order(q)
    T = oracles.TinyField(F.p, F.k)
    for f in monic_polys(F, 3):
        assert cubic_pattern(f) == _oracle_pattern(T, f.c)


def test_cubic_pattern_examples():
    assert cubic_pattern(P(F5, "x^3")) is CubicPattern.TRIPLE_ROOT
    # x(x-1)(x-2) = x^3 - 3x^2 + 2x
    assert cubic_pattern(Poly(F5, [0, 2, 2, 1])) is CubicPattern.THREE_DISTINCT_ROOTS
    assert cubic_pattern(P(F2, "x^3+x^2+x")) is CubicPattern.QUADRATIC_TIMES_LINEAR
    # inseparable triple root
    assert cubic_pattern(P(F3, "x^3+1")) is CubicPattern.TRIPLE_ROOT


def _beta_ring(F):
    """x as a polynomial standing in for the variable beta."""
    return Poly.x(F)


def test_discriminant_examples():
    F7 = field_new(7)
    b = _beta_ring(F7)
    tau = 1
    d = cubic_discriminant(Poly(F7, []), Poly(F7, [F7.neg(tau)]), -b)
    assert d == 4 * Poly(F7, [tau]) - 27 * b * b
    assert cubic_discriminant(Poly(F7, []), Poly(F7, []), -b) == -27 * b * b
    b3 = _beta_ring(F3)
    assert cubic_discriminant(Poly(F3, [1]), Poly(F3, []), -b3) == b3


def test_resolvent_examples():
    F = field_new(7)
    b = _beta_ring(F)
    s, t = quadratic_resolvent(Poly(F, []), Poly(F, []), -b)
    assert s == 3 * b and t == 9 * b * b
    b2 = _beta_ring(F2)
    s, t = quadratic_resolvent(Poly(F2, [1]), Poly(F2, []), b2)
    assert s == b2 and t == b2 * b2 + b2
    fe = F.elem
    assert quadratic_resolvent(fe(0), fe(0), fe(0)) == (fe(0), fe(0))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([3, 5, 7, 9, 25]), st.data())
def test_resolvent_discriminant_consistency(q, data):
    F = field_of_order(q)
    a, b, c = (F.elem(data.draw(st.integers(0, q - 1))) for _ in range(3))
    s, t = quadratic_resolvent(a, b, c)
    assert s * s - 4 * t == cubic_discriminant(a, b, c)
    # and as polynomials in beta
    beta = _beta_ring(F)
    A, B, C = Poly(F, [a]), Poly(F, [b]) + beta, Poly(F, [c]) - beta
    s, t = quadratic_resolvent(A, B, C)
    assert s * s - 4 * t == cubic_discriminant(A, B, C)


def test_count_roots_in_examples():
    E, emb = extend(F5, 1)
    # 3x^2 + 2 = 0 means x^2 = 1 over F_5
    assert count_roots_in(P(F5, "3*x^2+2"), E, emb) == 2
    assert oracles.root_count(5, 1, [2, 0, 3]) == 2
    E4, emb4 = extend(F2, 2)
    assert count_roots_in(P(F2, "x^2+x"), E4, emb4) == 2
    for q in (4, 9):
        F = field_of_order(q)
        E, emb = extend(F, 2)
        assert count_roots_in(P(F, "x-1"), E, emb) == 1


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_count_roots_in_matches_scan(q, n):
    F = field_of_order(q)
    E, emb = extend(F, n)
    for f in itertools.islice(monic_polys(F, 3), 40):
        fe = f.map_coeffs(E, emb.table)
        scan = sum(1 for z in E.elements() if fe(z) == 0)
        assert count_roots_in(f, E, emb) == scan


def test_count_roots_in_rejects_wrong_embedding():
    E, emb = extend(F2, 2)
    with pytest.raises(ValidationError):
        count_roots_in(P(F3, "x"), E, emb)
