"""Counts of irreducible transformation shift registers of order three.

TSRI(m, 3, q) is |GL_m(F_q)|/(q^m - 1) times the sum over (a, b) in F_q^2 of
|I(x^3 + a x^2 + b x, 1, m, q)|. ``tsr_count_sum`` evaluates that sum with the
counting module; ``tsr_count_formula`` uses the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import I_func, count, divisors, exact_div, mobius_mu, n3
from .errors import InvariantError, ValidationError
from .field import check_limit, field_of_order, legendre3
from .poly import Poly
from .ratexpr import RatExpr


@dataclass(frozen=True)
class TsrCount:
    m: int
    q: int
    value: int
    method: str


def gl_order(m: int, q: int) -> int:
    if m < 1:
        raise ValidationError("m must be >= 1")
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out


def tsr_normalize(h: Poly) -> Poly:
    """x^3 h(1/x) for h with deg h < 3 and h(0) = 1."""
    if h.deg >= 3 or h.deg < 0:
        raise ValidationError("h must have degree < 3")
    if h.coeff(0) != 1:
        raise ValidationError("h must satisfy h(0) = 1")
    cs = [h.coeff(i) for i in range(3)]
    return Poly(h.field, [0] + cs[::-1])


def _check(m: int, q: int) -> None:
    if m <= 1:
        raise ValidationError("m must be > 1")
    field_of_order(q)  # validates q


def tsr_count_sum(m: int, q: int, method: str = "brute") -> TsrCount:
    """Sum of |I(x^3 + a x^2 + b x, 1, m, q)| over all (a, b), scaled."""
    _check(m, q)
    F = field_of_order(q)
    check_limit(q**m, f"F_{q}^{m}")
    one = Poly(F, [1])
    total = 0
    for a in F.elements():
        for b in F.elements():
            g = tsr_normalize(Poly(F, [1, a, b]))
            total += count(RatExpr(g, one), m, method).value
    return TsrCount(m, q, exact_div(gl_order(m, q) * total, q**m - 1, "TSR prefactor"), "sum")


def _pleasant(m: int, q: int) -> int:
    m3 = n3(m)
    arg = Fraction(m, m3)
    inner = Fraction(q * (q + 1), 3 * m3) * (I_func(arg, q**m3) - I_func(arg, 1))
    return exact_div(gl_order(m, q) * inner, q**m - 1, "pleasant form")


def tsr_count_formula(m: int, q: int) -> TsrCount:
    _check(m, q)
    ds = [d for d in divisors(m) if d % 3]
    gl = gl_order(m, q)
    if q % 3:
        eps = legendre3(q)
        s = sum(mobius_mu(d) * (q + eps ** (m // d)) * (q ** (m // d) - eps ** (m // d)) for d in ds)
        value = exact_div(q * gl * s, 3 * m * (q**m - 1), "TSR formula")
        if eps == 1 and _pleasant(m, q) != value:
            raise InvariantError(f"pleasant form disagrees at m={m}, q={q}")
    else:
        s = sum(Fraction(mobius_mu(d) * (2 * q + 3 + (-1) ** (m // d)) * q ** (m // d), 2) for d in ds)
        value = exact_div((q - 1) * gl * s, 3 * m * (q**m - 1), "TSR formula")
    return TsrCount(m, q, value, "formula")
