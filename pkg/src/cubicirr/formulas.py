"""Closed-form counts of |I(g,h,n,q)| for every equivalence class with an
explicit answer, plus a Hasse-Weil envelope for the genus-one classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .counting import I_func, divisors, exact_div, mobius_mu, n3
from .curves import delta_poly
from .errors import ValidationError
from .field import legendre3
from .ratexpr import CanonicalClass as C
from .ratexpr import Classification, RatExpr, classify, is_normalized, normalize_cubic

EXACT = "exact"
BOUND = "bound"
EMPTY = "empty-by-permutation"
# the transform permutes F_{q^n}, so no fiber is irreducible
_PERM = "permutation-empty"


@dataclass(frozen=True)
class FormulaResult:
    kind: str
    tag: str  # which closed form produced the value
    value: int | None = None
    center: Fraction | None = None
    radius: float | None = None
    reason: str | None = None

    def contains(self, count: int) -> bool:
        if self.kind == BOUND:
            return abs(count - self.center) <= self.radius
        return count == self.value


def _check(n: int, q: int) -> None:
    if n <= 1:
        raise ValidationError("n must be > 1")
    if q < 2:
        raise ValidationError("q must be a prime power")


def _exact(tag: str, value: Fraction, empty_reason: str | None = None) -> FormulaResult:
    v = exact_div(value.numerator, value.denominator, tag)
    if v < 0:
        raise ValidationError(f"{tag}: negative count {v}")
    if v == 0 and empty_reason:
        return FormulaResult(EMPTY, tag, 0, reason=empty_reason)
    return FormulaResult(EXACT, tag, v)


def _I(n: Fraction, q: int) -> int:
    return I_func(n, q)


def f_x3(n: int, q: int) -> FormulaResult:
    """Count for x^3; zero in characteristic 3 where f(x^3) is a cube."""
    _check(n, q)
    if q % 3 == 0:
        return FormulaResult(EXACT, "cube", 0, reason="inseparable")
    k = 1 if q % 3 == 1 else 2
    m3 = n3(n)
    arg = Fraction(n, k * m3)
    v = Fraction(2, 3 * k * m3) * (_I(arg, q ** (k * m3)) - _I(arg, 1))
    return _exact("cube", v, _PERM if arg.denominator > 1 else None)


def f_two_ram(n: int, q: int) -> FormulaResult:
    """Count for the two-ramification-point class (also char-2 class ii)."""
    _check(n, q)
    m3 = n3(n)
    if legendre3(q) == 1:
        arg = Fraction(n, 2 * m3)
        v = Fraction(1, 3 * m3) * (_I(arg, q ** (2 * m3)) - _I(arg, 1))
    else:
        arg = Fraction(n, m3)
        v = Fraction(2, 3 * m3) * (_I(arg, q**m3) - _I(arg, -1))
    return _exact("two-ramification", v, _PERM if arg.denominator > 1 else None)


def f_three_ram(n: int, q: int) -> FormulaResult:
    """Count for the three-ramification-point classes (also char-2 class iii)."""
    _check(n, q)
    m3 = n3(n)
    arg = Fraction(n, m3)
    v = Fraction(1, 3 * m3) * (_I(arg, q**m3) - _I(arg, legendre3(q)))
    return _exact("three-ramification", v)


def _require_char3(q: int) -> None:
    while q % 3 == 0:
        q //= 3
    if q != 1:
        raise ValidationError("q must be a power of 3")


def f_char3_32(n: int, q: int) -> FormulaResult:
    """Count for x^3 + x^2 in characteristic 3."""
    _check(n, q)
    _require_char3(q)
    m3 = n3(n)
    return _exact("char3-(3,2)", Fraction(1, 3 * m3) * _I(Fraction(n, m3), q**m3))


def f_char3_lin(n: int, q: int, square: bool) -> FormulaResult:
    """Count for x^3 - tau*x in characteristic 3, split by whether tau is a square."""
    _check(n, q)
    _require_char3(q)
    m3 = n3(n)
    if square:
        return _exact("char3-linear", Fraction(2, 3 * m3) * _I(Fraction(n, m3), q**m3))
    arg = Fraction(n, 2 * m3)
    v = Fraction(1, 3 * m3) * _I(arg, q ** (2 * m3))
    return _exact("char3-linear", v, _PERM if arg.denominator > 1 else None)


def f_genus_one_bound(n: int, q: int, kappa: int) -> FormulaResult:
    """Envelope center +- radius for a genus-one class with Hasse-Weil coefficient kappa."""
    _check(n, q)
    if kappa not in (2, 6):
        raise ValidationError("kappa must be 2 (smooth) or 6 (singular quartic)")
    ds = [d for d in divisors(n) if d % 3]
    center = sum(Fraction(mobius_mu(d) * q ** (n // d), 3) for d in ds) / n
    # A and C are at most 2 each
    radius = sum(kappa * math.sqrt(q ** (n // d)) + 4 for d in ds) / (3 * n)
    return FormulaResult(BOUND, "genus-one", center=center, radius=radius)


def kappa_for(R: RatExpr, cls: Classification) -> int:
    if cls.kind in (C.C2_IV, C.C2_V):
        return 2
    if cls.kind == C.C2_VI:
        return 6
    if cls.kind == C.FOUR_RAMIFICATION:
        Rn = R if is_normalized(R) else normalize_cubic(R)[0]
        return 2 if delta_poly(Rn).deg == 3 else 6
    raise ValidationError(f"{cls.kind.value} is not a genus-one class")


def dispatch(R: RatExpr, n: int, classification: Classification | None = None) -> FormulaResult:
    """Closed-form count (or envelope) for R by routing on its equivalence class."""
    if R.r != 3:
        raise ValidationError("dispatch is defined for cubic expressions")
    cls = classification or classify(R)
    q = R.field.q
    k = cls.kind
    if k in (C.CUBE, C.C2_I):
        return f_x3(n, q)
    if k in (C.TWISTED_CUBE, C.C2_II):
        return f_two_ram(n, q)
    if k in (C.THREE_RAM_SQUARE, C.THREE_RAM_NONSQUARE, C.C2_III):
        return f_three_ram(n, q)
    if k == C.C3_32:
        return f_char3_32(n, q)
    if k in (C.C3_LIN_SQUARE, C.C3_LIN_NONSQUARE):
        return f_char3_lin(n, q, k == C.C3_LIN_SQUARE)
    if k == C.C3_INSEPARABLE:
        _check(n, q)
        return FormulaResult(EXACT, "inseparable", 0, reason="inseparable")
    return f_genus_one_bound(n, q, kappa_for(R, cls))
