"""Point counts on the resolvent and discriminant curves of a normalized cubic.

For R = g/h with deg h < 3 and g monic, ``g - beta*h`` is a monic cubic in x
whose coefficients are linear in beta. Its quadratic resolvent
x^2 + s(beta) x + t(beta) and discriminant Delta(beta) define plane curves;
N counts their affine points over F_{q^n}.
"""

from __future__ import annotations

from dataclasses import dataclass
from . import poly as P
from .errors import ValidationError
from .field import check_limit, extend
from .poly import Poly, cubic_discriminant, quadratic_resolvent
from .ratexpr import CanonicalClass, RatExpr, classify, is_normalized, normalize_cubic, ramification_data

RESOLVENT = "resolvent"
DISCRIMINANT = "discriminant"


@dataclass(frozen=True)
class CurveCount:
    n: int
    N: int
    which: str
    delta_degree: int


def _beta_coefficients(R: RatExpr) -> tuple[Poly, Poly, Poly]:
    if not is_normalized(R):
        raise ValidationError("expression must be normalized (deg h < 3, g monic cubic)")
    F = R.field
    g, h = R.g, R.h
    return tuple(Poly(F, [g.coeff(i), F.neg(h.coeff(i))]) for i in (2, 1, 0))


def delta_poly(R: RatExpr) -> Poly:
    """Delta(beta) = Disc_x(g(x) - beta h(x)), a polynomial in beta."""
    return cubic_discriminant(*_beta_coefficients(R))


def resolvent_pair(R: RatExpr) -> tuple[Poly, Poly]:
    """(s(beta), t(beta)) of the quadratic resolvent of g(x) - beta h(x)."""
    return quadratic_resolvent(*_beta_coefficients(R))


def fiber_counts(R: RatExpr, n: int, which: str = RESOLVENT) -> list[int]:
    """Number of curve points above each beta in F_{q^n}, indexed by code."""
    F = R.field
    if which not in (RESOLVENT, DISCRIMINANT):
        raise ValidationError(f"unknown curve {which!r}")
    if which == DISCRIMINANT and F.p == 2:
        raise ValidationError("the discriminant curve needs odd characteristic")
    check_limit(F.q**n, f"F_{F.q}^{n}")
    ext, emb = extend(F, n)
    table = emb.table
    ev = P._eval
    out = []
    if which == DISCRIMINANT:
        d = delta_poly(R).map_coeffs(ext, table).c
        qc = ext.quad_char
        for beta in ext.elements():
            out.append(1 + qc(ev(ext, d, beta)))
        return out
    s, t = resolvent_pair(R)
    s, t = s.map_coeffs(ext, table).c, t.map_coeffs(ext, table).c
    if F.p == 2:
        mul, div, trace = ext.mul, ext.div, ext.trace
        for beta in ext.elements():
            sv = ev(ext, s, beta)
            if sv == 0:
                out.append(1)
                continue
            tv = ev(ext, t, beta)
            out.append(2 if trace(div(tv, mul(sv, sv))) == 0 else 0)
        return out
    four = ext.from_int(4)
    qc, mul, sub = ext.quad_char, ext.mul, ext.sub
    for beta in ext.elements():
        sv = ev(ext, s, beta)
        tv = ev(ext, t, beta)
        out.append(1 + qc(sub(mul(sv, sv), mul(four, tv))))
    return out


def count_points(R: RatExpr, n: int, which: str = RESOLVENT) -> CurveCount:
    """Affine points over F_{q^n} of x^2 + s x + t = 0 or of y^2 = Delta."""
    counts = fiber_counts(R, n, which)
    return CurveCount(n, sum(counts), which, delta_poly(R).deg)


@dataclass(frozen=True)
class HasseWeil:
    N: int
    qn: int
    kappa: int
    bound: float
    passed: bool


def genus_one_model(R: RatExpr) -> tuple[RatExpr, int]:
    """(model, kappa) for a genus-one case.

    In odd characteristic the model is the normalized R itself and kappa is
    2 when Delta is cubic, 6 when it is quartic. In characteristic 2 the
    affine count depends on which fiber sits over infinity, so the model is
    the canonical representative of class iv, v (kappa 2) or vi (kappa 6).
    Raises ValidationError when R is not a genus-one case.
    """
    F = R.field
    if F.p == 2:
        cls = classify(R)
        if cls.kind in (CanonicalClass.C2_IV, CanonicalClass.C2_V):
            return cls.canonical, 2
        if cls.kind == CanonicalClass.C2_VI:
            return cls.canonical, 6
        raise ValidationError(f"{cls.kind.value} is not a genus-one case")
    ram = ramification_data(R)
    if ram.inseparable or ram.total != 4:
        raise ValidationError("not a genus-one case: fewer than four ramification points")
    Rn = R if is_normalized(R) else normalize_cubic(R)[0]
    return Rn, 2 if delta_poly(Rn).deg == 3 else 6


def genus_one_kappa(R: RatExpr) -> int:
    return genus_one_model(R)[1]


def hasse_weil_check(R: RatExpr, n: int) -> HasseWeil:
    """Count N on the genus-one model of R and test |N - q^n| <= kappa sqrt(q^n)."""
    model, kappa = genus_one_model(R)
    Rn = model if is_normalized(model) else normalize_cubic(model)[0]
    which = RESOLVENT if R.field.p == 2 else DISCRIMINANT
    N = count_points(Rn, n, which).N
    qn = R.field.q**n
    dev = N - qn
    passed = dev * dev <= kappa * kappa * qn
    return HasseWeil(N, qn, kappa, kappa * qn**0.5, passed)
