"""Three independent counts of |I(g,h,n,q)|, the monic irreducible f of
degree n over F_q whose transform f_R is irreducible.

* ``count_brute`` transforms every irreducible f and tests f_R directly.
* ``count_capelli`` counts beta of exact degree n whose fiber g - beta*h has
  no root in F_{q^n}, then divides by n.
* ``count_inversion`` tallies fiber patterns over every F_{q^(n/d)} and
  recombines them by Möbius inversion over divisors prime to 3.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import poly as P
from .curves import RESOLVENT, count_points
from .errors import InvariantError, ValidationError
from .field import check_limit, extend, prime_factors
from .poly import CubicPattern, enumerate_monic_irreducible, pattern_from_roots
from .ratexpr import RatExpr, _transform_basis, is_normalized, normalize_cubic

# ---------------------------------------------------------------------------
# arithmetic helpers


def mobius_mu(d: int) -> int:
    if d < 1:
        raise ValidationError("mobius_mu needs a positive integer")
    result = 1
    m = d
    f = 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            result = -result
        f += 1
    if m > 1:
        result = -result
    return result


def n3(n: int) -> int:
    """Largest power of 3 dividing n."""
    if n < 1:
        raise ValidationError("n3 needs a positive integer")
    r = 1
    while n % 3 == 0:
        n //= 3
        r *= 3
    return r


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def exact_div(num, den, what: str = "division"):
    """num/den, which must be an integer; raises InvariantError otherwise."""
    v = Fraction(num) / Fraction(den)
    if v.denominator != 1:
        raise InvariantError(f"{what}: {num}/{den} is not an integer")
    return int(v)


def I_func(n, q: int) -> int:
    """(1/n) sum_{d|n} mu(d) q^(n/d), or 0 when n is not a positive integer.

    q is any integer (the formula is a polynomial in q).
    """
    n = Fraction(n)
    if n.denominator != 1 or n <= 0:
        return 0
    n = int(n)
    total = sum(mobius_mu(d) * q ** (n // d) for d in divisors(n))
    return exact_div(total, n, f"I({n},{q})")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Breakdown:
    n: int
    A: int
    B: int
    C: int
    D: int
    N: int
    ubar: int
    three: int = 0  # fibers with three distinct roots

    def as_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C, "D": self.D, "N": self.N, "ubar": self.ubar}


@dataclass(frozen=True)
class CountResult:
    value: int
    method: str
    detail: Sequence[Breakdown] = field(default_factory=tuple)


def _require_n(n: int) -> None:
    if n <= 1:
        raise ValidationError("n must be > 1 (degree-one polynomials are excluded)")


def _normalized(R: RatExpr) -> RatExpr:
    if R.r != 3:
        raise ValidationError("counting is defined for cubic expressions")
    return R if is_normalized(R) else normalize_cubic(R)[0]


def _fibers(R: RatExpr, m: int):
    """Roots in F_{q^m} of every fiber g - beta*h, by evaluating R once per point."""
    F = R.field
    ext, emb = extend(F, m)
    g = R.g.map_coeffs(ext, emb.table).c
    h = R.h.map_coeffs(ext, emb.table).c
    ev, div = P._eval, ext.div
    roots: dict[int, list[int]] = {}
    poles = 0
    for z in ext.elements():
        hv = ev(ext, h, z)
        if hv == 0:
            poles += 1
            continue
        roots.setdefault(div(ev(ext, g, z), hv), []).append(z)
    return ext, g, h, roots, poles


@functools.lru_cache(maxsize=256)
def breakdown(R: RatExpr, n: int) -> Breakdown:
    """Fiber statistics of a normalized cubic over F_{q^n}."""
    if not is_normalized(R):
        raise ValidationError("breakdown needs a normalized cubic (deg h < 3, g monic)")
    ext, g, h, roots, A = _fibers(R, n)
    Q = ext.q
    B = C = D = three = 0
    sub, mul = ext.sub, ext.mul
    gpad = tuple(g) + (0,) * (4 - len(g))
    hpad = tuple(h) + (0,) * (4 - len(h))
    for beta, rs in roots.items():
        r = len(rs)
        if r == 3:
            three += 1
        elif r == 2:
            B += 1
        else:
            fiber = [sub(gpad[i], mul(beta, hpad[i])) for i in range(4)]
            pat = pattern_from_roots(ext, fiber, rs)
            if pat is CubicPattern.TRIPLE_ROOT:
                C += 1
            else:
                D += 1
    N = count_points(R, n, RESOLVENT).N
    u1 = exact_div(2 * Q + A - B - 2 * C - 2 * D, 3, "ubar from fiber patterns")
    u2 = exact_div(N + A - C, 3, "ubar from resolvent points")
    if u1 != u2:
        raise InvariantError(f"ubar mismatch over F_{Q}: {u1} != {u2}")
    if N != 2 * Q - B - C - 2 * D:
        raise InvariantError(f"resolvent count {N} disagrees with fiber patterns")
    return Breakdown(n, A, B, C, D, N, u1, three)


def count_brute(R: RatExpr, n: int) -> CountResult:
    """Transform every monic irreducible f of degree n and test f_R."""
    _require_n(n)
    F = R.field
    check_limit(F.q**n, f"irreducibles of degree {n} over {F}")
    basis = _transform_basis(R, n)
    count = 0
    for f in enumerate_monic_irreducible(F, n):
        fr = basis.apply(f.c)
        if len(fr) > 1 and P._is_irreducible(F, fr):
            count += 1
    return CountResult(count, "brute")


def count_capelli(R: RatExpr, n: int) -> CountResult:
    """|U(n,q)|/n with U the beta of exact degree n and rootless fiber."""
    _require_n(n)
    Rn = _normalized(R)
    F = Rn.field
    ext, _, _, roots, _ = _fibers(Rn, n)
    q = F.q
    frob = [q ** (n // ell) for ell in prime_factors(n)]
    pw = ext.pow
    u = 0
    for beta in ext.elements():
        if beta in roots:
            continue
        if all(pw(beta, e) != beta for e in frob):
            u += 1
    return CountResult(exact_div(u, n, "|U(n,q)|/n"), "capelli")


def count_inversion(R: RatExpr, n: int) -> CountResult:
    """(1/n) sum_{d|n, 3 !| d} mu(d) ubar(n/d)."""
    _require_n(n)
    Rn = _normalized(R)
    check_limit(Rn.field.q**n, f"extension F_{Rn.field.q}^{n}")
    total = 0
    details = []
    for d in divisors(n):
        if d % 3 == 0:
            continue
        mu = mobius_mu(d)
        if mu == 0:
            continue
        bd = breakdown(Rn, n // d)
        details.append(bd)
        total += mu * bd.ubar
    return CountResult(exact_div(total, n, "Möbius inversion"), "inversion", tuple(details))


METHODS = {"brute": count_brute, "capelli": count_capelli, "inversion": count_inversion}


def count(R: RatExpr, n: int, method: str = "inversion") -> CountResult:
    try:
        fn = METHODS[method]
    except KeyError:
        raise ValidationError(f"unknown method {method!r}") from None
    return fn(R, n)
