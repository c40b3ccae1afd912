"""Rational expressions R = g/h, the transformation f -> f_R, the Möbius
action on both sides, and classification of cubic expressions.

Points of the projective line P^1(F_q) are handled in two forms: publicly as
:class:`~cubicirr.field.FieldElem` or :data:`INF`, and internally as indices
0..q-1 (element codes) with q standing for infinity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import poly as P
from .errors import ClassificationError, SearchBudgetError, ValidationError
from .field import FieldElem, FieldSpec, find_noncube, find_nonsquare, find_trace_one
from .poly import Poly, parse_poly

DEFAULT_SEARCH_BUDGET = 13


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "∞"

    def __reduce__(self):
        return "INF"


INF = _Infinity()


class RatExpr:
    """A coprime pair (g, h) with h != 0, read as g/h.

    The pair is kept exactly as given: f_R depends on the representatives,
    not only on the quotient.
    """

    __slots__ = ("g", "h")

    def __init__(self, g: Poly, h: Poly):
        if g.field != h.field:
            raise ValidationError("numerator and denominator over different fields")
        if h.is_zero():
            raise ValidationError("zero denominator")
        if max(g.deg, h.deg) < 1:
            raise ValidationError("rational expression must have degree >= 1")
        if P.gcd(g, h).deg > 0:
            raise ValidationError("numerator and denominator are not coprime")
        self.g = g
        self.h = h

    @property
    def field(self) -> FieldSpec:
        return self.g.field

    @property
    def r(self) -> int:
        return max(self.g.deg, self.h.deg)

    degree = r

    def same_function(self, other: "RatExpr") -> bool:
        """Equal as rational functions, i.e. equal pairs up to a scalar."""
        return self.g * other.h == other.g * self.h

    def __eq__(self, other):
        if not isinstance(other, RatExpr):
            return NotImplemented
        return self.g == other.g and self.h == other.h

    def __hash__(self):
        return hash((self.g, self.h))

    def __str__(self):
        return f"{P.format_poly(self.g)} / {P.format_poly(self.h)}"

    def __repr__(self):
        return f"RatExpr({str(self)!r} over {self.field!r})"

    def value_index(self, i: int) -> int:
        """R at the point with index i (q meaning infinity)."""
        F = self.field
        q = F.q
        g, h = self.g.c, self.h.c
        if i == q:
            dg, dh = len(g) - 1, len(h) - 1
            if dg > dh:
                return q
            if dg < dh:
                return 0
            return F.div(g[-1], h[-1])
        hv = P._eval(F, h, i)
        if hv == 0:
            return q
        return F.div(P._eval(F, g, i), hv)

    def __call__(self, point):
        return _from_index(self.field, self.value_index(_to_index(self.field, point)))


def _to_index(F: FieldSpec, point) -> int:
    if point is INF:
        return F.q
    if isinstance(point, FieldElem):
        if point.field != F:
            raise ValidationError("point over a different field")
        return point.code
    return int(point)


def _from_index(F: FieldSpec, i: int):
    return INF if i == F.q else FieldElem(F, i)


def ratexpr_new(g: Poly, h: Poly) -> RatExpr:
    return RatExpr(g, h)


def parse_ratexpr(text: str, F: FieldSpec) -> RatExpr:
    """Parse ``"g / h"`` (or just ``"g"``, meaning h = 1)."""
    parts = text.split("/")
    if len(parts) > 2:
        raise ValidationError(f"too many '/' in {text!r}")
    g = parse_poly(parts[0], F)
    h = parse_poly(parts[1], F) if len(parts) == 2 else Poly.const(F, 1)
    return RatExpr(g, h)


def transform(f: Poly, R: RatExpr) -> Poly:
    """f_R = h^deg(f) * f(g/h) = sum_i f_i g^i h^(deg f - i)."""
    if f.is_zero():
        raise ValidationError("transform of the zero polynomial")
    if f.field != R.field:
        raise ValidationError("polynomial and expression over different fields")
    return Poly._raw(f.field, tuple(_transform_basis(R, f.deg).apply(f.c)))


class _transform_basis:
    """Precomputed g^i h^(n-i) for fast repeated transforms of degree-n inputs."""

    def __init__(self, R: RatExpr, n: int):
        F = R.field
        self.F = F
        gp = [[1]]
        hp = [[1]]
        for _ in range(n):
            gp.append(P._mul(F, gp[-1], R.g.c))
            hp.append(P._mul(F, hp[-1], R.h.c))
        self.basis = [P._mul(F, gp[i], hp[n - i]) for i in range(n + 1)]
        self.n = n

    def apply(self, fc: Sequence[int]) -> list[int]:
        F = self.F
        if F.kind == "prime":
            p = F.p
            size = max(len(b) for b in self.basis)
            acc = [0] * size
            for fi, b in zip(fc, self.basis):
                if fi:
                    for j, x in enumerate(b):
                        acc[j] += fi * x
            return P._strip([x % p for x in acc])
        acc: list[int] = []
        for fi, b in zip(fc, self.basis):
            if fi:
                acc = P._add(F, acc, P._scale(F, b, fi))
        return acc


# ---------------------------------------------------------------------------
# Möbius transformations


@dataclass(frozen=True)
class Mobius:
    """x -> (a x + b)/(c x + d), a matrix taken up to scalar; entries are codes."""

    field: FieldSpec
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        F = self.field
        if F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c)) == 0:
            raise ValidationError("singular Möbius matrix")

    @classmethod
    def identity(cls, F: FieldSpec) -> "Mobius":
        return cls(F, 1, 0, 0, 1)

    @classmethod
    def from_elems(cls, a, b, c, d) -> "Mobius":
        F = a.field
        return cls(F, a.code, b.code, c.code, d.code)

    def index_apply(self, i: int) -> int:
        F = self.field
        q = F.q
        if i == q:
            return q if self.c == 0 else F.div(self.a, self.c)
        den = F.add(F.mul(self.c, i), self.d)
        num = F.add(F.mul(self.a, i), self.b)
        if den == 0:
            return q
        return F.div(num, den)

    def __call__(self, point):
        return _from_index(self.field, self.index_apply(_to_index(self.field, point)))

    def __matmul__(self, other: "Mobius") -> "Mobius":
        """Composition self∘other as the matrix product."""
        F = self.field
        add, mul = F.add, F.mul
        return Mobius(
            F,
            add(mul(self.a, other.a), mul(self.b, other.c)),
            add(mul(self.a, other.b), mul(self.b, other.d)),
            add(mul(self.c, other.a), mul(self.d, other.c)),
            add(mul(self.c, other.b), mul(self.d, other.d)),
        )

    def inverse(self) -> "Mobius":
        F = self.field
        return Mobius(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def as_ratexpr(self) -> RatExpr:
        F = self.field
        return RatExpr(Poly(F, [self.b, self.a]), Poly(F, [self.d, self.c]))

    def __str__(self):
        return str(self.as_ratexpr())


def mobius_apply(M: Mobius, e):
    return M(e)


def pre_compose(R: RatExpr, A: Mobius) -> RatExpr:
    """R∘A, homogenized at degree r so the degree is preserved."""
    F = R.field
    r = R.r
    num = Poly(F, [A.b, A.a])
    den = Poly(F, [A.d, A.c])
    nps = [[1]]
    dps = [[1]]
    for _ in range(r):
        nps.append(P._mul(F, nps[-1], num.c))
        dps.append(P._mul(F, dps[-1], den.c))
    g: list[int] = []
    h: list[int] = []
    for i in range(r + 1):
        term = P._mul(F, nps[i], dps[r - i])
        gi, hi = R.g.coeff(i), R.h.coeff(i)
        if gi:
            g = P._add(F, g, P._scale(F, term, gi))
        if hi:
            h = P._add(F, h, P._scale(F, term, hi))
    return _coprime_pair(F, g, h)


def post_compose(B: Mobius, R: RatExpr) -> RatExpr:
    """B∘R = (a g + b h)/(c g + d h)."""
    F = R.field
    g, h = R.g.c, R.h.c
    ng = P._add(F, P._scale(F, g, B.a), P._scale(F, h, B.b))
    nh = P._add(F, P._scale(F, g, B.c), P._scale(F, h, B.d))
    return _coprime_pair(F, ng, nh)


def _coprime_pair(F: FieldSpec, g: list[int], h: list[int]) -> RatExpr:
    d = P._gcd(F, g, h)
    if len(d) > 1:
        g = P._divmod(F, g, d)[0]
        h = P._divmod(F, h, d)[0]
    return RatExpr(Poly._raw(F, tuple(g)), Poly._raw(F, tuple(h)))


def normalize_cubic(R: RatExpr) -> tuple[RatExpr, Mobius]:
    """(B∘R, B) with deg h' < 3 and g' monic."""
    if R.r != 3:
        raise ValidationError("normalize_cubic needs a cubic expression")
    F = R.field
    B = Mobius.identity(F)
    cur = R
    if cur.h.deg == 3:
        # x -> 1/(x - g3/h3) sends R(∞) to ∞
        shift = F.div(cur.g.coeff(3), cur.h.coeff(3))
        B1 = Mobius(F, 0, 1, 1, F.neg(shift))
        cur = post_compose(B1, cur)
        B = B1 @ B
    lead = cur.g.lead
    if lead != 1:
        B2 = Mobius(F, F.inv(lead), 0, 0, 1)
        cur = post_compose(B2, cur)
        B = B2 @ B
    return cur, B


def is_normalized(R: RatExpr) -> bool:
    return R.g.deg == 3 and R.g.is_monic() and R.h.deg < 3


# ---------------------------------------------------------------------------
# ramification


def distinct_roots_over_closure(f: Poly) -> int:
    """Number of distinct roots of f in an algebraic closure of its field.

    Counts roots in F_{q^j} for j <= deg f and peels off those of smaller
    degree; no factorization over the closure is attempted.
    """
    d = f.deg
    if d <= 0:
        return 0
    F = f.field
    inside = [0] * (d + 1)
    exact = [0] * (d + 1)
    for j in range(1, d + 1):
        inside[j] = P._root_count(F, f.c, F.q**j)
        exact[j] = inside[j] - sum(exact[i] for i in range(1, j) if j % i == 0)
    return sum(exact[1:])


@dataclass(frozen=True)
class RamificationData:
    wronskian: Poly  # g'h - gh'
    inseparable: bool
    finite: int  # distinct finite ramification points over the closure
    infinity: bool
    total: int | None  # None when ramified everywhere
    index3: int | None  # points of ramification index 3 (totally ramified)


def wronskian(R: RatExpr) -> Poly:
    return R.g.derivative() * R.h - R.g * R.h.derivative()


def _triple_fiber_count(R: RatExpr) -> int | None:
    """Totally ramified points of a cubic, None if every fiber is a triple point."""
    Rn, _ = normalize_cubic(R)
    F = R.field
    g, h = Rn.g, Rn.h
    # g - beta*h = x^3 + a x^2 + b x + c with a, b, c linear in beta
    def coef(i):
        return Poly(F, [g.coeff(i), F.neg(h.coeff(i))])

    a, b, c = coef(2), coef(1), coef(0)
    if F.p == 3:
        G = P.gcd(a, b)
    else:
        G = P.gcd(3 * b - a * a, 27 * c - a * a * a)
    if G.is_zero():
        return None
    count = distinct_roots_over_closure(G)
    if h.deg == 0:
        count += 1
    return count


def ramification_data(R: RatExpr) -> RamificationData:
    if R.r != 3:
        raise ValidationError("ramification_data needs a cubic expression")
    W = wronskian(R)
    if W.is_zero():
        return RamificationData(W, True, 0, False, None, None)
    finite = distinct_roots_over_closure(W)
    inf = W.deg < 2 * R.r - 2
    return RamificationData(W, False, finite, inf, finite + int(inf), _triple_fiber_count(R))


# ---------------------------------------------------------------------------
# equivalence search


def pgl2(F: FieldSpec) -> Iterator[Mobius]:
    """PGL_2(F_q) in a fixed order, identity first."""
    q = F.q
    mul, sub = F.mul, F.sub
    for a in range(1, q):
        for b in range(q):
            yield Mobius(F, a, b, 0, 1)
    for a in range(q):
        for d in range(q):
            ad = mul(a, d)
            for b in range(q):
                if sub(ad, b):
                    yield Mobius(F, a, b, 1, d)


def _vec(F: FieldSpec, i: int) -> tuple[int, int]:
    return (1, 0) if i == F.q else (i, 1)


def _mobius_from_points(F: FieldSpec, src: Sequence[int], dst: Sequence[int]) -> Mobius:
    """The unique Möbius map sending three distinct points src to dst."""

    def frame(pts):
        (x1, y1), (x2, y2), (x3, y3) = (_vec(F, i) for i in pts)
        mul, sub = F.mul, F.sub
        det = sub(mul(x1, y2), mul(x2, y1))
        inv = F.inv(det)
        l1 = mul(sub(mul(x3, y2), mul(x2, y3)), inv)
        l2 = mul(sub(mul(x1, y3), mul(x3, y1)), inv)
        return (mul(l1, x1), mul(l2, x2), mul(l1, y1), mul(l2, y2))

    a1, b1, c1, d1 = frame(src)
    a2, b2, c2, d2 = frame(dst)
    Tz = Mobius(F, a1, b1, c1, d1)
    Tw = Mobius(F, a2, b2, c2, d2)
    return Tw @ Tz.inverse()


def _values(R: RatExpr) -> list[int]:
    return [R.value_index(i) for i in range(R.field.q + 1)]


def equivalent(
    R1: RatExpr,
    R2: RatExpr,
    budget: int = DEFAULT_SEARCH_BUDGET,
    *,
    _v1: list[int] | None = None,
) -> tuple[Mobius, Mobius] | None:
    """Find (A, B) with B∘R1∘A = R2 as rational functions, or None.

    Runs over A in PGL_2(F_q); B is interpolated from three point values.
    """
    F = R1.field
    if R2.field != F:
        raise ValidationError("expressions over different fields")
    if R1.r != 3 or R2.r != 3:
        raise ValidationError("equivalence search is for cubic expressions")
    q = F.q
    if q > budget:
        raise SearchBudgetError(f"search budget exceeded: q = {q} > {budget}")
    npts = q + 1
    v1 = _v1 if _v1 is not None else _values(R1)
    v2 = _values(R2)
    all_B: list[Mobius] | None = None
    for A in pgl2(F):
        s = [v1[A.index_apply(i)] for i in range(npts)]
        picks: list[int] = []
        seen = set()
        for i in range(npts):
            if s[i] not in seen:
                seen.add(s[i])
                picks.append(i)
                if len(picks) == 3:
                    break
        if len(picks) == 3:
            dst = [v2[i] for i in picks]
            if len(set(dst)) < 3:
                continue
            candidates = [_mobius_from_points(F, [s[i] for i in picks], dst)]
        else:
            if all_B is None:
                all_B = list(pgl2(F))
            candidates = all_B
        for B in candidates:
            if all(B.index_apply(s[i]) == v2[i] for i in range(npts)):
                if post_compose(B, pre_compose(R1, A)).same_function(R2):
                    return A, B
    return None


# ---------------------------------------------------------------------------
# canonical forms and classification


class CanonicalClass(enum.Enum):
    CUBE = "Cube"
    TWISTED_CUBE = "TwistedCube"
    THREE_RAM_SQUARE = "ThreeRamSquare"
    THREE_RAM_NONSQUARE = "ThreeRamNonsquare"
    C3_32 = "C3_32"
    C3_LIN_SQUARE = "C3_Lin_Square"
    C3_LIN_NONSQUARE = "C3_Lin_Nonsquare"
    C3_INSEPARABLE = "C3_Inseparable"
    C2_I = "C2_i"
    C2_II = "C2_ii"
    C2_III = "C2_iii"
    C2_IV = "C2_iv"
    C2_V = "C2_v"
    C2_VI = "C2_vi"
    FOUR_RAMIFICATION = "FourRamification"


@dataclass(frozen=True)
class CanonicalForm:
    kind: CanonicalClass
    param: int | None  # theta power for C2_iv, c for C2_v, b for C2_vi (codes)
    expr: RatExpr


@dataclass(frozen=True)
class Classification:
    kind: CanonicalClass
    param: int | None
    canonical: RatExpr | None
    # witnesses with B∘R∘A = canonical
    A: Mobius | None = None
    B: Mobius | None = None

    @property
    def label(self) -> str:
        return self.kind.value


def _p(F: FieldSpec, coeffs: Sequence[int]) -> Poly:
    return Poly(F, coeffs)


def _cube(F):
    return RatExpr(_p(F, [0, 0, 0, 1]), _p(F, [1]))


def canonical_forms(F: FieldSpec) -> list[CanonicalForm]:
    """Every canonical representative instantiable over F."""
    neg, mul, add = F.neg, F.mul, F.add
    three = F.from_int(3)
    out: list[CanonicalForm] = []
    C = CanonicalClass
    if F.p >= 5:
        s = find_nonsquare(F).code
        out.append(CanonicalForm(C.CUBE, None, _cube(F)))
        out.append(CanonicalForm(C.TWISTED_CUBE, None, RatExpr(
            _p(F, [0, mul(three, s), 0, 1]), _p(F, [s, 0, three]))))
        out.append(CanonicalForm(C.THREE_RAM_SQUARE, None, RatExpr(
            _p(F, [0, neg(three), 0, 1]), _p(F, [1]))))
        out.append(CanonicalForm(C.THREE_RAM_NONSQUARE, None, RatExpr(
            _p(F, [0, neg(mul(three, s)), 0, 1]), _p(F, [1]))))
    elif F.p == 3:
        s = find_nonsquare(F).code
        out.append(CanonicalForm(C.C3_32, None, RatExpr(_p(F, [0, 0, 1, 1]), _p(F, [1]))))
        out.append(CanonicalForm(C.C3_LIN_SQUARE, None, RatExpr(_p(F, [0, neg(1), 0, 1]), _p(F, [1]))))
        out.append(CanonicalForm(C.C3_LIN_NONSQUARE, None, RatExpr(_p(F, [0, neg(s), 0, 1]), _p(F, [1]))))
        out.append(CanonicalForm(C.C3_INSEPARABLE, None, _cube(F)))
    else:
        s = find_trace_one(F).code
        out.append(CanonicalForm(C.C2_I, None, _cube(F)))
        out.append(CanonicalForm(C.C2_II, None, RatExpr(
            _p(F, [s, s, 0, 1]), _p(F, [add(s, 1), 1, 1]))))
        out.append(CanonicalForm(C.C2_III, None, RatExpr(_p(F, [0, 0, 1, 1]), _p(F, [1]))))
        out.extend(_c2_iv_forms(F))
        for c in range(2, F.q):
            out.append(CanonicalForm(C.C2_V, c, RatExpr(_p(F, [c, 0, 0, 1]), _p(F, [c, 1]))))
        for b in range(2, F.q):
            out.append(CanonicalForm(C.C2_VI, b, RatExpr(
                _p(F, [mul(add(b, 1), s), s, b, 1]), _p(F, [add(add(b, 1), s), 1, 1]))))
    return out


def _c2_iv_forms(F: FieldSpec) -> list[CanonicalForm]:
    powers = [1]
    if F.k % 2 == 0:
        theta = find_noncube(F).code
        powers += [theta, F.mul(theta, theta)]
    return [
        CanonicalForm(CanonicalClass.C2_IV, j, RatExpr(Poly(F, [t, 0, 0, 1]), Poly(F, [0, 1])))
        for j, t in enumerate(powers)
    ]


def _candidates(F: FieldSpec, kinds: Sequence[CanonicalClass]) -> list[CanonicalForm]:
    return [cf for cf in canonical_forms(F) if cf.kind in kinds]


def classify(R: RatExpr, budget: int = DEFAULT_SEARCH_BUDGET) -> Classification:
    """Canonical class of a cubic expression, with equivalence witnesses."""
    if R.r != 3:
        raise ValidationError("classify needs a cubic expression")
    F = R.field
    C = CanonicalClass
    ram = ramification_data(R)
    if ram.inseparable:
        if F.p != 3:  # pragma: no cover - impossible for cubics
            raise ClassificationError("inseparable cubic outside characteristic 3")
        return Classification(C.C3_INSEPARABLE, None, _cube(F))
    if F.p >= 5:
        if ram.total == 4:
            return Classification(C.FOUR_RAMIFICATION, None, None)
        kinds = {2: [C.CUBE, C.TWISTED_CUBE], 3: [C.THREE_RAM_SQUARE, C.THREE_RAM_NONSQUARE]}
    elif F.p == 3:
        if ram.total == 4:
            return Classification(C.FOUR_RAMIFICATION, None, None)
        kinds = {2: [C.C3_32], 1: [C.C3_LIN_SQUARE, C.C3_LIN_NONSQUARE]}
    else:
        if ram.index3 == 2:
            kinds = {ram.total: [C.C2_I, C.C2_II]}
        elif ram.index3 == 1:
            kinds = {ram.total: [C.C2_III]}
        else:
            kinds = {1: [C.C2_IV], 2: [C.C2_V, C.C2_VI]}
    wanted = kinds.get(ram.total)
    if not wanted:
        raise ClassificationError(
            f"no canonical family with {ram.total} ramification points over {F}")
    v1 = _values(R)
    for cf in _candidates(F, wanted):
        w = equivalent(R, cf.expr, budget, _v1=v1)
        if w is not None:
            return Classification(cf.kind, cf.param, cf.expr, w[0], w[1])
    raise ClassificationError(f"{R} matched no canonical form")
