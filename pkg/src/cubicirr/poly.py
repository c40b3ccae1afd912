"""Dense univariate polynomials over a :class:`~cubicirr.field.FieldSpec`.

Coefficients are element codes stored ascending by degree with trailing
zeros stripped, so the zero polynomial is the empty tuple. The module-level
``_kernel`` functions operate on plain lists and are what the counting
loops use; :class:`Poly` wraps them with operators.
"""

from __future__ import annotations

import enum
import functools
import re
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError
from .field import FieldElem, FieldSpec, check_limit, prime_factors

# ---------------------------------------------------------------------------
# kernels on ascending code lists


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    add = F.add
    for i, y in enumerate(b):
        res[i] = add(res[i], y)
    return _strip(res)


def _neg(F: FieldSpec, a: Sequence[int]) -> list[int]:
    neg = F.neg
    return [neg(x) for x in a]


def _sub(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return _add(F, a, _neg(F, b))


def _scale(F: FieldSpec, a: Sequence[int], c: int) -> list[int]:
    if c == 0:
        return []
    mul = F.mul
    return _strip([mul(x, c) for x in a])


def _mul(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    kind = F.kind
    if kind == "prime":
        p = F.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return _strip([c % p for c in res])
    if kind == "table":
        q = F.q
        M = F.mul_table
        if F.p == 2:
            for i, x in enumerate(a):
                if x:
                    row = x * q
                    for j, y in enumerate(b):
                        res[i + j] ^= M[row + y]
        else:
            A = F.add_table
            for i, x in enumerate(a):
                if x:
                    row = x * q
                    for j, y in enumerate(b):
                        if y:
                            k = i + j
                            res[k] = A[res[k] * q + M[row + y]]
        return _strip(res)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    res[i + j] = add(res[i + j], mul(x, y))
    return _strip(res)


def _divmod(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _strip(a)
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(a) - db)
    mul, sub = F.mul, F.sub
    for shift in range(len(a) - 1 - db, -1, -1):
        c = a[shift + db]
        if c:
            c = mul(c, inv_lead)
            quot[shift] = c
            for i in range(db + 1):
                if b[i]:
                    a[shift + i] = sub(a[shift + i], mul(c, b[i]))
    return _strip(quot), _strip(a[:db])


def _rem_monic(F: FieldSpec, a: list[int], m: Sequence[int]) -> list[int]:
    """a mod m for monic m; mutates and returns a."""
    dm = len(m) - 1
    top = len(a) - 1
    if top < dm:
        return _strip(a)
    kind = F.kind
    if kind == "prime":
        p = F.p
        for shift in range(top - dm, -1, -1):
            c = a[shift + dm] % p
            if c:
                for i in range(dm):
                    a[shift + i] -= c * m[i]
        return _strip([x % p for x in a[:dm]])
    if kind == "table" and F.p == 2:
        q = F.q
        M = F.mul_table
        for shift in range(top - dm, -1, -1):
            c = a[shift + dm]
            if c:
                row = c * q
                for i in range(dm):
                    a[shift + i] ^= M[row + m[i]]
        return _strip(a[:dm])
    mul, sub = F.mul, F.sub
    for shift in range(top - dm, -1, -1):
        c = a[shift + dm]
        if c:
            for i in range(dm):
                if m[i]:
                    a[shift + i] = sub(a[shift + i], mul(c, m[i]))
    return _strip(a[:dm])


def _mulmod(F: FieldSpec, a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> list[int]:
    """a*b mod m, m monic."""
    if not a or not b:
        return []
    if F.kind == "prime":
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return _rem_monic(F, res, m)
    return _rem_monic(F, _mul(F, a, b), m)


def _powmod(F: FieldSpec, a: Sequence[int], e: int, m: Sequence[int]) -> list[int]:
    result = [1] if len(m) > 1 else []
    base = _rem_monic(F, list(a), m)
    while e:
        if e & 1:
            result = _mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = _mulmod(F, base, base, m)
    return result


def _monic(F: FieldSpec, a: Sequence[int]) -> list[int]:
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return _scale(F, a, F.inv(a[-1]))


def _gcd(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _divmod(F, a, b)[1]
    return _monic(F, a)


def _eval(F: FieldSpec, a: Sequence[int], z: int) -> int:
    acc = 0
    add, mul = F.add, F.mul
    for c in reversed(a):
        acc = add(mul(acc, z), c)
    return acc


def _derivative(F: FieldSpec, a: Sequence[int]) -> list[int]:
    mul = F.mul
    return _strip([mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def _frobenius_rows(F: FieldSpec, f: Sequence[int]) -> list[list[int]]:
    """rows[i] = x^(q*i) mod f for i < deg f; f monic."""
    n = len(f) - 1
    xq = _powmod(F, [0, 1], F.q, f)
    rows = [[1]]
    for _ in range(1, n):
        rows.append(_mulmod(F, rows[-1], xq, f))
    return rows


def _frobenius_apply(F: FieldSpec, rows: list[list[int]], v: Sequence[int], n: int) -> list[int]:
    """v(x)^q mod f, using that coefficients in F_q are Frobenius-fixed."""
    if F.kind == "prime":
        p = F.p
        acc = [0] * n
        for vi, row in zip(v, rows):
            if vi:
                for j, r in enumerate(row):
                    acc[j] += vi * r
        return _strip([x % p for x in acc])
    acc = [0] * n
    if F.kind == "table" and F.p == 2:
        q = F.q
        M = F.mul_table
        for vi, row in zip(v, rows):
            if vi:
                base = vi * q
                for j, r in enumerate(row):
                    acc[j] ^= M[base + r]
        return _strip(acc)
    add, mul = F.add, F.mul
    for vi, row in zip(v, rows):
        if vi:
            for j, r in enumerate(row):
                if r:
                    acc[j] = add(acc[j], mul(vi, r))
    return _strip(acc)


def _is_irreducible(F: FieldSpec, f: Sequence[int]) -> bool:
    """Rabin's criterion on a nonconstant code list."""
    n = len(f) - 1
    if n < 1:
        raise ValidationError("irreducibility of a constant polynomial is undefined")
    if n == 1:
        return True
    f = _monic(F, f)
    if f[0] == 0:
        return False
    rows = _frobenius_rows(F, f)
    checkpoints = {n // ell for ell in prime_factors(n)}
    x = [0, 1]
    cur = x
    one = F.from_int(1)
    for j in range(1, n + 1):
        cur = _frobenius_apply(F, rows, cur, n)
        if j in checkpoints:
            diff = list(cur) + [0] * max(0, 2 - len(cur))
            diff[1] = F.sub(diff[1], one)
            if len(_gcd(F, f, _strip(diff))) > 1:
                return False
    return cur == x


def _root_count(F: FieldSpec, f: Sequence[int], size: int) -> int:
    """Number of distinct roots of f in the subfield of order ``size``."""
    if len(f) <= 1:
        return 0
    fm = _monic(F, f)
    if len(fm) == 2:
        return 1
    xs = _powmod(F, [0, 1], size, fm)
    diff = list(xs) + [0] * max(0, 2 - len(xs))
    diff[1] = F.sub(diff[1], F.from_int(1))
    return len(_gcd(F, fm, _strip(diff))) - 1


# ---------------------------------------------------------------------------


class Poly:
    """Immutable dense polynomial ``sum c[i] x^i`` over ``field``."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        cs = []
        for x in coeffs:
            if isinstance(x, FieldElem):
                if x.field != field:
                    raise ValidationError("coefficient belongs to a different field")
                cs.append(x.code)
            else:
                x = int(x)
                if not 0 <= x < field.q:
                    raise ValidationError(f"coefficient code {x} out of range for {field}")
                cs.append(x)
        self.field = field
        self.c = tuple(_strip(cs))

    @classmethod
    def _raw(cls, field: FieldSpec, cs: Sequence[int]) -> "Poly":
        obj = object.__new__(cls)
        obj.field = field
        obj.c = tuple(cs)
        return obj

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls._raw(field, (0, 1))

    @classmethod
    def const(cls, field: FieldSpec, value) -> "Poly":
        if isinstance(value, FieldElem):
            value = value.code
        return cls(field, [value])

    @classmethod
    def from_ints(cls, field: FieldSpec, coeffs: Iterable[int]) -> "Poly":
        """Coefficients given as integers reduced into the prime subfield."""
        return cls(field, [field.from_int(v) for v in coeffs])

    # -- basic properties --------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(FieldElem(self.field, x) for x in self.c)

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def coeff(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def __len__(self):
        return len(self.c)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self.c == tuple(_strip([self.field.from_int(other)]))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.c))

    def __repr__(self):
        return f"Poly({format_poly(self)!r} over {self.field!r})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> tuple[int, ...]:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValidationError("polynomials over different fields")
            return other.c
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValidationError("element over a different field")
            return tuple(_strip([other.code]))
        if isinstance(other, int):
            return tuple(_strip([self.field.from_int(other)]))
        return NotImplemented

    def _wrap(self, cs) -> "Poly":
        return Poly._raw(self.field, cs)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(_add(self.field, self.c, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(_sub(self.field, self.c, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(_sub(self.field, b, self.c))

    def __neg__(self):
        return self._wrap(_neg(self.field, self.c))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(_mul(self.field, self.c, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = [1]
        base = list(self.c)
        while e:
            if e & 1:
                result = _mul(self.field, result, base)
            e >>= 1
            if e:
                base = _mul(self.field, base, base)
        return self._wrap(result)

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        q, r = _divmod(self.field, self.c, b)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divrem(self, other: "Poly") -> tuple["Poly", "Poly"]:
        return divmod(self, other)

    def scale(self, c) -> "Poly":
        if isinstance(c, FieldElem):
            c = c.code
        return self._wrap(_scale(self.field, self.c, c))

    def monic(self) -> "Poly":
        return self._wrap(_monic(self.field, self.c))

    def monicize(self) -> "Poly":
        return self.monic()

    def derivative(self) -> "Poly":
        return self._wrap(_derivative(self.field, self.c))

    def __call__(self, z):
        if isinstance(z, Poly):
            return self.compose(z)
        if isinstance(z, FieldElem):
            if z.field != self.field:
                raise ValidationError("evaluation point over a different field")
            return FieldElem(self.field, _eval(self.field, self.c, z.code))
        return _eval(self.field, self.c, int(z))

    def eval(self, z):
        return self(z)

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x)) by Horner's rule."""
        acc: list[int] = []
        F = self.field
        for c in reversed(self.c):
            acc = _add(F, _mul(F, acc, inner.c), [c] if c else [])
        return self._wrap(acc)

    def map_coeffs(self, target: FieldSpec, table: Sequence[int]) -> "Poly":
        """Push coefficients through a code table (e.g. an Embedding)."""
        return Poly._raw(target, tuple(_strip([table[x] for x in self.c])))


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    if a.field != b.field:
        raise ValidationError("polynomials over different fields")
    return a._wrap(_gcd(a.field, a.c, b.c))


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n."""
    return _is_irreducible(f.field, f.c)


# ---------------------------------------------------------------------------
# enumeration


def monic_polys(F: FieldSpec, n: int) -> Iterator[Poly]:
    """All monic degree-n polynomials, ordered by the base-q integer of the
    lower coefficients (constant term least significant)."""
    q = F.q
    check_limit(q**n, f"monic polynomials of degree {n} over {F}")
    for code in range(q**n):
        low = [(code // q**i) % q for i in range(n)]
        yield Poly._raw(F, tuple(low) + (1,))


@functools.lru_cache(maxsize=64)
def _irreducibles(F: FieldSpec, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(f.c for f in monic_polys(F, n) if _is_irreducible(F, f.c))


def enumerate_monic_irreducible(F: FieldSpec, n: int) -> Iterator[Poly]:
    """Each monic irreducible of degree n over F exactly once, deterministic order."""
    if n < 1:
        raise ValidationError("degree must be >= 1")
    check_limit(F.q**n, f"monic polynomials of degree {n} over {F}")
    for cs in _irreducibles(F, n):
        yield Poly._raw(F, cs)


# ---------------------------------------------------------------------------
# cubic analysis


class CubicPattern(enum.Enum):
    THREE_DISTINCT_ROOTS = "ThreeDistinctRoots"
    DOUBLE_PLUS_SIMPLE = "DoublePlusSimple"
    TRIPLE_ROOT = "TripleRoot"
    QUADRATIC_TIMES_LINEAR = "QuadraticTimesLinear"
    IRREDUCIBLE_CUBIC = "IrreducibleCubic"


def cubic_pattern(f: Poly) -> CubicPattern:
    """Factorization pattern of a monic cubic over its own field."""
    if f.deg != 3 or not f.is_monic():
        raise ValidationError("cubic_pattern needs a monic cubic")
    F = f.field
    r = _root_count(F, f.c, F.q)
    if r == 0:
        return CubicPattern.IRREDUCIBLE_CUBIC
    if r == 3:
        return CubicPattern.THREE_DISTINCT_ROOTS
    if r == 2:
        return CubicPattern.DOUBLE_PLUS_SIMPLE
    d = _derivative(F, f.c)
    # inseparable x^3 - e (char 3) is a perfect cube over a finite field
    if not d or len(_gcd(F, f.c, d)) > 1:
        return CubicPattern.TRIPLE_ROOT
    return CubicPattern.QUADRATIC_TIMES_LINEAR


def pattern_from_roots(F: FieldSpec, f: Sequence[int], roots: Sequence[int]) -> CubicPattern:
    """Pattern of a monic cubic code list given its distinct roots in F."""
    r = len(roots)
    if r == 0:
        return CubicPattern.IRREDUCIBLE_CUBIC
    if r == 3:
        return CubicPattern.THREE_DISTINCT_ROOTS
    if r == 2:
        return CubicPattern.DOUBLE_PLUS_SIMPLE
    g = roots[0]
    # (x - g)^3 = x^3 - 3g x^2 + 3g^2 x - g^3
    mul, neg = F.mul, F.neg
    three = F.from_int(3)
    g2 = mul(g, g)
    triple = (neg(mul(g2, g)), mul(three, g2), neg(mul(three, g)), 1)
    fc = tuple(f) + (0,) * (4 - len(f))
    if fc == triple:
        return CubicPattern.TRIPLE_ROOT
    return CubicPattern.QUADRATIC_TIMES_LINEAR


def cubic_discriminant(a, b, c):
    """Discriminant of x^3 + a x^2 + b x + c over any commutative coefficient ring."""
    return 18 * a * b * c - 4 * a**3 * c + a**2 * b**2 - 4 * b**3 - 27 * c**2


def quadratic_resolvent(a, b, c):
    """(s, t) with x^2 + s x + t the quadratic resolvent of x^3 + a x^2 + b x + c."""
    s = a * b - 3 * c
    t = a**3 * c + b**3 + 9 * c**2 - 6 * a * b * c
    return s, t


def count_roots_in(f: Poly, ext: FieldSpec, emb) -> int:
    """Distinct roots of f in ``ext`` (reached from f's field by ``emb``)."""
    if emb.source != f.field or emb.target != ext:
        raise ValidationError("embedding does not match polynomial and extension")
    fe = f.map_coeffs(ext, emb.table)
    if fe.deg < 1:
        return 0
    return _root_count(ext, fe.c, ext.q)


# ---------------------------------------------------------------------------
# text format

_TERM_RE = re.compile(r"([+-]?)\s*(\d+)?\s*(\*?\s*x(?:\s*\^\s*(\d+))?)?\s*")


def parse_poly(text: str, F: FieldSpec) -> Poly:
    """Parse ``"x^3+2*x+1"`` or a descending comma list ``"1,0,2,1"``.

    Integer coefficients are element codes; over a prime field that is just
    the residue, and signs act by field negation.
    """
    s = text.strip()
    if not s:
        raise ValidationError("empty polynomial text")
    has_x = "x" in s
    if "," in s or (not has_x and re.fullmatch(r"[+-]?\d+", s) is None):
        if has_x:
            raise ValidationError(f"mixed polynomial formats in {text!r}")
        parts = [t.strip() for t in s.split(",")]
        try:
            vals = [int(t) for t in parts]
        except ValueError:
            raise ValidationError(f"bad coefficient list {text!r}") from None
        return Poly(F, [_code(F, v) for v in reversed(vals)])
    coeffs: dict[int, int] = {}
    pos = 0
    compact = s.replace(" ", "")
    if compact[0] not in "+-":
        compact = "+" + compact
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if not m or m.end() == pos or not m.group(1):
            raise ValidationError(f"cannot parse polynomial {text!r} at {compact[pos:]!r}")
        sign, num, xpart, exp = m.groups()
        if num is None and xpart is None:
            raise ValidationError(f"empty term in {text!r}")
        if xpart is not None and xpart.startswith("*") and num is None:
            raise ValidationError(f"dangling '*' in {text!r}")
        coef = _code(F, int(num) if num is not None else 1)
        if sign == "-":
            coef = F.neg(coef)
        e = 0 if xpart is None else (int(exp) if exp is not None else 1)
        coeffs[e] = F.add(coeffs.get(e, 0), coef)
        pos = m.end()
    top = max(coeffs)
    return Poly(F, [coeffs.get(i, 0) for i in range(top + 1)])


def _code(F: FieldSpec, v: int) -> int:
    if F.k == 1:
        return v % F.p
    if v < 0:
        return F.neg(_code(F, -v))
    if v >= F.q:
        raise ValidationError(f"coefficient {v} is not an element code of {F}")
    return v


def format_poly(f: Poly) -> str:
    if not f.c:
        return "0"
    terms = []
    for i in range(len(f.c) - 1, -1, -1):
        c = f.c[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = "x" if i == 1 else f"x^{i}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)
