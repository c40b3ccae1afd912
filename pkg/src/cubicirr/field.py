"""Finite fields F_{p^k} and their extension towers.

An element of F_{p^k} = F_p[t]/(m(t)) is encoded as the integer whose base-p
digits are its coefficient vector, constant term least significant. This is
also the enumeration order used by every "first element such that ..."
selector, so ``range(F.q)`` walks the field in canonical order.

Arithmetic on encoded elements lives on :class:`FieldSpec` (``F.add(a, b)``
and friends); :class:`FieldElem` is a thin value wrapper with operator
overloading for the public API.
"""

from __future__ import annotations

import contextlib
import functools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import LimitError, ValidationError

DEFAULT_LIMIT = 2**22
# log/exp tables are built for fields up to this size; beyond it arithmetic
# falls back to coefficient-vector polynomial arithmetic
LOG_TABLE_MAX = 2**16
# full q*q addition/multiplication tables up to this size
FULL_TABLE_MAX = 256

_limit = DEFAULT_LIMIT


def get_limit() -> int:
    return _limit


def set_limit(limit: int) -> None:
    global _limit
    if limit < 1:
        raise ValidationError("enumeration limit must be positive")
    _limit = int(limit)


@contextlib.contextmanager
def enumeration_limit(limit: int) -> Iterator[None]:
    """Temporarily change the enumeration limit."""
    old = _limit
    set_limit(limit)
    try:
        yield
    finally:
        set_limit(old)


def check_limit(size: int, what: str = "enumeration") -> None:
    if size > _limit:
        raise LimitError(f"{what} of size {size} exceeds the enumeration limit {_limit}")


# ---------------------------------------------------------------------------
# integer helpers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n >= 1, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# coefficient-vector arithmetic over F_p (ascending lists of ints), used to
# bootstrap moduli and tables before any FieldSpec exists

def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _strip([c % p for c in res])


def _fp_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        if c:
            for i, y in enumerate(m):
                a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
        _strip(a)
    return a


def _fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_powmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(base, m, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _fp_mod(_fp_mul(base, base, p), m, p)
    return result


def _fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _fp_powmod(x, p**n, f, p) != x:
        return False
    for ell in prime_factors(n):
        xq = _fp_powmod(x, p ** (n // ell), f, p)
        diff = list(xq) + [0] * max(0, 2 - len(xq))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(f, _strip(diff), p)) > 1:
            return False
    return True


def _first_irreducible(p: int, k: int) -> tuple[int, ...]:
    # monic degree-k polynomials in ascending order of their lower
    # coefficients read as a base-p integer, constant term fastest
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        f = low + [1]
        if _fp_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------

class FieldSpec:
    """The field F_p[t]/(modulus) with q = p**k elements.

    ``modulus`` is the ascending coefficient tuple of a monic irreducible
    polynomial of degree k over F_p, or ``None`` for prime fields.
    Instances are immutable; two specs with equal (p, k, modulus) compare
    equal and hash alike.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValidationError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValidationError(f"extension degree {k} must be >= 1")
        if k == 1:
            modulus = None
        else:
            if modulus is None or len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValidationError("modulus must be monic of degree k")
            modulus = tuple(int(c) % p for c in modulus)
            if not _fp_is_irreducible(list(modulus), p):
                raise ValidationError("modulus is not irreducible over F_p")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self._gen = None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._build()

    # -- identity -----------------------------------------------------------
    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    @property
    def char(self) -> int:
        return self.p

    # -- encoding -----------------------------------------------------------
    def digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p**i) % p for i in range(self.k))

    def from_digits(self, ds: Sequence[int]) -> int:
        p = self.p
        if len(ds) > self.k:
            raise ValidationError("coefficient vector longer than extension degree")
        return sum((int(d) % p) * p**i for i, d in enumerate(ds))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elem(self, a: int) -> "FieldElem":
        if not 0 <= a < self.q:
            raise ValidationError(f"element code {a} out of range for {self}")
        return FieldElem(self, a)

    def __call__(self, a: int) -> "FieldElem":
        return self.elem(a)

    def elements(self) -> range:
        return range(self.q)

    @property
    def generator(self) -> int:
        """Code of the class of t (the adjoined root of the modulus)."""
        return self.p if self.k > 1 else 1

    # -- backend construction ----------------------------------------------
    def _build(self) -> None:
        p, q = self.p, self.q
        if self.k == 1:
            self.kind = "prime"
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: -a % p
            self.mul = lambda a, b: a * b % p
            return
        if q <= LOG_TABLE_MAX:
            self._build_tables()
            return
        self.kind = "poly"
        self.add = self._poly_add
        self.sub = self._poly_sub
        self.neg = self._poly_neg
        self.mul = self._poly_mul

    def _poly_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        prod = _fp_mod(_fp_mul(self.digits(a), self.digits(b), self.p), self.modulus, self.p)
        return self.from_digits(prod)

    def _poly_add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _poly_sub(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        return self.from_digits([(x - y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _poly_neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        return self.from_digits([-x % p for x in self.digits(a)])

    def _find_primitive(self) -> int:
        order = self.q - 1
        ell = prime_factors(order)
        for g in range(1, self.q):
            if all(self._poly_pow(g, order // e) != 1 for e in ell):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _poly_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._poly_mul(r, a)
            e >>= 1
            if e:
                a = self._poly_mul(a, a)
        return r

    def _build_tables(self) -> None:
        p, q, k = self.p, self.q, self.k
        order = q - 1
        g = self._find_primitive()
        self._gen = g
        exp = [0] * (2 * order)
        log = [-1] * q
        m = self.modulus
        if g == p:
            # multiplication by t is a shift followed by one reduction step
            cur = [1] + [0] * (k - 1)
            for i in range(order):
                code = self.from_digits(cur)
                exp[i] = code
                log[code] = i
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c - top * mc) % p for c, mc in zip(cur, m)]
        else:
            cur = 1
            for i in range(order):
                exp[i] = cur
                log[cur] = i
                cur = self._poly_mul(cur, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        if p == 2:
            add = sub = lambda a, b: a ^ b
            neg = lambda a: a  # noqa: E731
        else:
            one_plus = [0] * order  # log(1 + g^i), or -1 when it is zero
            for i in range(order):
                ds = list(self.digits(exp[i]))
                ds[0] = (ds[0] + 1) % p
                c = self.from_digits(ds)
                one_plus[i] = log[c] if c else -1
            minus_one = log[p - 1]

            def add(a, b):
                if a == 0:
                    return b
                if b == 0:
                    return a
                la = log[a]
                z = one_plus[(log[b] - la) % order]
                if z < 0:
                    return 0
                return exp[la + z]

            def neg(a):
                if a == 0:
                    return 0
                return exp[log[a] + minus_one]

            def sub(a, b):
                return add(a, neg(b))

        if q <= FULL_TABLE_MAX:
            self.kind = "table"
            add_t = [add(a, b) for a in range(q) for b in range(q)]
            mul_t = [mul(a, b) for a in range(q) for b in range(q)]
            neg_t = [neg(a) for a in range(q)]
            self.add_table, self.mul_table = add_t, mul_t
            self.add = lambda a, b: add_t[a * q + b]
            self.mul = lambda a, b: mul_t[a * q + b]
            self.neg = neg_t.__getitem__
            self.sub = lambda a, b: add_t[a * q + neg_t[b]]
        else:
            self.kind = "log"
            self.add, self.sub, self.neg, self.mul = add, sub, neg, mul

    # -- arithmetic on codes -----------------------------------------------
    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._log is not None:
            order = self.q - 1
            return self._exp[(order - self._log[a]) % order]
        return self._poly_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a**e by square-and-multiply (table lookup when logs exist)."""
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        if self._log is not None:
            order = self.q - 1
            return self._exp[self._log[a] * e % order]
        return self._poly_pow(a, e)

    def log(self, a: int) -> int:
        """Discrete log to the table generator (table-backed fields only)."""
        if self._log is None:
            raise ValidationError(f"{self} has no log table")
        return self._log[a]

    def trace(self, a: int) -> int:
        """Absolute trace sum_{i<k} a^(p^i), as a residue mod p."""
        t, x = 0, a
        for _ in range(self.k):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        if t >= self.p:
            raise AssertionError("trace escaped the prime field")  # pragma: no cover
        return t

    def quad_char(self, a: int) -> int:
        if self.p == 2:
            raise ValidationError("quadratic character needs odd characteristic")
        if a == 0:
            return 0
        if self._log is not None:
            return 1 if self._log[a] % 2 == 0 else -1
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def is_square(self, a: int) -> bool:
        if self.p == 2:
            return True
        return self.quad_char(a) >= 0


@dataclass(frozen=True)
class FieldElem:
    """An element of ``field``, stored by its base-p code."""

    field: FieldSpec
    code: int

    @property
    def owner(self) -> FieldSpec:
        return self.field

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValidationError("operands belong to different fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElem":
        return FieldElem(self.field, code)

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(self.code, b))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.code, e))

    def inv(self) -> "FieldElem":
        return self._wrap(self.field.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.field!r}({self.code})"


def _coerce_code(F: FieldSpec, e) -> int:
    if isinstance(e, FieldElem):
        if e.field != F:
            raise ValidationError("element belongs to a different field")
        return e.code
    return int(e)


@dataclass(frozen=True)
class Embedding:
    """The inclusion F_q -> F_{q^n} fixed by choosing a root of F_q's modulus.

    ``table[c]`` is the target code of source code ``c``.
    """

    source: FieldSpec
    target: FieldSpec
    image: FieldElem
    table: tuple[int, ...]

    def __call__(self, e):
        if isinstance(e, FieldElem):
            if e.field != self.source:
                raise ValidationError("element is not in the embedding's source")
            return FieldElem(self.target, self.table[e.code])
        return self.table[e]


@functools.lru_cache(maxsize=None)
def field_new(p: int, k: int = 1) -> FieldSpec:
    """F_{p^k} with the lexicographically first monic irreducible modulus."""
    if not is_prime(p):
        raise ValidationError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValidationError(f"extension degree {k} must be >= 1")
    if k == 1:
        return FieldSpec(p, 1)
    return FieldSpec(p, k, _first_irreducible(p, k))


def field_of_order(q: int) -> FieldSpec:
    """field_new for a prime power q."""
    ps = prime_factors(q) if q > 1 else []
    if len(ps) != 1:
        raise ValidationError(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return field_new(p, k)


@functools.lru_cache(maxsize=None)
def _extend(base: FieldSpec, n: int) -> tuple[FieldSpec, Embedding]:
    ext = field_new(base.p, base.k * n)
    if base.k == 1:
        table = tuple(range(base.p))
        return ext, Embedding(base, ext, FieldElem(ext, 1), table)
    m = base.modulus
    root = None
    for z in ext.elements():
        acc = 0
        for c in reversed(m):
            acc = ext.add(ext.mul(acc, z), c)
        if acc == 0:
            root = z
            break
    if root is None:  # pragma: no cover
        raise AssertionError("base modulus has no root in the extension")
    powers = [1]
    for _ in range(base.k - 1):
        powers.append(ext.mul(powers[-1], root))
    table = []
    for c in base.elements():
        acc = 0
        for d, pw in zip(base.digits(c), powers):
            if d:
                acc = ext.add(acc, ext.mul(d, pw))
        table.append(acc)
    return ext, Embedding(base, ext, FieldElem(ext, root), tuple(table))


def extend(base: FieldSpec, n: int, *, enumerable: bool = True) -> tuple[FieldSpec, Embedding]:
    """F_{q^n} over the prime field together with the embedding of ``base``.

    With ``enumerable`` (the default) the extension must fit in the
    enumeration limit, since callers will loop over its elements.
    """
    if n < 1:
        raise ValidationError(f"extension degree {n} must be >= 1")
    if enumerable:
        check_limit(base.q**n, f"extension F_{base.q}^{n}")
    return _extend(base, n)


# ---------------------------------------------------------------------------
# characters and distinguished elements

def legendre3(q: int) -> int:
    """(q/3): +1 if q = 1 mod 3, -1 if q = 2 mod 3."""
    r = q % 3
    if r == 0:
        raise ValidationError(f"{q} is divisible by 3")
    return 1 if r == 1 else -1


def absolute_trace(e: FieldElem) -> int:
    return e.field.trace(e.code)


def quadratic_character(e: FieldElem) -> int:
    return e.field.quad_char(e.code)


def find_nonsquare(F: FieldSpec) -> FieldElem:
    if F.p == 2:
        raise ValidationError("every element is a square in characteristic 2")
    for a in range(1, F.q):
        if F.quad_char(a) == -1:
            return F.elem(a)
    raise AssertionError("no nonsquare")  # pragma: no cover


def find_trace_one(F: FieldSpec) -> FieldElem:
    for a in F.elements():
        if F.trace(a) == 1:
            return F.elem(a)
    raise ValidationError(f"no element of absolute trace 1 in {F}")


def find_noncube(F: FieldSpec) -> FieldElem:
    if (F.q - 1) % 3:
        raise ValidationError(f"every element of {F} is a cube")
    e = (F.q - 1) // 3
    for a in range(1, F.q):
        if F.pow(a, e) != 1:
            return F.elem(a)
    raise AssertionError("no noncube")  # pragma: no cover
