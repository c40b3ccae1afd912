"""Seeded generators for random cubic expressions and Möbius maps."""

from __future__ import annotations

import random

from .errors import ValidationError
from .field import FieldSpec
from .poly import Poly
from .ratexpr import Mobius, RatExpr, classify, CanonicalClass, ramification_data


def random_cubic(F: FieldSpec, rng: random.Random) -> RatExpr:
    """Uniform-ish coprime pair (g, h) with max(deg g, deg h) = 3."""
    while True:
        g = Poly(F, [rng.randrange(F.q) for _ in range(4)])
        h = Poly(F, [rng.randrange(F.q) for _ in range(4)])
        if max(g.deg, h.deg) != 3 or h.deg < 0:
            continue
        try:
            return RatExpr(g, h)
        except ValidationError:
            continue


def random_mobius(F: FieldSpec, rng: random.Random) -> Mobius:
    while True:
        a, b, c, d = (rng.randrange(F.q) for _ in range(4))
        if F.sub(F.mul(a, d), F.mul(b, c)):
            return Mobius(F, a, b, c, d)


def random_cubics(F: FieldSpec, count: int, seed: int) -> list[RatExpr]:
    rng = random.Random(f"{seed}:{F.p}:{F.k}")
    return [random_cubic(F, rng) for _ in range(count)]


def random_four_ram(F: FieldSpec, count: int, seed: int, tries: int = 10000) -> list[RatExpr]:
    """Random cubics with four ramification points (genus-one case, odd char)."""
    if F.p == 2:
        raise ValidationError("use the char-2 case labels instead")
    rng = random.Random(f"four:{seed}:{F.p}:{F.k}")
    out = []
    for _ in range(tries):
        if len(out) == count:
            break
        R = random_cubic(F, rng)
        ram = ramification_data(R)
        if not ram.inseparable and ram.total == 4:
            out.append(R)
    return out


def genus_one_char2(F: FieldSpec, count: int, seed: int) -> list[RatExpr]:
    """Random char-2 cubics in classes iv, v or vi."""
    rng = random.Random(f"c2g1:{seed}:{F.k}")
    kinds = (CanonicalClass.C2_IV, CanonicalClass.C2_V, CanonicalClass.C2_VI)
    out = []
    for _ in range(10000):
        if len(out) == count:
            break
        R = random_cubic(F, rng)
        if classify(R).kind in kinds:
            out.append(R)
    return out
