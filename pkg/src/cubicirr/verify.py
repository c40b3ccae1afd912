"""Desk-scale property suites behind ``cubicirr verify``.

Every suite is a deterministic function of the seed: the corpus is drawn from
``random.Random`` seeded by strings, and cases run in a fixed order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .corpus import genus_one_char2, random_cubics, random_four_ram, random_mobius
from .counting import breakdown, count_brute, count_capelli, count_inversion
from .curves import DISCRIMINANT, RESOLVENT, count_points, hasse_weil_check
from .field import field_of_order
from .formulas import BOUND, dispatch
from .ratexpr import canonical_forms, classify, normalize_cubic, post_compose, pre_compose
from .tsr import tsr_count_formula, tsr_count_sum


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, label: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(label)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "failed": self.failed, "failures": self.failures}


def _corpus(q: int, seed: int, randoms: int):
    F = field_of_order(q)
    forms = [(cf.kind.value, cf.expr) for cf in canonical_forms(F)]
    forms += [("random", R) for R in random_cubics(F, randoms, seed)]
    return F, forms


def suite_identities(seed: int) -> SuiteResult:
    res = SuiteResult("identities")
    for q in (2, 3, 4, 5, 7):
        F, forms = _corpus(q, seed, 3)
        for label, R in forms:
            Rn, _ = normalize_cubic(R)
            for n in (1, 2):
                # breakdown raises InvariantError if either identity fails
                bd = breakdown(Rn, n)
                ok = bd.n == n
                if q % 2:
                    ok = ok and count_points(Rn, n, RESOLVENT).N == count_points(Rn, n, DISCRIMINANT).N
                res.record(ok, f"q={q} {label} {R} n={n}")
    return res


def suite_oracle(seed: int) -> SuiteResult:
    res = SuiteResult("oracle")
    for q in (2, 3, 4, 5, 7):
        F, forms = _corpus(q, seed, 3)
        for label, R in forms:
            cls = classify(R)
            for n in (2, 3):
                b = count_brute(R, n).value
                ok = b == count_capelli(R, n).value == count_inversion(R, n).value
                fr = dispatch(R, n, cls)
                if fr.kind != BOUND:
                    ok = ok and fr.value == b
                else:
                    ok = ok and fr.contains(b)
                res.record(ok, f"q={q} {label} {R} n={n}")
    rng = random.Random(f"equiv:{seed}")
    for q in (3, 5):
        F = field_of_order(q)
        for R in random_cubics(F, 3, seed):
            A, B = random_mobius(F, rng), random_mobius(F, rng)
            S = post_compose(B, pre_compose(R, A))
            res.record(count_inversion(S, 2).value == count_inversion(R, 2).value, f"q={q} {R} under A,B")
    return res


def suite_bounds(seed: int) -> SuiteResult:
    res = SuiteResult("bounds")
    cases = []
    for q in (5, 7):
        cases += random_four_ram(field_of_order(q), 3, seed)
    for q in (2, 4):
        cases += genus_one_char2(field_of_order(q), 2, seed)
    for R in cases:
        cls = classify(R)
        for n in (1, 2):
            hw = hasse_weil_check(R, n)
            ok = hw.passed
            if n > 1:
                ok = ok and dispatch(R, n, cls).contains(count_inversion(R, n).value)
            res.record(ok, f"q={R.field.q} {R} n={n}")
    return res


def suite_tsr(seed: int) -> SuiteResult:
    res = SuiteResult("tsr")
    for q in (2, 3, 4, 5, 7):
        res.record(tsr_count_formula(2, q).value == tsr_count_sum(2, q).value, f"m=2 q={q}")
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "identities": suite_identities,
    "oracle": suite_oracle,
    "bounds": suite_bounds,
    "tsr": suite_tsr,
}


def run_suites(names: list[str], seed: int) -> list[SuiteResult]:
    return [SUITES[n](seed) for n in names]


__all__ = ["SuiteResult", "SUITES", "run_suites"]
