"""Command-line interface: ``cubicirr {count,formula,classify,tsr,verify,sweep}``.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 a verification suite failed, 2 invalid input, 3 resource limit,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from .counting import METHODS, breakdown, count
from .errors import ClassificationError, InvariantError, LimitError, ValidationError
from .field import FieldSpec, enumeration_limit, field_new, get_limit
from .formulas import BOUND, dispatch
from .poly import format_poly
from .ratexpr import Classification, RatExpr, canonical_forms, classify, normalize_cubic, parse_ratexpr
from .tsr import tsr_count_formula, tsr_count_sum
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAILED, EXIT_VALIDATION, EXIT_LIMIT, EXIT_INVARIANT = 0, 1, 2, 3, 4

KEY_ORDER = ["suite", "passed", "failed", "failures",
             "p", "k", "q", "g", "h", "n", "method", "value", "kind", "center", "radius",
             "reason", "breakdown", "class", "params", "agree", "elapsed_ms", "seed"]


# ---------------------------------------------------------------------------
# rendering


def _jsonable(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def _ordered(row: dict) -> dict:
    keys = [k for k in KEY_ORDER if k in row] + [k for k in row if k not in KEY_ORDER]
    return {k: _jsonable(row[k]) for k in keys if row[k] is not None}


def _flat(row: dict) -> dict:
    out = {}
    for k, v in _ordered(row).items():
        if k == "breakdown":
            for bk, bv in v.items():
                out[f"breakdown.{bk}"] = bv
        elif isinstance(v, (dict, list)):
            out[k] = json.dumps(v, sort_keys=True)
        else:
            out[k] = v
    return out


def render(rows: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return "\n".join(json.dumps(_ordered(r)) for r in rows) + "\n"
    flat = [_flat(r) for r in rows]
    cols: list[str] = []
    for r in flat:
        cols += [c for c in r if c not in cols]
    rank = {k: i for i, k in enumerate(KEY_ORDER)}
    cols.sort(key=lambda c: rank.get(c.split(".")[0], len(rank)))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        return buf.getvalue()
    cells = [[str(r.get(c, "")) for c in cols] for r in flat]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# request helpers


def _field(args) -> FieldSpec:
    return field_new(args.p, args.k)


def _expr(args, F: FieldSpec) -> RatExpr:
    return parse_ratexpr(f"{args.g} / {args.h}", F)


def _echo(F: FieldSpec, R: RatExpr | None = None, n: int | None = None) -> dict:
    row: dict[str, Any] = {"p": F.p, "k": F.k, "q": F.q}
    if R is not None:
        row["g"] = format_poly(R.g)
        row["h"] = format_poly(R.h)
    if n is not None:
        row["n"] = n
    return row


def _mobius_list(M) -> list[int] | None:
    return None if M is None else [M.a, M.b, M.c, M.d]


def _class_fields(cls: Classification) -> dict:
    params = {}
    if cls.param is not None:
        params["param"] = cls.param
    if cls.canonical is not None:
        params["canonical"] = str(cls.canonical)
    if cls.A is not None:
        params["A"] = _mobius_list(cls.A)
        params["B"] = _mobius_list(cls.B)
    return {"class": cls.label, "params": params or None}


def _formula_fields(fr) -> dict:
    row: dict[str, Any] = {"kind": fr.kind, "reason": fr.reason}
    if fr.kind == BOUND:
        row["center"] = fr.center
        row["radius"] = round(fr.radius, 9)
    else:
        row["value"] = fr.value
    return row


# ---------------------------------------------------------------------------
# commands


def cmd_count(args) -> tuple[list[dict], int]:
    F = _field(args)
    R = _expr(args, F)
    res = count(R, args.n, args.method)
    row = _echo(F, R, args.n)
    row.update(method=res.method, value=res.value)
    if res.method == "inversion":
        row["breakdown"] = breakdown(normalize_cubic(R)[0], args.n).as_dict()
    return [row], EXIT_OK


def cmd_formula(args) -> tuple[list[dict], int]:
    F = _field(args)
    R = _expr(args, F)
    cls = classify(R)
    row = _echo(F, R, args.n)
    row["method"] = "formula"
    row.update(_formula_fields(dispatch(R, args.n, cls)))
    row.update(_class_fields(cls))
    return [row], EXIT_OK


def cmd_classify(args) -> tuple[list[dict], int]:
    F = _field(args)
    R = _expr(args, F)
    row = _echo(F, R)
    row.update(_class_fields(classify(R)))
    return [row], EXIT_OK


def cmd_tsr(args) -> tuple[list[dict], int]:
    F = _field(args)
    row = _echo(F, n=args.m)
    row["method"] = args.method
    if args.method == "formula":
        row["value"] = tsr_count_formula(args.m, F.q).value
    elif args.method == "sum":
        row["value"] = tsr_count_sum(args.m, F.q).value
    else:
        a = tsr_count_formula(args.m, F.q).value
        b = tsr_count_sum(args.m, F.q).value
        row["value"] = a
        row["params"] = {"formula": a, "sum": b}
        row["agree"] = a == b
        if a != b:
            return [row], EXIT_FAILED
    return [row], EXIT_OK


def cmd_verify(args) -> tuple[list[dict], int]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rows = []
    status = EXIT_OK
    for res in run_suites(names, args.seed):
        rows.append({"suite": res.name, **res.as_dict(), "seed": args.seed})
        if res.failed:
            status = EXIT_FAILED
        print(f"{res.name}: {res.passed} passed, {res.failed} failed", file=sys.stderr)
    return rows, status


def _n_range(text: str) -> list[int]:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            try:
                return list(range(int(lo), int(hi) + 1))
            except ValueError:
                break
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ValidationError(f"bad --n-range {text!r}; use e.g. 2..4") from None


def cmd_sweep(args) -> tuple[list[dict], int]:
    F = _field(args)
    if args.forms != "all-canonical":
        raise ValidationError("--forms supports only all-canonical")
    rows = []
    status = EXIT_OK
    for cf in canonical_forms(F):
        cls = classify(cf.expr)
        for n in _n_range(args.n_range):
            fr = dispatch(cf.expr, n, cls)
            row = _echo(F, cf.expr, n)
            row["method"] = "formula"
            row.update(_formula_fields(fr))
            row.update(_class_fields(cls))
            try:
                oracle = count(cf.expr, n, "inversion").value
            except LimitError:
                oracle = None
            if oracle is not None:
                agree = fr.contains(oracle)
                row["params"] = dict(row.get("params") or {}, oracle=oracle)
                row["agree"] = agree
                if not agree:
                    status = EXIT_FAILED
            rows.append(row)
    return rows, status


# ---------------------------------------------------------------------------


def _add_field(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True, help="field characteristic")
    p.add_argument("--k", type=int, default=1, help="extension degree over F_p")


def _add_expr(p: argparse.ArgumentParser) -> None:
    p.add_argument("--g", required=True, help='numerator, e.g. "x^3+2*x" or "1,0,2,0"')
    p.add_argument("--h", default="1", help="denominator (default 1)")


def _add_common(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--format", choices=["json", "csv", "table"], default=default("json"))
    p.add_argument("--limit", type=int, default=default(None), help="enumeration limit (field elements)")
    p.add_argument("--out", default=default(None), help="also write output to this file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubicirr", description=__doc__.split("\n")[0])
    _add_common(ap, lambda v: v)
    # the same options are accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, lambda v: argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)  # noqa: E731

    p = add("count", help="count f with f_R irreducible")
    _add_field(p)
    _add_expr(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=sorted(METHODS), default="inversion")
    p.set_defaults(func=cmd_count)

    p = add("formula", help="closed-form value or bound")
    _add_field(p)
    _add_expr(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_formula)

    p = add("classify", help="equivalence class of R")
    _add_field(p)
    _add_expr(p)
    p.set_defaults(func=cmd_classify)

    p = add("tsr", help="irreducible order-3 TSR count")
    _add_field(p)
    p.add_argument("--m", type=int, required=True, help="register length")
    p.add_argument("--method", choices=["formula", "sum", "both"], default="formula")
    p.set_defaults(func=cmd_tsr)

    p = add("verify", help="run property suites")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = add("sweep", help="formula vs oracle over canonical forms")
    _add_field(p)
    p.add_argument("--n-range", default="2..4")
    p.add_argument("--forms", default="all-canonical")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    limit = args.limit if args.limit is not None else get_limit()
    t0 = time.perf_counter()
    try:
        with enumeration_limit(limit):
            rows, status = args.func(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except LimitError as e:
        print(f"limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (InvariantError, ClassificationError) as e:
        print(f"internal: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    for r in rows:
        r["elapsed_ms"] = elapsed
    text = render(rows, args.format)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
