"""Command-line interface: ``densityforge <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 unparsable input,
3 violated precondition, 4 oracle size bound.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import analytic as an
from .density import GlobalPlaceData, PlaceKind, den_eta_local, den_global, den_local
from .errors import PreconditionViolated, SizeBound
from .exactpoly import IntPoly1, IntPoly2
from .partitions import Partition
from .springer import kostka_foulkes, modified_kf
from .subcount import SubTable, set_default_table, sub_poly
from .verify import SUITES, run_suites

CACHE_ENV = "DENSITYFORGE_CACHE"
FORMATS = ("plain", "csv", "json", "latex")


class InputError(Exception):
    """Input that could not be parsed."""


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise InputError(f"bad partition {text!r}: {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad integer list {text!r}") from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from None


# ---------------------------------------------------------------------------
# formatting


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def format_poly2(P: IntPoly2, label: str, fmt: str, title: str = "Den") -> str:
    if fmt == "plain":
        return P.to_text()
    if fmt == "csv":
        return _csv([["lambda", "e_q", "e_T", "coeff"]] + [[label, eq, eT, c] for eq, eT, c in P.to_json()])
    if fmt == "json":
        return json.dumps({"lambda": label, "poly": P.to_json(), "text": P.to_text()})
    return f"\\mathrm{{{title}}}(T, Q_{{({label})}}) & {P.to_latex()} \\\\"


def format_poly1(P: IntPoly1, label: str, fmt: str, extra: dict | None = None) -> str:
    if fmt == "plain":
        return P.to_text()
    if fmt == "csv":
        extra = extra or {}
        head = ["lambda", *extra.keys(), f"e_{P.var}", "coeff"]
        return _csv([head] + [[label, *extra.values(), e, c] for e, c in P.to_pairs()])
    if fmt == "json":
        return json.dumps({"lambda": label, **(extra or {}), "poly": P.to_pairs(), "text": P.to_text()})
    return f"({label}) & {P.to_text().replace('*', ' ')} \\\\"


# ---------------------------------------------------------------------------
# subcommands


def cmd_sub(args) -> str:
    lam = _partition(args.lam)
    label = lam.serialize()
    a_values = [args.a] if args.a is not None else range(lam.size + 1)
    lines = []
    for a in a_values:
        P = sub_poly(a, lam)
        text = format_poly1(P, label, args.format, {"a": a})
        if args.format == "plain" and args.a is None:
            text = f"a={a}: {text}"
        lines.append(text)
    if args.format == "csv" and len(lines) > 1:
        lines = [lines[0]] + [ln.split("\n", 1)[1] for ln in lines[1:] if "\n" in ln]
    return "\n".join(lines)


def cmd_den(args) -> str:
    lam = _partition(args.lam)
    kind = PlaceKind(args.kind)
    P = den_eta_local(kind, lam) if args.twisted else den_local(kind, lam)
    if args.q is not None:
        return format_poly1(P.eval_q(args.q), lam.serialize(), args.format, {"q": args.q})
    return format_poly2(P, lam.serialize(), args.format, "Den_\\eta" if args.twisted else "Den")


def cmd_den_global(args) -> str:
    try:
        G = GlobalPlaceData.from_json(_read_json(args.file))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed place data: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, PreconditionViolated):
            raise
        raise InputError(str(exc)) from None
    P = den_global(G, twisted=args.twisted)
    label = ";".join(f"{p.kind.value}:{p.deg}:{p.lam.serialize()}" for p in G.places) or "-"
    if args.format == "plain":
        return f"{P.to_text()}\nat q={G.q}: {P.eval_q(G.q).to_text()}"
    return format_poly2(P, label, args.format, "Den_\\eta" if args.twisted else "Den")


def cmd_kf(args) -> str:
    lam, mu = _partition(args.lam), _partition(args.mu)
    K, Kt = kostka_foulkes(lam, mu), modified_kf(lam, mu)
    if args.format == "json":
        return json.dumps({"lambda": lam.serialize(), "mu": mu.serialize(),
                           "K": K.to_pairs(), "K_modified": Kt.to_pairs()})
    if args.format == "csv":
        rows = [["lambda", "mu", "which", "e_t", "coeff"]]
        rows += [[lam.serialize(), mu.serialize(), "K", e, c] for e, c in K.to_pairs()]
        rows += [[lam.serialize(), mu.serialize(), "K_modified", e, c] for e, c in Kt.to_pairs()]
        return _csv(rows)
    if args.format == "latex":
        return f"({lam.serialize()}) & ({mu.serialize()}) & {K.to_text()} & {Kt.to_text()} \\\\"
    return f"K = {K.to_text()}\nK_modified = {Kt.to_text()}"


def _load_curve(path: str) -> an.CurveData:
    obj = _read_json(path)
    return an.CurveData.from_json(obj)


def _load_bundle(path: str | None, C: an.CurveData) -> an.BundleData:
    if path is None:
        raise PreconditionViolated("this form needs --bundle")
    try:
        return an.BundleData.from_json(_read_json(path), C)
    except KeyError as exc:
        raise InputError(f"bundle JSON lacks {exc}") from None


def cmd_analytic(args) -> str:
    C = _load_curve(args.curve)
    r = args.r
    if args.form == "trace":
        lhs, rhs = an.trace_identity_check(C, args.deg_n, args.eta_n, r)
        rows = [("lhs", lhs), ("rhs", rhs)]
    else:
        E = _load_bundle(args.bundle, C)
        d0 = args.d0
        if args.form == "key-degree":
            rows = [("key-degree", an.key_degree_rhs(C, E, d0, r))]
        elif args.form == "off-center":
            n = args.n if args.n is not None else E.rank + 1
            rows = [("off-center", an.off_center_rhs(C, E, C.deg_omega - d0, n, r))]
        else:
            E0 = an.BundleData(1, C.deg_omega - d0, C.deg_omega)
            rows = [("corank-one", an.corank_one_rhs(C, an.CorankOneData(E0, E), r))]
    if args.format == "json":
        return json.dumps({name: {"exact": v.to_text(), "float": an.render_float(v, C.q)} for name, v in rows})
    if args.format == "csv":
        return _csv([["form", "exact", "float"]] + [[name, v.to_text(), repr(an.render_float(v, C.q))] for name, v in rows])
    return "\n".join(f"{name}: {v.to_text()}  (~ {an.render_float(v, C.q):.12g} at q={C.q})" for name, v in rows)


def cmd_verify(args) -> tuple[str, int]:
    names = SUITES if args.suite == "all" else (args.suite,)
    qs = _int_list(args.q)
    rs = _int_list(args.r)
    if not qs:
        raise InputError("--q needs at least one prime power")
    start = time.time()
    checks = run_suites(names, args.max_size, qs, rs)
    lines = []
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status}  {c.suite:<9} {c.name:<{width}}  cases={c.cases}")
        if not c.passed:
            lines.append(f"      counterexample: {c.failure}")
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    print(f"verify finished in {time.time() - start:.1f}s", file=sys.stderr)
    return "\n".join(lines), 0 if failed == 0 else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="densityforge", description="Exact density polynomials and their identities.")
    p.add_argument("--cache", help=f"Sub table cache file (default: ${CACHE_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=FORMATS, default="plain")

    sp = sub.add_parser("sub", help="Sub_{a,lambda}(t)")
    sp.add_argument("--lambda", dest="lam", required=True, help="partition such as 2,1")
    sp.add_argument("--a", type=int, help="submodule length (all lengths when omitted)")
    add_format(sp)

    sp = sub.add_parser("den", help="local density polynomial")
    sp.add_argument("--kind", choices=[k.value for k in PlaceKind], required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--twisted", action="store_true")
    sp.add_argument("--q", type=int, help="evaluate at this q")
    add_format(sp)

    sp = sub.add_parser("den-global", help="global density polynomial from place JSON")
    sp.add_argument("file")
    sp.add_argument("--twisted", action="store_true")
    add_format(sp)

    sp = sub.add_parser("kf", help="Kostka-Foulkes and modified Kostka-Foulkes polynomials")
    sp.add_argument("--lambda", dest="lam", required=True, help="shape")
    sp.add_argument("--mu", required=True, help="content")
    add_format(sp)

    sp = sub.add_parser("analytic", help="normalized derivatives of Eisenstein-side expressions")
    sp.add_argument("--curve", required=True, help="curve JSON")
    sp.add_argument("--bundle", help="bundle JSON: rank, deg and places")
    sp.add_argument("--form", choices=("key-degree", "off-center", "corank-one", "trace"), required=True)
    sp.add_argument("--n", type=int, help="rank n (defaults to bundle rank + 1)")
    sp.add_argument("--r", type=int, default=0)
    sp.add_argument("--d0", type=int, default=0, help="d(E0) = deg_omega - deg(E0)")
    sp.add_argument("--deg-n", type=int, default=0, help="deg of the conductor divisor (trace form)")
    sp.add_argument("--eta-n", type=int, choices=(1, -1), default=1, help="sign eta(N) (trace form)")
    add_format(sp)

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--max-size", type=int, default=4)
    sp.add_argument("--q", default="3,5", help="comma-separated residue field sizes")
    sp.add_argument("--r", default="0,1,2,3,4,5", help="comma-separated derivative orders")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_path = args.cache or os.environ.get(CACHE_ENV)
    table = SubTable(cache_path) if cache_path else None
    if table is not None:
        set_default_table(table)
    status = 0
    try:
        if args.command == "verify":
            text, status = cmd_verify(args)
        else:
            handler = {"sub": cmd_sub, "den": cmd_den, "den-global": cmd_den_global,
                       "kf": cmd_kf, "analytic": cmd_analytic}[args.command]
            text = handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeBound as exc:
        print(f"size bound: {exc}", file=sys.stderr)
        return 4
    except (PreconditionViolated, ValueError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return 3
    print(text)
    if table is not None:
        table.save()
    return status


if __name__ == "__main__":
    sys.exit(main())
