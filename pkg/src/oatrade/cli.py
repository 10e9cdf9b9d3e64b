"""Command line interface: ``oatrade {matrix,rank,basis,verify,decompose,reduce}``.

Exit status is 0 when every check in the invocation passed, 1 when a check
failed, and 2 for usage, parse, size-guard and I/O errors.
"""
from __future__ import annotations

import argparse
import sys
from math import comb
from pathlib import Path
from typing import Sequence

from . import formats
from .exact_linalg import DEFAULT_PRIME, ExactMatrix, exact_rank, multiply, rank_mod_p
from .formats import ParseError
from .inclusion_matrix import DEFAULT_MAX_ONES, SizeGuardError, build_matrix, reduce_column
from .oa import oa_to_frequency, verify_frequency, verify_oa_direct
from .trades import (
    NotATradeError,
    basis_indices,
    basis_intercalate,
    decompose,
    frequency_to_trade,
    to_polynomial,
    trade_to_frequency,
    verify_trade,
)
from .tuples import check_tuple, format_rowkey, format_tuple, parse_tuple

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def rank_formula(t: int, v: int, k: int) -> int:
    return sum(comb(k, i) * (v - 1) ** i for i in range(t + 1))


class Output:
    """Collects output lines; text mode prints them as-is, records mode as key=value."""

    def __init__(self, args):
        self.records = args.format == "records"
        self.stream = open(args.out, "w") if getattr(args, "out", None) else sys.stdout

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def record(self, text: str | None, **fields) -> None:
        if self.records:
            self.line(" ".join(f"{k}={v}" for k, v in fields.items()))
        elif text is not None:
            self.line(text)

    def close(self) -> None:
        if self.stream is not sys.stdout:
            self.stream.close()


def _pf(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _check_tvk(t, v, k) -> None:
    if t is None or v is None or k is None:
        raise UsageError("--t, --v and --k are required")
    if v < 2:
        raise UsageError(f"--v must be at least 2, got {v}")
    if not 1 <= t <= k:
        raise UsageError(f"need 1 <= t <= k, got t={t}, k={k}")


def _read_input(args) -> str:
    if not args.inp:
        raise UsageError("--in is required")
    if args.inp == "-":
        return sys.stdin.read()
    return Path(args.inp).read_text()


def _detect_kind(text: str) -> str:
    stripped = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if stripped and stripped[0].startswith("OA"):
        return "oa"
    if any(":" in ln for ln in stripped):
        return "freq"
    blank_split = any(not ln.strip() for ln in text.strip().splitlines())
    return "trade" if blank_split else "oa"


# -- subcommands -----------------------------------------------------------

def cmd_matrix(args) -> int:
    _check_tvk(args.t, args.v, args.k)
    m = build_matrix(args.t, args.v, args.k, max_ones=args.max_ones)
    out = Output(args)
    try:
        if args.format == "mm":
            formats.write_matrix_market(m, out.stream)
        elif args.format == "records":
            for r, row in enumerate(m.rows):
                out.line(f"row={r} key={format_rowkey(m.row_key(r))} cols={','.join(map(str, row))}")
        else:
            out.stream.write(formats.dense_text(m, labels=True))
    finally:
        out.close()
    summary = f"M_{m.t}({m.v},{m.k}): rows={m.n_rows} cols={m.n_cols} ones={m.n_ones}"
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_rank(args) -> int:
    _check_tvk(args.t, args.v, args.k)
    m = build_matrix(args.t, args.v, args.k, max_ones=args.max_ones)
    r = exact_rank(m)
    f = rank_formula(args.t, args.v, args.k)
    ok = r == f
    status = "MATCH" if ok else "MISMATCH"
    out = Output(args)
    fields = dict(t=args.t, v=args.v, k=args.k, rank=r, formula=f, nullity=m.n_cols - r)
    if args.mod_p:
        rp = rank_mod_p(m, args.p)
        fields.update(p=args.p, rank_mod_p=rp)
    out.record(f"rank={r} formula={f} nullity={m.n_cols - r} {status}", **fields, status=status)
    if args.mod_p and not out.records:
        out.line(f"rank_mod_p={fields['rank_mod_p']} p={args.p}")
    out.close()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_basis(args) -> int:
    if args.t is None or args.v is None:
        raise UsageError("--t and --v are required")
    if args.t < 1 or args.v < 2:
        raise UsageError(f"need t >= 1 and v >= 2, got t={args.t}, v={args.v}")
    t, v = args.t, args.v
    m = build_matrix(t, v, t + 1, max_ones=args.max_ones)
    vectors = []
    out = Output(args)
    annihilated = True
    for idx in basis_indices(t, v):
        B = basis_intercalate(idx, v)
        vectors.append(B)
        zero = not any(multiply(m, B))
        annihilated &= zero
        name = f"B_({format_tuple(idx)})"
        out.record(f"{name} = {to_polynomial(B)}", index=format_tuple(idx), support=B.support_size,
                   annihilated="yes" if zero else "no")
    null = m.n_cols - exact_rank(m)
    stacked = exact_rank(ExactMatrix.from_vectors(vectors))
    ok = annihilated and stacked == len(vectors) and len(vectors) == null == (v - 1) ** (t + 1)
    status = "MATCH" if ok else "MISMATCH"
    out.record(
        f"count={len(vectors)} rank={stacked} nullity={null} {status}",
        count=len(vectors), rank=stacked, nullity=null, status=status,
    )
    out.close()
    return EXIT_OK if ok else EXIT_FAIL


def _load_vector(args, text: str, kind: str):
    """Return (frequency vector, trade or None)."""
    if kind == "trade":
        trade = formats.parse_trade(text)
        return trade_to_frequency(trade), trade
    if kind == "freq":
        return formats.parse_frequency(text, v=args.v), None
    raise UsageError(f"cannot use a {kind} file here")


def cmd_verify(args) -> int:
    text = _read_input(args)
    kind = args.kind if args.kind != "auto" else _detect_kind(text)
    out = Output(args)
    ok = True
    try:
        if kind == "oa":
            a = formats.parse_oa(text, t=args.t, v=args.v, lam=args.lam)
            direct = verify_oa_direct(a)
            matrix = verify_frequency(oa_to_frequency(a), a.t, a.lam, max_ones=args.max_ones)
            hist = ",".join(f"{n}x{c}" for n, c in sorted(direct.histogram.items()))
            detail = ""
            if direct.first_failure:
                key, n = direct.first_failure
                detail = f" first={format_rowkey(key)} count={n}"
            out.record(f"direct count (t={a.t}, lambda={a.lam}): {_pf(direct.passed)} counts={hist}{detail}",
                       check="direct", t=a.t, v=a.v, k=a.k, **{"lambda": a.lam},
                       result=_pf(direct.passed), counts=hist)
            out.record(f"matrix equation M_{a.t}({a.v},{a.k})F = {a.lam}*1: {_pf(matrix.holds)}"
                       f" nonnegative={'yes' if matrix.nonnegative else 'no'}",
                       check="matrix", result=_pf(matrix.holds),
                       nonnegative="yes" if matrix.nonnegative else "no")
            ok = direct.passed and matrix.holds
        elif kind == "trade":
            trade = formats.parse_trade(text)
            report = verify_trade(trade)
            details = {
                "same shape": ",".join(f"({r},{c})" for r, c in report.shape_mismatch),
                "disjoint": ",".join(f"({r},{c})" for r, c in report.clashing_cells),
                "row balance": ",".join(f"row {r}" for r in report.unbalanced_rows),
                "column balance": ",".join(f"column {c}" for c in report.unbalanced_cols),
            }
            for n, (name, passed) in enumerate(report.conditions.items(), start=1):
                extra = "" if passed else f" at {details[name]}"
                out.record(f"condition {n} ({name}): {_pf(passed)}{extra}",
                           condition=n, name=name.replace(" ", "_"), result=_pf(passed))
            F = trade_to_frequency(trade)
            m = build_matrix(2, trade.order, 3, max_ones=args.max_ones)
            null = not any(multiply(m, F))
            out.record(f"null space M_2({trade.order},3)T = 0: {_pf(null)}", check="nullspace", result=_pf(null))
            out.record(f"volume={report.volume}", volume=report.volume)
            ok = report.passed and null
        elif kind == "freq":
            F = formats.parse_frequency(text, v=args.v)
            t = args.t if args.t is not None else F.k - 1
            lam = args.lam if args.lam is not None else 0
            if not 0 <= t <= F.k:
                raise UsageError(f"need 0 <= t <= k, got t={t}, k={F.k}")
            check = verify_frequency(F, t, lam, max_ones=args.max_ones)
            detail = ""
            if check.first_failure:
                key, val = check.first_failure
                detail = f" first={format_rowkey(key)} value={val}"
            out.record(f"matrix equation M_{t}({F.v},{F.k})F = {lam}*1: {_pf(check.holds)}"
                       f" nonnegative={'yes' if check.nonnegative else 'no'}{detail}",
                       check="matrix", t=t, v=F.v, k=F.k, **{"lambda": lam}, result=_pf(check.holds),
                       nonnegative="yes" if check.nonnegative else "no")
            ok = check.holds
        else:
            raise UsageError(f"unknown kind {kind!r}")
    finally:
        out.close()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_decompose(args) -> int:
    text = _read_input(args)
    kind = args.kind if args.kind != "auto" else _detect_kind(text)
    F, _ = _load_vector(args, text, kind)
    t = args.t if args.t is not None else F.k - 1
    try:
        S = decompose(F, t, max_ones=args.max_ones)
    except NotATradeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = Output(args)
    for c, idx in S.terms:
        out.record(f"{c:+d} · B_({format_tuple(idx)})", coef=c, index=format_tuple(idx))
    n = len(S)
    out.record(f"{n} term{'s' if n != 1 else ''}", terms=n)
    out.record("reconstruction: EXACT", reconstruction="EXACT")
    out.close()
    if args.emit_dir:
        if t != 2:
            raise UsageError("--emit-dir writes Latin trade files and needs t = 2")
        target = Path(args.emit_dir)
        target.mkdir(parents=True, exist_ok=True)
        for c, idx in S.terms:
            B = basis_intercalate(idx, F.v)
            name = f"B_{'_'.join(map(str, idx))}.txt"
            (target / name).write_text(formats.format_trade(frequency_to_trade(B)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    if not args.tuple:
        raise UsageError("--tuple is required")
    try:
        x = parse_tuple(args.tuple)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    k = args.k if args.k is not None else len(x)
    v = args.v if args.v is not None else max(2, max(x) + 1)
    if args.t is None:
        raise UsageError("--t is required")
    if not 0 <= args.t <= k:
        raise UsageError(f"need 0 <= t <= k, got t={args.t}, k={k}")
    try:
        x = check_tuple(x, v, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    combo = reduce_column(x, args.t)
    m = build_matrix(args.t, v, k, max_ones=args.max_ones)
    residual = m.evaluate(list(combo) + [(-1, x)])
    exact = not any(residual)
    out = Output(args)
    for c, y in combo:
        out.record(f"{c:+d} · C_({format_tuple(y)})", coef=c, column=format_tuple(y))
    if len(combo) == 1 and combo.terms[0] == (1, x):
        out.record("1 term (identity)", terms=1, identity="yes")
    else:
        out.record(f"{len(combo)} terms", terms=len(combo))
    out.record(f"verified: {'EXACT' if exact else 'FAILED'}", verified="EXACT" if exact else "FAILED")
    out.close()
    return EXIT_OK if exact else EXIT_FAIL


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=int)
    common.add_argument("--v", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--lambda", dest="lam", type=int)
    common.add_argument("--in", dest="inp", metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--max-ones", type=int, default=DEFAULT_MAX_ONES,
                        help="refuse to build matrices with more ones than this")

    parser = argparse.ArgumentParser(prog="oatrade", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common], help="write M_t(v,k)")
    p.add_argument("--format", choices=["dense", "mm", "records"], default="dense")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("rank", parents=[common], help="exact rank against the closed form")
    p.add_argument("--format", choices=["text", "records"], default="text")
    p.add_argument("--mod-p", action="store_true", help="also report the rank over GF(p)")
    p.add_argument("--p", type=int, default=DEFAULT_PRIME)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("basis", parents=[common], help="intercalate basis of the null space of M_t(v,t+1)")
    p.add_argument("--format", choices=["text", "records"], default="text")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", parents=[common], help="verify an OA, trade or frequency vector file")
    p.add_argument("--format", choices=["text", "records"], default="text")
    p.add_argument("--kind", choices=["auto", "oa", "trade", "freq"], default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="decompose a trade into basis intercalates")
    p.add_argument("--format", choices=["text", "records"], default="text")
    p.add_argument("--kind", choices=["auto", "trade", "freq"], default="auto")
    p.add_argument("--emit-dir", metavar="DIR", help="write each intercalate as a trade file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reduce", parents=[common], help="express a column through weight <= t columns")
    p.add_argument("--format", choices=["text", "records"], default="text")
    p.add_argument("--tuple", help="column tuple, e.g. 1,1,1")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ParseError, SizeGuardError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
