"""Text formats: partial Latin squares, trades, frequency vectors, OAs, matrices.

Symbols are decimal non-negative integers and "." marks an empty cell. Parse
errors carry 1-based line and field numbers.
"""
from __future__ import annotations

import re
from typing import TextIO

from .frequency import FrequencyVector
from .inclusion_matrix import InclusionMatrix
from .oa import OrthogonalArray
from .trades import LatinTrade, PartialLatinSquare
from .tuples import format_rowkey, format_tuple

MM_HEADER = "%%MatrixMarket matrix coordinate integer general"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: int | None = None):
        self.line = line
        self.field = field
        where = ""
        if line is not None:
            where = f"line {line}"
            if field is not None:
                where += f", field {field}"
            where += ": "
        super().__init__(where + message)


def _symbol(token: str, line: int, field: int) -> int:
    if not token.isdigit():
        raise ParseError(f"expected a non-negative integer, got {token!r}", line, field)
    return int(token)


# -- partial Latin squares and trades --------------------------------------

def _parse_square_block(lines: list[tuple[int, str]]) -> PartialLatinSquare:
    v = len(lines)
    rows = []
    for lineno, text in lines:
        tokens = text.split()
        if len(tokens) != v:
            raise ParseError(f"expected {v} fields, found {len(tokens)}", lineno)
        row = []
        for f, tok in enumerate(tokens, start=1):
            if tok == ".":
                row.append(None)
            else:
                s = _symbol(tok, lineno, f)
                if s >= v:
                    raise ParseError(f"symbol {s} is outside [0, {v})", lineno, f)
                row.append(s)
        rows.append(row)
    try:
        return PartialLatinSquare.from_rows(rows)
    except ValueError as exc:
        raise ParseError(str(exc), lines[0][0]) from None


def _blocks(text: str) -> list[list[tuple[int, str]]]:
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            blocks[-1].append((lineno, line))
        elif blocks[-1]:
            blocks.append([])
    return [b for b in blocks if b]


def parse_square(text: str) -> PartialLatinSquare:
    blocks = _blocks(text)
    if len(blocks) != 1:
        raise ParseError(f"expected one square, found {len(blocks)} blocks")
    return _parse_square_block(blocks[0])


def format_square(P: PartialLatinSquare) -> str:
    return "\n".join(
        " ".join("." if s is None else str(s) for s in row) for row in P.to_rows()
    ) + "\n"


def parse_trade(text: str) -> LatinTrade:
    blocks = _blocks(text)
    if len(blocks) != 2:
        raise ParseError(f"a trade file needs two blocks separated by a blank line, found {len(blocks)}")
    P = _parse_square_block(blocks[0])
    Q = _parse_square_block(blocks[1])
    if P.order != Q.order:
        raise ParseError(f"blocks have orders {P.order} and {Q.order}", blocks[1][0][0])
    return LatinTrade(P, Q)


def format_trade(T: LatinTrade) -> str:
    return format_square(T.first) + "\n" + format_square(T.second)


# -- frequency vectors -----------------------------------------------------

_FREQ_HEADER = re.compile(r"^\s*#\s*v=(\d+)\s+k=(\d+)\s*$")


def parse_frequency(text: str, v: int | None = None) -> FrequencyVector:
    """Lines "x_1,...,x_k : c"; duplicates are summed; "#" starts a comment.

    An optional "# v=<v> k=<k>" comment fixes the dimensions. Otherwise the
    alphabet is taken as one more than the largest symbol (at least 2).
    """
    terms = []
    k = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = _FREQ_HEADER.match(line)
        if m:
            v = int(m.group(1)) if v is None else v
            k = int(m.group(2))
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'x_1,...,x_k : c'", lineno)
        lhs, rhs = line.split(":", 1)
        fields = [f.strip() for f in lhs.split(",")]
        x = tuple(_symbol(f, lineno, i) for i, f in enumerate(fields, start=1))
        if k is None:
            k = len(x)
        elif len(x) != k:
            raise ParseError(f"tuple has length {len(x)}, earlier lines have {k}", lineno)
        try:
            c = int(rhs.strip())
        except ValueError:
            raise ParseError(f"coefficient {rhs.strip()!r} is not an integer", lineno, len(x) + 1) from None
        terms.append((lineno, x, c))
    if k is None:
        raise ParseError("no entries; cannot determine k")
    top = max((max(x) for _, x, _ in terms), default=0)
    if v is None:
        v = max(2, top + 1)
    out = FrequencyVector(v, k)
    for lineno, x, c in terms:
        if max(x) >= v:
            raise ParseError(f"symbol {max(x)} is outside [0, {v})", lineno)
        out.add(x, c)
    return out


def format_frequency(F: FrequencyVector) -> str:
    return f"# v={F.v} k={F.k}\n" + "".join(f"{format_tuple(x)} : {c}\n" for x, c in F.items())


# -- orthogonal arrays -----------------------------------------------------

_OA_HEADER = re.compile(r"^OA\s+t=(\d+)\s+v=(\d+)\s+k=(\d+)\s+lambda=(\d+)\s*$")


def parse_oa(text: str, t: int | None = None, v: int | None = None, lam: int | None = None) -> OrthogonalArray:
    """Parse an OA file; explicit arguments override the header."""
    lines = text.splitlines()
    header = {}
    start = 0
    for i, line in enumerate(lines):
        if line.strip():
            if line.strip().startswith("OA"):
                m = _OA_HEADER.match(line.strip())
                if not m:
                    raise ParseError("malformed header; expected 'OA t=<t> v=<v> k=<k> lambda=<l>'", i + 1)
                header = dict(zip(("t", "v", "k", "lam"), map(int, m.groups())))
                start = i + 1
            break
    rows = []
    k = header.get("k")
    for lineno, line in enumerate(lines[start:], start=start + 1):
        tokens = line.split()
        if not tokens:
            continue
        if k is None:
            k = len(tokens)
        if len(tokens) != k:
            raise ParseError(f"expected {k} fields, found {len(tokens)}", lineno)
        rows.append((lineno, tuple(_symbol(tok, lineno, f) for f, tok in enumerate(tokens, start=1))))
    t = t if t is not None else header.get("t")
    v = v if v is not None else header.get("v")
    lam = lam if lam is not None else header.get("lam")
    if k is None:
        raise ParseError("no rows and no header; cannot determine k")
    if t is None or lam is None:
        raise ParseError("t and lambda must come from the header or be given explicitly")
    if v is None:
        v = max(2, 1 + max((max(x) for _, x in rows), default=0))
    for lineno, x in rows:
        for f, s in enumerate(x, start=1):
            if s >= v:
                raise ParseError(f"symbol {s} is outside [0, {v})", lineno, f)
    return OrthogonalArray(v, k, [x for _, x in rows], t, lam)


def format_oa(a: OrthogonalArray) -> str:
    head = f"OA t={a.t} v={a.v} k={a.k} lambda={a.lam}\n"
    return head + "".join(" ".join(map(str, x)) + "\n" for x in a.rows)


# -- matrices --------------------------------------------------------------

def write_matrix_market(m: InclusionMatrix, out: TextIO) -> None:
    out.write(MM_HEADER + "\n")
    out.write(f"% M_{m.t}({m.v},{m.k})\n")
    out.write(f"{m.n_rows} {m.n_cols} {m.n_ones}\n")
    for r, row in enumerate(m.rows, start=1):
        for c in row:
            out.write(f"{r} {c + 1} 1\n")


def read_matrix_market(text: str) -> tuple[int, int, list[tuple[int, int, int]]]:
    """Return (n_rows, n_cols, entries) with 0-based (row, col, value) entries."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != MM_HEADER:
        raise ParseError(f"expected header {MM_HEADER!r}", 1)
    size = None
    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("%"):
            continue
        tokens = line.split()
        try:
            nums = [int(tok) for tok in tokens]
        except ValueError:
            raise ParseError("expected integers", lineno) from None
        if size is None:
            if len(nums) != 3:
                raise ParseError("size line needs 'rows cols nonzeros'", lineno)
            size = nums
            continue
        if len(nums) != 3:
            raise ParseError("entry line needs 'row col value'", lineno)
        r, c, val = nums
        if not (1 <= r <= size[0] and 1 <= c <= size[1]):
            raise ParseError(f"entry ({r},{c}) outside {size[0]}x{size[1]}", lineno)
        entries.append((r - 1, c - 1, val))
    if size is None:
        raise ParseError("missing size line")
    if len(entries) != size[2]:
        raise ParseError(f"size line declares {size[2]} nonzeros, found {len(entries)}")
    return size[0], size[1], entries


def matrix_from_market(text: str, t: int, v: int, k: int) -> InclusionMatrix:
    n_rows, n_cols, entries = read_matrix_market(text)
    if n_cols != v**k:
        raise ParseError(f"{n_cols} columns does not match v^k = {v**k}")
    rows: list[list[int]] = [[] for _ in range(n_rows)]
    for r, c, val in entries:
        if val != 1:
            raise ParseError(f"inclusion matrices are 0/1, found {val}")
        rows[r].append(c)
    return InclusionMatrix(t, v, k, tuple(tuple(sorted(r)) for r in rows))


def dense_text(m: InclusionMatrix, labels: bool = False) -> str:
    """'1' for ones and '.' for zeros, space separated.

    With ``labels`` the column tuples are written vertically above the grid
    and each row is prefixed with its row key.
    """
    grid = [["."] * m.n_cols for _ in range(m.n_rows)]
    for r, row in enumerate(m.rows):
        for c in row:
            grid[r][c] = "1"
    if not labels:
        return "".join(" ".join(line) + "\n" for line in grid)
    keys = [format_rowkey(m.row_key(r)) for r in range(m.n_rows)]
    width = max(len(s) for s in keys) if keys else 0
    cols = [m.column_tuple(c) for c in range(m.n_cols)]
    out = []
    for p in range(m.k):
        out.append(" " * width + " | " + " ".join(str(x[p]) for x in cols))
    out.append("-" * width + "-+-" + "-" * (2 * m.n_cols - 1))
    for key, line in zip(keys, grid):
        out.append(key.rjust(width) + " | " + " ".join(line))
    return "\n".join(out) + "\n"


def parse_dense(text: str) -> list[list[int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for f, tok in enumerate(line.split(), start=1):
            if tok not in ("1", "."):
                raise ParseError(f"expected '1' or '.', got {tok!r}", lineno, f)
            row.append(1 if tok == "1" else 0)
        out.append(row)
    return out
