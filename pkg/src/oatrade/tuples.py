"""Coordinate system for k-tuples over V = {0, ..., v-1} and placed t-tuples.

Tuples are plain ``tuple[int, ...]``; symbols are 0-based. Position sets are
1-based and strictly increasing, so row keys print the way they are usually
written, e.g. ``(1,0)@{1,3}``.
"""
from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import NamedTuple, Sequence

KTuple = tuple[int, ...]
PositionSet = tuple[int, ...]


class RowKey(NamedTuple):
    """A t-tuple ``u`` placed on the positions ``I``."""

    u: tuple[int, ...]
    I: PositionSet

    def __str__(self) -> str:
        return format_rowkey(self)


def check_tuple(x: Sequence[int], v: int, k: int | None = None) -> KTuple:
    x = tuple(int(s) for s in x)
    if k is not None and len(x) != k:
        raise ValueError(f"tuple {x} has length {len(x)}, expected {k}")
    if not x:
        raise ValueError("tuple must be non-empty")
    if v < 2:
        raise ValueError(f"alphabet size v={v} must be at least 2")
    for s in x:
        if not 0 <= s < v:
            raise ValueError(f"symbol {s} of {x} is outside [0, {v})")
    return x


def check_positions(positions: Sequence[int], k: int, t: int | None = None) -> PositionSet:
    positions = tuple(int(i) for i in positions)
    if t is not None and len(positions) != t:
        raise ValueError(f"position set {positions} has size {len(positions)}, expected {t}")
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise ValueError(f"position set {positions} is not strictly increasing")
    if positions and not (1 <= positions[0] and positions[-1] <= k):
        raise ValueError(f"position set {positions} is not inside [1, {k}]")
    return positions


def check_rowkey(r: RowKey, v: int, k: int, t: int) -> RowKey:
    u = tuple(int(s) for s in r.u)
    if len(u) != t:
        raise ValueError(f"row key {r} has |u|={len(u)}, expected {t}")
    if any(not 0 <= s < v for s in u):
        raise ValueError(f"row key {r} has a symbol outside [0, {v})")
    return RowKey(u, check_positions(r.I, k, t))


def rank_tuple(x: Sequence[int], v: int) -> int:
    """Lexicographic index of ``x`` in V^k, i.e. sum of x_i * v^(k-i)."""
    index = 0
    for s in x:
        index = index * v + s
    return index


def unrank_tuple(index: int, v: int, k: int) -> KTuple:
    if not 0 <= index < v**k:
        raise ValueError(f"index {index} is outside [0, {v}^{k})")
    out = [0] * k
    for i in range(k - 1, -1, -1):
        index, out[i] = divmod(index, v)
    return tuple(out)


def all_tuples(v: int, k: int):
    """V^k in lexicographic (column) order."""
    return product(range(v), repeat=k)


def t_subsets(k: int, t: int) -> list[PositionSet]:
    if not 0 <= t <= k:
        raise ValueError(f"need 0 <= t <= k, got t={t}, k={k}")
    return list(combinations(range(1, k + 1), t))


def rank_subset(I: Sequence[int], k: int) -> int:
    """Lexicographic rank of a 1-based t-subset of {1..k} among all t-subsets."""
    t = len(I)
    rank = 0
    prev = 0
    for j, i in enumerate(I):
        # count the subsets whose j-th element is smaller than i
        for smaller in range(prev + 1, i):
            rank += comb(k - smaller, t - j - 1)
        prev = i
    return rank


def rank_rowkey(r: RowKey, v: int, k: int) -> int:
    t = len(r.I)
    return rank_subset(r.I, k) * v**t + rank_tuple(r.u, v)


def unrank_rowkey(index: int, v: int, k: int, t: int) -> RowKey:
    block, offset = divmod(index, v**t)
    subsets = t_subsets(k, t)
    if not 0 <= block < len(subsets):
        raise ValueError(f"row index {index} is out of range for t={t}, v={v}, k={k}")
    return RowKey(unrank_tuple(offset, v, t) if t else (), subsets[block])


def all_rowkeys(v: int, k: int, t: int):
    """Row keys in matrix row order."""
    for I in t_subsets(k, t):
        for u in product(range(v), repeat=t):
            yield RowKey(u, I)


def support(x: Sequence[int]) -> tuple[PositionSet, int]:
    """Positions (1-based) holding a nonzero symbol, and their count."""
    A = tuple(i for i, s in enumerate(x, start=1) if s != 0)
    return A, len(A)


def weight(x: Sequence[int]) -> int:
    return sum(1 for s in x if s != 0)


def shadow(x: Sequence[int]) -> list[KTuple]:
    """All tuples obtained by zeroing any subset of the nonzero entries of ``x``.

    Returned in lexicographic order; there are 2**weight(x) of them.
    """
    return [tuple(z) for z in product(*[(0, s) if s else (0,) for s in x])]


def project(x: Sequence[int], I: Sequence[int]) -> tuple[int, ...]:
    """The symbols of ``x`` on the 1-based positions ``I``."""
    return tuple(x[i - 1] for i in I)


def format_tuple(x: Sequence[int]) -> str:
    return ",".join(str(s) for s in x)


def parse_tuple(text: str) -> KTuple:
    text = text.strip().strip("()")
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse tuple {text!r}; expected e.g. '1,0,2'") from None


def format_rowkey(r: RowKey) -> str:
    return f"({format_tuple(r.u)})@{{{format_tuple(r.I)}}}"


def parse_rowkey(text: str) -> RowKey:
    text = text.strip()
    try:
        u_text, I_text = text.split("@")
        if not (u_text.startswith("(") and u_text.endswith(")")):
            raise ValueError
        if not (I_text.startswith("{") and I_text.endswith("}")):
            raise ValueError
        u_body, I_body = u_text[1:-1], I_text[1:-1]
        u = tuple(int(s) for s in u_body.split(",")) if u_body else ()
        I = tuple(int(s) for s in I_body.split(",")) if I_body else ()
    except ValueError:
        raise ValueError(f"cannot parse row key {text!r}; expected e.g. '(1,0)@{{1,3}}'") from None
    if len(u) != len(I):
        raise ValueError(f"row key {text!r} has |u| != |I|")
    return RowKey(u, I)
