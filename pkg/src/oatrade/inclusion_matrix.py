"""The t-inclusion matrix M_t(v,k) of orthogonal arrays.

Columns are indexed by V^k in lexicographic order; rows by placed t-tuples
``(u)@{I}``, grouped by position set in lexicographic order. The matrix is
stored row-major as sorted lists of column indices.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .tuples import (
    KTuple,
    RowKey,
    all_rowkeys,
    check_tuple,
    project,
    rank_rowkey,
    rank_subset,
    rank_tuple,
    shadow,
    support,
    t_subsets,
    unrank_rowkey,
    unrank_tuple,
    weight,
)

DEFAULT_MAX_ONES = 10**8


class SizeGuardError(ValueError):
    """Raised instead of allocating something larger than the configured cap."""


def count_ones(t: int, v: int, k: int) -> int:
    return comb(k, t) * v**k


def check_params(t: int, v: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    if v < 2:
        raise ValueError(f"v={v} must be at least 2")
    if not 0 <= t <= k:
        raise ValueError(f"need 0 <= t <= k, got t={t}, k={k}")


def contains(r: RowKey, x: Sequence[int]) -> bool:
    """True iff the placed tuple ``r`` agrees with ``x`` on every position of ``r.I``."""
    if len(r.u) != len(r.I):
        raise ValueError(f"row key {r} has |u| != |I|")
    if r.I and r.I[-1] > len(x):
        raise ValueError(f"row key {r} does not fit a tuple of length {len(x)}")
    return all(x[i - 1] == s for s, i in zip(r.u, r.I))


@dataclass(frozen=True)
class InclusionMatrix:
    t: int
    v: int
    k: int
    rows: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return self.v**self.k

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def n_ones(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_key(self, index: int) -> RowKey:
        return unrank_rowkey(index, self.v, self.k, self.t)

    def row_index(self, r: RowKey) -> int:
        return rank_rowkey(r, self.v, self.k)

    def column_tuple(self, index: int) -> KTuple:
        return unrank_tuple(index, self.v, self.k)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        row = self.rows[r]
        i = bisect_left(row, c)
        return 1 if i < len(row) and row[i] == c else 0

    def column_rows(self, x: Sequence[int]) -> list[int]:
        """Row indices holding a 1 in column C_x, read off the stored rows."""
        return list(self._column_index()[rank_tuple(x, self.v)])

    def _column_index(self) -> list[list[int]]:
        cache = self.__dict__.get("_cols")
        if cache is None:
            cache = [[] for _ in range(self.n_cols)]
            for r, row in enumerate(self.rows):
                for c in row:
                    cache[c].append(r)
            object.__setattr__(self, "_cols", cache)
        return cache

    def column_sums(self) -> list[int]:
        return [len(rs) for rs in self._column_index()]

    def row_sums(self) -> list[int]:
        return [len(r) for r in self.rows]

    def dense(self) -> list[list[int]]:
        out = []
        for row in self.rows:
            line = [0] * self.n_cols
            for c in row:
                line[c] = 1
            out.append(line)
        return out

    def evaluate(self, terms: Iterable[tuple[int, Sequence[int]]]) -> list[int]:
        """The column vector sum(coef * C_y) over the given terms."""
        cols = self._column_index()
        acc = [0] * self.n_rows
        for coef, y in terms:
            for r in cols[rank_tuple(y, self.v)]:
                acc[r] += coef
        return acc


def build_matrix(t: int, v: int, k: int, max_ones: int = DEFAULT_MAX_ONES) -> InclusionMatrix:
    check_params(t, v, k)
    ones = count_ones(t, v, k)
    if ones > max_ones:
        raise SizeGuardError(
            f"M_{t}({v},{k}) has {ones} ones, above the cap of {max_ones}"
        )
    weights = [v ** (k - p) for p in range(1, k + 1)]
    rows = []
    for I in t_subsets(k, t):
        free = [p for p in range(1, k + 1) if p not in I]
        # free positions enumerated lexicographically give increasing column indices
        free_offsets = sorted(
            sum(s * weights[p - 1] for s, p in zip(z, free))
            for z in product(range(v), repeat=len(free))
        )
        for u in product(range(v), repeat=t):
            base = sum(s * weights[p - 1] for s, p in zip(u, I))
            rows.append(tuple(base + off for off in free_offsets))
    return InclusionMatrix(t, v, k, tuple(rows))


@lru_cache(maxsize=32)
def cached_matrix(t: int, v: int, k: int, max_ones: int = DEFAULT_MAX_ONES) -> InclusionMatrix:
    """:func:`build_matrix`, memoized; safe because matrices are immutable."""
    return build_matrix(t, v, k, max_ones=max_ones)


def pivot_row(x: Sequence[int], t: int) -> RowKey:
    """Row whose first 1 lies in column C_x, for a tuple of weight at most t.

    Uses the lexicographically smallest t-subset containing the support of x.
    """
    A, L = support(x)
    k = len(x)
    if L > t:
        raise ValueError(f"tuple {tuple(x)} has weight {L} > t={t}; no pivot row exists")
    for I in t_subsets(k, t):
        if set(A) <= set(I):
            return RowKey(project(x, I), I)
    raise AssertionError("unreachable: some t-subset always contains the support")


@dataclass(frozen=True)
class SignedColumnCombination:
    """A signed integer combination of columns C_y."""

    terms: tuple[tuple[int, KTuple], ...]

    def __post_init__(self):
        cols = [y for _, y in self.terms]
        if len(set(cols)) != len(cols):
            raise ValueError("columns must be distinct within a combination")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def as_dict(self) -> dict[KTuple, int]:
        return {y: c for c, y in self.terms}


def shadow_relation(x: Sequence[int], t: int) -> SignedColumnCombination:
    """The vanishing combination sum over y in the shadow of x of (-1)^weight(y) C_y."""
    x = tuple(x)
    if weight(x) <= t:
        raise ValueError(f"tuple {x} has weight {weight(x)} <= t={t}; the relation needs weight > t")
    return SignedColumnCombination(tuple(((-1) ** weight(y), y) for y in shadow(x)))


def _term_order(item: tuple[KTuple, int]):
    y = item[0]
    return (-weight(y), tuple(-s for s in y))


@lru_cache(maxsize=None)
def _reduce(x: KTuple, t: int) -> tuple[tuple[KTuple, int], ...]:
    L = weight(x)
    if L <= t:
        return ((x, 1),)
    acc: dict[KTuple, int] = {}
    for y in shadow(x):
        if y == x:
            continue
        sign = -1 if (L - weight(y) + 1) % 2 else 1
        for z, c in _reduce(y, t):
            acc[z] = acc.get(z, 0) + sign * c
    return tuple(sorted(((z, c) for z, c in acc.items() if c), key=_term_order))


def reduce_column(x: Sequence[int], t: int) -> SignedColumnCombination:
    """Write C_x as an integer combination of columns of weight at most t.

    Repeatedly expands with the shadow relation. Terms come out heaviest first,
    ties in decreasing lexicographic order.
    """
    x = tuple(int(s) for s in x)
    if t < 0:
        raise ValueError(f"t={t} must be non-negative")
    return SignedColumnCombination(tuple((c, z) for z, c in _reduce(x, t)))


def column_vector(x: Sequence[int], v: int, t: int) -> dict[int, int]:
    """C_x computed straight from the inclusion predicate, as {row index: 1}.

    Independent of the stored rows of a built matrix.
    """
    x = check_tuple(x, v)
    k = len(x)
    out = {}
    for I in t_subsets(k, t):
        out[rank_subset(I, k) * v**t + rank_tuple(project(x, I), v)] = 1
    return out


def rowkeys(t: int, v: int, k: int) -> list[RowKey]:
    return list(all_rowkeys(v, k, t))
