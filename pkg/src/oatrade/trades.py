"""Partial Latin squares, Latin trades, generalized intercalates and decomposition.

A (t,v,k)-trade is an integer frequency vector T on V^k with M_t(v,k) T = 0.
Latin trades are the (2,v,3) case: entry (i,j,s) is +1 when P has symbol s in
cell (i,j) and -1 when Q does.

Basis intercalates B_idx, idx in {1..v-1}^(t+1), are the expansions of
(x_0 - x_{i_1}) ... (x_0 - x_{i_{t+1}}). B_idx is the only basis vector that is
nonzero at idx (value (-1)^(t+1)), which gives the decomposition rule used by
:func:`decompose`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .exact_linalg import multiply
from .frequency import FrequencyVector, linear_combination
from .inclusion_matrix import DEFAULT_MAX_ONES, cached_matrix
from .tuples import KTuple, RowKey

Cell = tuple[int, int]


class NotATradeError(ValueError):
    """The vector is not annihilated by the inclusion matrix."""

    def __init__(self, row: RowKey, value: int):
        self.row = row
        self.value = value
        super().__init__(f"not in the null space: row {row} evaluates to {value}")


@dataclass(frozen=True)
class PartialLatinSquare:
    order: int
    cells: Mapping[Cell, int] = field(default_factory=dict)

    def __post_init__(self):
        v = self.order
        if v < 1:
            raise ValueError(f"order {v} must be positive")
        cells = {}
        for (r, c), s in self.cells.items():
            r, c, s = int(r), int(c), int(s)
            if not (0 <= r < v and 0 <= c < v and 0 <= s < v):
                raise ValueError(f"entry ({r},{c};{s}) is outside an order-{v} square")
            cells[(r, c)] = s
        seen_row, seen_col = set(), set()
        for (r, c), s in cells.items():
            if (r, s) in seen_row:
                raise ValueError(f"symbol {s} repeats in row {r}")
            if (c, s) in seen_col:
                raise ValueError(f"symbol {s} repeats in column {c}")
            seen_row.add((r, s))
            seen_col.add((c, s))
        object.__setattr__(self, "cells", dict(sorted(cells.items())))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | None]]) -> "PartialLatinSquare":
        v = len(rows)
        if any(len(row) != v for row in rows):
            raise ValueError("a partial Latin square must be square")
        return cls(v, {(r, c): s for r, row in enumerate(rows) for c, s in enumerate(row) if s is not None})

    def to_rows(self) -> list[list[int | None]]:
        out: list[list[int | None]] = [[None] * self.order for _ in range(self.order)]
        for (r, c), s in self.cells.items():
            out[r][c] = s
        return out

    @property
    def shape(self) -> frozenset[Cell]:
        return frozenset(self.cells)

    @property
    def volume(self) -> int:
        return len(self.cells)

    def row_content(self, r: int) -> frozenset[int]:
        return frozenset(s for (i, _), s in self.cells.items() if i == r)

    def col_content(self, c: int) -> frozenset[int]:
        return frozenset(s for (_, j), s in self.cells.items() if j == c)

    def triples(self) -> list[tuple[int, int, int]]:
        return [(r, c, s) for (r, c), s in self.cells.items()]

    def __hash__(self):
        return hash((self.order, tuple(self.cells.items())))


@dataclass(frozen=True)
class LatinTrade:
    first: PartialLatinSquare
    second: PartialLatinSquare

    def __post_init__(self):
        if self.first.order != self.second.order:
            raise ValueError(
                f"squares have different orders {self.first.order} and {self.second.order}"
            )

    @property
    def order(self) -> int:
        return self.first.order

    @property
    def volume(self) -> int:
        return self.first.volume


@dataclass
class TradeReport:
    volume: int
    same_shape: bool
    disjoint: bool
    rows_balanced: bool
    cols_balanced: bool
    shape_mismatch: list[Cell] = field(default_factory=list)
    clashing_cells: list[Cell] = field(default_factory=list)
    unbalanced_rows: list[int] = field(default_factory=list)
    unbalanced_cols: list[int] = field(default_factory=list)

    @property
    def conditions(self) -> dict[str, bool]:
        return {
            "same shape": self.same_shape,
            "disjoint": self.disjoint,
            "row balance": self.rows_balanced,
            "column balance": self.cols_balanced,
        }

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.passed


def verify_trade(T: LatinTrade) -> TradeReport:
    P, Q = T.first, T.second
    v = T.order
    mismatch = sorted(P.shape ^ Q.shape)
    clashes = sorted(cell for cell in P.shape & Q.shape if P.cells[cell] == Q.cells[cell])
    bad_rows = [r for r in range(v) if P.row_content(r) != Q.row_content(r)]
    bad_cols = [c for c in range(v) if P.col_content(c) != Q.col_content(c)]
    return TradeReport(
        volume=P.volume,
        same_shape=not mismatch,
        disjoint=not clashes,
        rows_balanced=not bad_rows,
        cols_balanced=not bad_cols,
        shape_mismatch=mismatch,
        clashing_cells=clashes,
        unbalanced_rows=bad_rows,
        unbalanced_cols=bad_cols,
    )


def trade_to_frequency(T: LatinTrade) -> FrequencyVector:
    out = FrequencyVector(T.order, 3)
    for r, c, s in T.first.triples():
        out.add((r, c, s), 1)
    for r, c, s in T.second.triples():
        out.add((r, c, s), -1)
    return out


def frequency_to_trade(F: FrequencyVector) -> LatinTrade:
    """Inverse of :func:`trade_to_frequency` for vectors with entries in {-1, 0, 1}."""
    if F.k != 3:
        raise ValueError(f"a Latin trade needs k = 3, got k = {F.k}")
    P, Q = {}, {}
    for (r, c, s), coef in F.items():
        if coef not in (1, -1):
            raise ValueError(f"entry {coef} at ({r},{c},{s}) is not +1 or -1")
        side = P if coef == 1 else Q
        if (r, c) in side:
            raise ValueError(f"cell ({r},{c}) is filled twice on the same side")
        side[(r, c)] = s
    return LatinTrade(PartialLatinSquare(F.v, P), PartialLatinSquare(F.v, Q))


@dataclass(frozen=True)
class GenIntercalate:
    """The product (x_{i_1} - x_{j_1}) ... (x_{i_m} - x_{j_m}), given as pairs (i_l, j_l)."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(i), int(j)) for i, j in self.pairs)
        if not pairs:
            raise ValueError("need at least one factor")
        for i, j in pairs:
            if i == j:
                raise ValueError(f"factor (x_{i} - x_{j}) is identically zero")
        object.__setattr__(self, "pairs", pairs)

    @property
    def t(self) -> int:
        return len(self.pairs) - 1


def general_intercalate(g: GenIntercalate, v: int) -> FrequencyVector:
    k = len(g.pairs)
    out = FrequencyVector(v, k)
    for choice in product((0, 1), repeat=k):
        x = tuple(pair[side] for pair, side in zip(g.pairs, choice))
        out.add(x, (-1) ** sum(choice))
    return out


def basis_intercalate(index: Sequence[int], v: int) -> FrequencyVector:
    """B_index = product over l of (x_0 - x_{index_l})."""
    for i in index:
        if not 1 <= i < v:
            raise ValueError(f"basis index {tuple(index)} must lie in {{1..{v - 1}}}")
    return general_intercalate(GenIntercalate(tuple((0, i) for i in index)), v)


def basis_indices(t: int, v: int) -> list[KTuple]:
    return list(product(range(1, v), repeat=t + 1))


def intercalate_basis(t: int, v: int, max_vectors: int = 10**5) -> list[FrequencyVector]:
    if v < 2 or t < 1:
        raise ValueError(f"need v >= 2 and t >= 1, got v={v}, t={t}")
    count = (v - 1) ** (t + 1)
    if count > max_vectors:
        raise ValueError(f"basis has {count} vectors, above the cap of {max_vectors}")
    return [basis_intercalate(idx, v) for idx in basis_indices(t, v)]


@dataclass(frozen=True)
class SignedCombination:
    """Integer coefficients on basis intercalates B_index, keyed by index."""

    terms: tuple[tuple[int, KTuple], ...]

    def __post_init__(self):
        idx = [i for _, i in self.terms]
        if len(set(idx)) != len(idx):
            raise ValueError("basis indices must be distinct")
        if any(c == 0 for c, _ in self.terms):
            raise ValueError("coefficients must be nonzero")

    @classmethod
    def from_dict(cls, coefs: Mapping[Sequence[int], int]) -> "SignedCombination":
        return cls(tuple((c, tuple(i)) for i, c in sorted((tuple(i), c) for i, c in coefs.items()) if c))

    def as_dict(self) -> dict[KTuple, int]:
        return {i: c for c, i in self.terms}

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def reconstruct(S: SignedCombination, v: int, t: int) -> FrequencyVector:
    return linear_combination(v, t + 1, ((c, basis_intercalate(i, v)) for c, i in S.terms))


def first_violation(T: FrequencyVector, t: int, max_ones: int = DEFAULT_MAX_ONES) -> tuple[RowKey, int] | None:
    """The first row of M_t(v,k) T that is nonzero, or None if T is a trade."""
    M = cached_matrix(t, T.v, T.k, max_ones=max_ones)
    for r, value in enumerate(multiply(M, T)):
        if value:
            return M.row_key(r), value
    return None


def verify_general_trade(T: FrequencyVector, t: int, max_ones: int = DEFAULT_MAX_ONES) -> bool:
    return first_violation(T, t, max_ones=max_ones) is None


def decompose(T: FrequencyVector, t: int, max_ones: int = DEFAULT_MAX_ONES) -> SignedCombination:
    """Write a (t,v,t+1)-trade in the basis of intercalates B_index.

    The coefficient of B_index is (-1)^(t+1) T(index). The result is checked by
    rebuilding T from it.
    """
    if T.k != t + 1:
        raise ValueError(f"decomposition needs k = t+1; got k={T.k}, t={t}")
    bad = first_violation(T, t, max_ones=max_ones)
    if bad is not None:
        raise NotATradeError(*bad)
    sign = (-1) ** (t + 1)
    S = SignedCombination.from_dict(
        {x: sign * c for x, c in T.entries.items() if all(x)}
    )
    if reconstruct(S, T.v, t) != T:
        raise AssertionError("reconstruction from basis intercalates is not exact")
    return S


def to_polynomial(T: FrequencyVector) -> str:
    """Render T as a noncommutative polynomial, positive terms first."""
    if T.is_zero():
        return "0"
    items = T.items()
    ordered = [(x, c) for x, c in items if c > 0] + [(x, c) for x, c in items if c < 0]
    parts = []
    for n, (x, c) in enumerate(ordered):
        monomial = "".join(f"x_{s}" for s in x)
        body = monomial if abs(c) == 1 else f"{abs(c)}·{monomial}"
        if n == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)
