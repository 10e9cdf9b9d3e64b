"""Exact rank over the rationals and related checks for integer matrices.

Everything here works on Python ints; there is no floating point anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence, Union

from .frequency import FrequencyVector
from .inclusion_matrix import InclusionMatrix, SizeGuardError

DEFAULT_MAX_COLS = 5000
DEFAULT_PRIME = 2**31 - 1
# trial division is run up to isqrt(p), so p is limited to keep that cheap
MAX_PRIME = 2**40


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[int, ...], ...]
    n_cols: int

    def __post_init__(self):
        if self.n_cols < 0 or any(len(r) != self.n_cols for r in self.rows):
            raise ValueError("all rows must have n_cols entries")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(int(e) for e in r) for r in rows)
        if n_cols is None:
            if not rows:
                raise ValueError("n_cols is required for a matrix with no rows")
            n_cols = len(rows[0])
        return cls(rows, n_cols)

    @classmethod
    def from_inclusion(cls, m: InclusionMatrix) -> "ExactMatrix":
        return cls(tuple(tuple(r) for r in m.dense()), m.n_cols)

    @classmethod
    def from_vectors(cls, vectors: Sequence[FrequencyVector]) -> "ExactMatrix":
        """Stack frequency vectors as the rows of a matrix."""
        if not vectors:
            raise ValueError("need at least one vector")
        v, k = vectors[0].v, vectors[0].k
        for vec in vectors:
            if (vec.v, vec.k) != (v, k):
                raise ValueError("vectors must share (v, k)")
        return cls(tuple(tuple(vec.dense()) for vec in vectors), v**k)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "ExactMatrix":
        return cls(tuple((0,) * n_cols for _ in range(n_rows)), n_cols)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(
            tuple(tuple(self.rows[i][j] for j in col_perm) for i in row_perm), self.n_cols
        )


MatrixLike = Union[ExactMatrix, InclusionMatrix, Sequence[Sequence[int]]]


def _as_rows(m: MatrixLike) -> tuple[list[list[int]], int]:
    if isinstance(m, InclusionMatrix):
        return m.dense(), m.n_cols
    if isinstance(m, ExactMatrix):
        return [list(r) for r in m.rows], m.n_cols
    rows = [list(map(int, r)) for r in m]
    return rows, (len(rows[0]) if rows else 0)


def _n_cols(m: MatrixLike) -> int:
    if isinstance(m, (InclusionMatrix, ExactMatrix)):
        return m.n_cols
    return len(m[0]) if len(m) else 0


def exact_rank(m: MatrixLike, max_cols: int = DEFAULT_MAX_COLS) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    The pivot is the first nonzero entry in a row-major scan of the rows not
    yet used; its column is cleared from every other unused row. Every
    intermediate entry is a minor of the (row/column permuted) input, so each
    division by the previous pivot is exact.
    """
    if _n_cols(m) > max_cols:
        raise SizeGuardError(f"{_n_cols(m)} columns exceeds the exact-rank cap of {max_cols}")
    rows, _ = _as_rows(m)
    rows = [r for r in rows if any(r)]
    rank = 0
    prev = 1
    while rows:
        pivot_row = rows.pop(0)
        c = next(j for j, e in enumerate(pivot_row) if e)
        p = pivot_row[c]
        rank += 1
        updated = []
        for row in rows:
            a = row[c]
            if a:
                row = [(p * e - a * pe) // prev for e, pe in zip(row, pivot_row)]
            elif p != prev:
                row = [p * e // prev for e in row]
            if any(row):
                updated.append(row)
        rows = updated
        prev = p
    return rank


def is_prime(p: int) -> bool:
    """Trial-division primality test, valid for 1 < p < MAX_PRIME."""
    if p < 2:
        return False
    if p >= MAX_PRIME:
        raise ValueError(f"p={p} is beyond the trial-division bound {MAX_PRIME}")
    if p % 2 == 0:
        return p == 2
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def rank_mod_p(m: MatrixLike, p: int = DEFAULT_PRIME) -> int:
    """Rank over GF(p). Never exceeds the rational rank; a screen only."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    rows, _ = _as_rows(m)
    rows = [[e % p for e in r] for r in rows]
    rows = [r for r in rows if any(r)]
    rank = 0
    while rows:
        pivot_row = rows.pop(0)
        c = next(j for j, e in enumerate(pivot_row) if e)
        inv = pow(pivot_row[c], -1, p)
        pivot_row = [e * inv % p for e in pivot_row]
        rank += 1
        updated = []
        for row in rows:
            a = row[c]
            if a:
                row = [(e - a * pe) % p for e, pe in zip(row, pivot_row)]
            if any(row):
                updated.append(row)
        rows = updated
    return rank


def multiply(m: MatrixLike, vec: FrequencyVector | Sequence[int]) -> list[int]:
    """Exact product of a matrix with a column vector."""
    if isinstance(vec, FrequencyVector):
        if isinstance(m, InclusionMatrix) and (vec.v, vec.k) != (m.v, m.k):
            raise ValueError(
                f"vector over (v={vec.v}, k={vec.k}) does not match M_{m.t}({m.v},{m.k})"
            )
        dense = vec.dense()
    else:
        dense = [int(e) for e in vec]
    if len(dense) != _n_cols(m):
        raise ValueError(f"vector has length {len(dense)}, matrix has {_n_cols(m)} columns")
    if isinstance(m, InclusionMatrix):
        return [sum(dense[c] for c in row) for row in m.rows]
    rows, _ = _as_rows(m)
    return [sum(e * d for e, d in zip(row, dense) if e) for row in rows]


def nullity(m: MatrixLike, max_cols: int = DEFAULT_MAX_COLS) -> int:
    return _n_cols(m) - exact_rank(m, max_cols=max_cols)


def are_independent(vectors: Sequence[FrequencyVector], max_cols: int = DEFAULT_MAX_COLS) -> bool:
    if not vectors:
        return True
    return exact_rank(ExactMatrix.from_vectors(vectors), max_cols=max_cols) == len(vectors)
