"""Orthogonal arrays OA_t(v,k,lambda) and two independent verifiers.

:func:`verify_oa_direct` counts rows per placed t-tuple; :func:`verify_frequency`
checks M_t(v,k) F = lambda * 1 on the frequency vector. The two share no code
beyond the coordinate helpers.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .exact_linalg import multiply
from .frequency import FrequencyVector
from .inclusion_matrix import DEFAULT_MAX_ONES, cached_matrix
from .tuples import KTuple, RowKey, check_tuple, t_subsets


@dataclass
class OrthogonalArray:
    """A claimed OA_t(v,k,lambda); rows form a multiset and may repeat."""

    v: int
    k: int
    rows: list[KTuple]
    t: int
    lam: int

    def __post_init__(self):
        if not 0 <= self.t <= self.k:
            raise ValueError(f"need 0 <= t <= k, got t={self.t}, k={self.k}")
        self.rows = [check_tuple(x, self.v, self.k) for x in self.rows]


@dataclass
class OAReport:
    passed: bool
    # first (u, I, count) whose count differs from lambda, in row order
    first_failure: tuple[RowKey, int] | None
    histogram: Counter = field(default_factory=Counter)

    def __bool__(self) -> bool:
        return self.passed


def verify_oa_direct(a: OrthogonalArray) -> OAReport:
    histogram: Counter = Counter()
    first = None
    for I in t_subsets(a.k, a.t):
        counts = Counter(tuple(x[i - 1] for i in I) for x in a.rows)
        for u in product(range(a.v), repeat=a.t):
            n = counts.get(u, 0)
            histogram[n] += 1
            if n != a.lam and first is None:
                first = (RowKey(u, I), n)
    return OAReport(first is None, first, histogram)


def oa_to_frequency(a: OrthogonalArray) -> FrequencyVector:
    return FrequencyVector(a.v, a.k, dict(Counter(a.rows)))


@dataclass
class FrequencyCheck:
    holds: bool
    nonnegative: bool
    first_failure: tuple[RowKey, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def verify_frequency(F: FrequencyVector, t: int, lam: int, max_ones: int = DEFAULT_MAX_ONES) -> FrequencyCheck:
    """Check M_t(v,k) F = lam * 1; F may be signed.

    ``nonnegative`` tells whether F is a genuine array rather than a signed one.
    """
    M = cached_matrix(t, F.v, F.k, max_ones=max_ones)
    first = None
    for r, value in enumerate(multiply(M, F)):
        if value != lam:
            first = (M.row_key(r), value)
            break
    return FrequencyCheck(first is None, F.is_nonnegative(), first)


def cyclic_latin_oa(v: int) -> OrthogonalArray:
    """The rows (i, j, i+j mod v) of the cyclic Latin square, as an OA_2(v,3,1)."""
    return OrthogonalArray(v, 3, [(i, j, (i + j) % v) for i in range(v) for j in range(v)], 2, 1)


def full_factorial(v: int, k: int, t: int) -> OrthogonalArray:
    return OrthogonalArray(v, k, [tuple(x) for x in product(range(v), repeat=k)], t, v ** (k - t))


def from_rows(rows: Sequence[Sequence[int]], v: int, t: int, lam: int) -> OrthogonalArray:
    rows = [tuple(r) for r in rows]
    if not rows:
        raise ValueError("cannot infer k from an empty row list")
    return OrthogonalArray(v, len(rows[0]), rows, t, lam)
