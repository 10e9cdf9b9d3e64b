"""Sparse integer-valued functions on V^k."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .tuples import KTuple, check_tuple, rank_tuple, unrank_tuple


@dataclass
class FrequencyVector:
    """Integer weights on k-tuples; absent tuples have weight 0.

    Zero entries are never stored, so two vectors compare equal exactly when
    they agree everywhere.
    """

    v: int
    k: int
    entries: dict[KTuple, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.v < 2 or self.k < 1:
            raise ValueError(f"invalid dimensions v={self.v}, k={self.k}")
        clean = {}
        for x, c in self.entries.items():
            x = check_tuple(x, self.v, self.k)
            c = int(c)
            if c:
                clean[x] = clean.get(x, 0) + c
        self.entries = {x: c for x, c in clean.items() if c}

    @classmethod
    def from_terms(cls, v: int, k: int, terms: Iterable[tuple[Sequence[int], int]]) -> "FrequencyVector":
        """Build from (tuple, count) pairs; repeated tuples are summed."""
        out = cls(v, k)
        for x, c in terms:
            out.add(x, c)
        return out

    @classmethod
    def from_dense(cls, v: int, k: int, values: Sequence[int]) -> "FrequencyVector":
        if len(values) != v**k:
            raise ValueError(f"dense vector has length {len(values)}, expected {v**k}")
        return cls(v, k, {unrank_tuple(i, v, k): c for i, c in enumerate(values) if c})

    def add(self, x: Sequence[int], c: int = 1) -> None:
        x = check_tuple(x, self.v, self.k)
        new = self.entries.get(x, 0) + int(c)
        if new:
            self.entries[x] = new
        else:
            self.entries.pop(x, None)

    def __getitem__(self, x: Sequence[int]) -> int:
        return self.entries.get(tuple(x), 0)

    def __len__(self) -> int:
        return self.v**self.k

    def items(self):
        """Nonzero entries in lexicographic tuple order."""
        return sorted(self.entries.items())

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.entries.values())

    def total(self) -> int:
        return sum(self.entries.values())

    def dense(self) -> list[int]:
        out = [0] * (self.v**self.k)
        for x, c in self.entries.items():
            out[rank_tuple(x, self.v)] = c
        return out

    def _check_compatible(self, other: "FrequencyVector") -> None:
        if (self.v, self.k) != (other.v, other.k):
            raise ValueError(
                f"dimension mismatch: (v={self.v}, k={self.k}) vs (v={other.v}, k={other.k})"
            )

    def __add__(self, other: "FrequencyVector") -> "FrequencyVector":
        self._check_compatible(other)
        out = FrequencyVector(self.v, self.k, dict(self.entries))
        for x, c in other.entries.items():
            out.add(x, c)
        return out

    def __neg__(self) -> "FrequencyVector":
        return FrequencyVector(self.v, self.k, {x: -c for x, c in self.entries.items()})

    def __sub__(self, other: "FrequencyVector") -> "FrequencyVector":
        return self + (-other)

    def __mul__(self, scalar: int) -> "FrequencyVector":
        return FrequencyVector(self.v, self.k, {x: scalar * c for x, c in self.entries.items()})

    __rmul__ = __mul__


def linear_combination(v: int, k: int, terms: Iterable[tuple[int, Mapping[KTuple, int] | FrequencyVector]]) -> FrequencyVector:
    out = FrequencyVector(v, k)
    for coef, vec in terms:
        entries = vec.entries if isinstance(vec, FrequencyVector) else vec
        for x, c in entries.items():
            out.add(x, coef * c)
    return out
