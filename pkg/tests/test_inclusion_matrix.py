from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_matrix
from oatrade.inclusion_matrix import (
    SizeGuardError,
    build_matrix,
    column_vector,
    contains,
    pivot_row,
    reduce_column,
    shadow_relation,
)
from oatrade.tuples import RowKey, rank_rowkey, rank_tuple, weight


@pytest.mark.parametrize(
    "u, I, x, expected",
    [
        ((1, 1), (1, 2), (1, 1, 0), True),
        ((0, 0), (1, 2), (1, 0, 2), False),
        ((2, 2), (2, 3), (0, 2, 2), True),
    ],
)
def test_contains(u, I, x, expected):
    assert contains(RowKey(u, I), x) is expected


def test_contains_dimension_mismatch():
    with pytest.raises(ValueError):
        contains(RowKey((1, 1), (2, 4)), (1, 1, 0))


def test_m233(m233):
    assert build_matrix(2, 3, 3).dense() == m233


def test_small_matrix_by_enumeration():
    # rows (0)@{1}, (1)@{1}, (0)@{2}, (1)@{2}; columns 00, 01, 10, 11
    m = build_matrix(1, 2, 2)
    assert m.dense() == [[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]]
    assert m.row_sums() == [2] * 4
    assert m.column_sums() == [2] * 4


@pytest.mark.parametrize("v, k", [(2, 2), (3, 2), (2, 3)])
def test_t_equals_k_is_identity(v, k):
    m = build_matrix(k, v, k)
    assert m.dense() == [[int(i == j) for j in range(v**k)] for i in range(v**k)]


@pytest.mark.parametrize("t, v, k", [(t, v, k) for k in range(1, 5) for t in range(0, k + 1) for v in (2, 3, 4)])
def test_matches_definition_and_sums(t, v, k):
    m = build_matrix(t, v, k)
    assert m.dense() == brute_matrix(t, v, k)
    assert set(m.row_sums()) == {v ** (k - t)}
    assert set(m.column_sums()) == {comb(k, t)}


def test_size_guard():
    with pytest.raises(SizeGuardError):
        build_matrix(2, 10, 6, max_ones=10**6)
    with pytest.raises(ValueError):
        build_matrix(4, 3, 3)


def test_column_vector_agrees_with_rows():
    m = build_matrix(2, 3, 4)
    for c in range(m.n_cols):
        x = m.column_tuple(c)
        assert sorted(column_vector(x, 3, 2)) == m.column_rows(x)


def test_pivot_row_examples():
    assert pivot_row((0, 1, 0), 2) == RowKey((0, 1), (1, 2))
    assert pivot_row((0, 0, 0), 2) == RowKey((0, 0), (1, 2))
    assert pivot_row((0, 0, 2), 2) == RowKey((0, 2), (1, 3))
    m = build_matrix(2, 3, 3)
    assert m.rows[rank_rowkey(RowKey((0, 2), (1, 3)), 3, 3)][0] == rank_tuple((0, 0, 2), 3)
    with pytest.raises(ValueError):
        pivot_row((1, 1, 1), 2)


def test_pivot_row_certificate_exhaustive():
    for v in (2, 3):
        for k in range(1, 5):
            for t in range(1, k + 1):
                m = build_matrix(t, v, k)
                for x in product(range(v), repeat=k):
                    if weight(x) <= t:
                        r = pivot_row(x, t)
                        assert m.rows[rank_rowkey(r, v, k)][0] == rank_tuple(x, v)


def test_shadow_relation_m233(m233):
    combo = shadow_relation((1, 1, 1), 2)
    assert len(combo) == 8
    for c, y in combo:
        assert c == (-1) ** weight(y)
    total = [0] * 27
    for c, y in combo:
        col = rank_tuple(y, 3)
        for r in range(27):
            total[r] += c * m233[r][col]
    assert total == [0] * 27


def test_shadow_relation_t0():
    # M_0(v,2) is a single all-ones row
    combo = shadow_relation((1, 1), 0)
    assert len(combo) == 4
    assert sum(c for c, _ in combo) == 0
    assert build_matrix(0, 2, 2).evaluate(combo) == [0]


def test_shadow_relation_k4():
    combo = shadow_relation((2, 1, 0, 1), 2)
    assert len(combo) == 8
    assert not any(build_matrix(2, 3, 4).evaluate(combo))


def test_shadow_relation_needs_heavy_tuple():
    with pytest.raises(ValueError):
        shadow_relation((1, 1, 0), 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(2, 5), st.data())
def test_shadow_relation_vanishes(v, k, data):
    t = data.draw(st.integers(0, k - 1))
    x = data.draw(st.tuples(*[st.integers(0, v - 1)] * k).filter(lambda x: weight(x) > t))
    assert not any(build_matrix(t, v, k).evaluate(shadow_relation(x, t)))


def test_reduce_identity():
    assert reduce_column((1, 0, 1), 2).terms == ((1, (1, 0, 1)),)


def test_reduce_single_step():
    combo = reduce_column((1, 1, 1), 2)
    assert combo.terms == (
        (1, (1, 1, 0)), (1, (1, 0, 1)), (1, (0, 1, 1)),
        (-1, (1, 0, 0)), (-1, (0, 1, 0)), (-1, (0, 0, 1)),
        (1, (0, 0, 0)),
    )
    dense = brute_matrix(2, 2, 3)
    for r, row in enumerate(dense):
        assert sum(c * row[rank_tuple(y, 2)] for c, y in combo) == row[rank_tuple((1, 1, 1), 2)]


def test_reduce_recursive_k4():
    combo = reduce_column((1, 1, 1, 1), 2)
    assert all(weight(y) <= 2 for _, y in combo)
    dense = brute_matrix(2, 2, 4)
    target = rank_tuple((1, 1, 1, 1), 2)
    for row in dense:
        assert sum(c * row[rank_tuple(y, 2)] for c, y in combo) == row[target]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(1, 5), st.data())
def test_reduce_reconstructs(v, k, data):
    t = data.draw(st.integers(0, k))
    x = data.draw(st.tuples(*[st.integers(0, v - 1)] * k))
    combo = reduce_column(x, t)
    assert all(weight(y) <= t for _, y in combo)
    m = build_matrix(t, v, k)
    assert not any(m.evaluate(list(combo) + [(-1, x)]))
