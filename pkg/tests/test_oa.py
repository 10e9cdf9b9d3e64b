from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_trade
from oatrade.frequency import FrequencyVector
from oatrade.oa import (
    OrthogonalArray,
    cyclic_latin_oa,
    full_factorial,
    oa_to_frequency,
    verify_frequency,
    verify_oa_direct,
)
from oatrade.trades import trade_to_frequency
from oatrade.tuples import RowKey


def test_cyclic_square_is_oa():
    a = cyclic_latin_oa(3)
    report = verify_oa_direct(a)
    assert report.passed and report.first_failure is None
    assert report.histogram == Counter({1: 27})
    check = verify_frequency(oa_to_frequency(a), 2, 1)
    assert check.holds and check.nonnegative


@pytest.mark.parametrize("v, k", [(2, 3), (3, 2), (2, 4)])
def test_full_factorial(v, k):
    for t in range(0, k + 1):
        a = full_factorial(v, k, t)
        assert verify_oa_direct(a)
        assert verify_frequency(oa_to_frequency(a), t, v ** (k - t))


def test_perturbed_square_fails():
    a = cyclic_latin_oa(3)
    rows = list(a.rows)
    rows[0] = (0, 0, 1)
    bad = OrthogonalArray(3, 3, rows, 2, 1)
    report = verify_oa_direct(bad)
    assert not report.passed
    assert report.histogram[0] >= 1 and report.histogram[2] >= 1
    assert report.first_failure == (RowKey((0, 0), (1, 3)), 0)
    assert not verify_frequency(oa_to_frequency(bad), 2, 1)


def test_oa_to_frequency():
    assert oa_to_frequency(OrthogonalArray(2, 2, [], 1, 1)).is_zero()
    F = oa_to_frequency(cyclic_latin_oa(3))
    assert F.support_size == 9 and set(F.entries.values()) == {1}
    G = oa_to_frequency(OrthogonalArray(2, 2, [(0, 1), (0, 1), (1, 1)], 1, 1))
    assert G[(0, 1)] == 2 and G.total() == 3


def test_zero_vector_lambda_zero():
    check = verify_frequency(FrequencyVector(3, 3), 2, 0)
    assert check.holds and check.nonnegative


def test_signed_oa_by_adding_trade(rng):
    for v in (3, 4, 5):
        F = oa_to_frequency(cyclic_latin_oa(v))
        T = trade_to_frequency(random_trade(v, rng))
        check = verify_frequency(F + 3 * T, 2, 1)
        assert check.holds
        assert not check.nonnegative


def test_invalid_rows():
    with pytest.raises(ValueError):
        OrthogonalArray(2, 2, [(0, 2)], 1, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 3), st.integers(1, 3), st.data())
def test_verifiers_agree(v, k, data):
    t = data.draw(st.integers(0, k))
    rows = data.draw(st.lists(st.tuples(*[st.integers(0, v - 1)] * k), max_size=12))
    # bias some draws toward genuine arrays
    if data.draw(st.booleans()):
        rows = [tuple(x) for x in product(range(v), repeat=k)] * data.draw(st.integers(1, 2))
    lam = data.draw(st.integers(0, 3))
    a = OrthogonalArray(v, k, rows, t, lam)
    assert bool(verify_oa_direct(a)) == bool(verify_frequency(oa_to_frequency(a), t, lam))
