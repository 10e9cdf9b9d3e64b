import io

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_trade
from oatrade.formats import (
    MM_HEADER,
    ParseError,
    dense_text,
    format_frequency,
    format_oa,
    format_square,
    format_trade,
    matrix_from_market,
    parse_dense,
    parse_frequency,
    parse_oa,
    parse_square,
    parse_trade,
    read_matrix_market,
    write_matrix_market,
)
from oatrade.frequency import FrequencyVector
from oatrade.inclusion_matrix import build_matrix
from oatrade.oa import OrthogonalArray, cyclic_latin_oa


def test_trade_roundtrip(trade_v5, rng):
    assert parse_trade(format_trade(trade_v5)) == trade_v5
    for _ in range(20):
        T = random_trade(rng.randint(2, 7), rng)
        assert parse_trade(format_trade(T)) == T


def test_square_roundtrip(trade_v4):
    P = trade_v4.first
    assert parse_square(format_square(P)) == P


def test_trade_parse_errors():
    with pytest.raises(ParseError, match="line 2: expected 2 fields"):
        parse_trade("0 1\n1 0 x\n\n1 0\n0 1\n")
    with pytest.raises(ParseError, match="line 1, field 2"):
        parse_trade("0 x\n1 0\n\n1 0\n0 1\n")
    with pytest.raises(ParseError, match="two blocks"):
        parse_trade("0 1\n1 0\n")
    with pytest.raises(ParseError, match="outside"):
        parse_trade("0 2\n1 0\n\n1 0\n0 1\n")
    with pytest.raises(ParseError, match="repeats"):
        parse_trade("0 0\n. .\n\n1 0\n0 1\n")


def test_frequency_format():
    F = parse_frequency("1,0,2 : 3\n0,0,0 : -1\n1,0,2 : 1\n")
    assert F.v == 3 and F.k == 3
    assert F[(1, 0, 2)] == 4 and F[(0, 0, 0)] == -1
    assert parse_frequency(format_frequency(F)) == F
    assert format_frequency(FrequencyVector(4, 2)) == "# v=4 k=2\n"
    assert parse_frequency("# v=4 k=2\n") == FrequencyVector(4, 2)
    assert parse_frequency("0,1 : 1\n", v=5).v == 5
    with pytest.raises(ParseError, match="line 2"):
        parse_frequency("0,1 : 1\n0,1,1 : 1\n")
    with pytest.raises(ParseError, match="line 1, field 3"):
        parse_frequency("0,1 : z\n")


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4), st.integers(1, 4), st.data())
def test_frequency_roundtrip(v, k, data):
    entries = data.draw(st.dictionaries(st.tuples(*[st.integers(0, v - 1)] * k), st.integers(-5, 5)))
    F = FrequencyVector(v, k, entries)
    assert parse_frequency(format_frequency(F)) == F


def test_oa_roundtrip():
    a = cyclic_latin_oa(4)
    b = parse_oa(format_oa(a))
    assert (b.v, b.k, b.t, b.lam, b.rows) == (a.v, a.k, a.t, a.lam, a.rows)


def test_oa_without_header():
    a = parse_oa("0 0\n1 1\n", t=1, lam=1)
    assert a.v == 2 and a.k == 2
    with pytest.raises(ParseError):
        parse_oa("0 0\n1 1\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_oa("OA t=1 v=2 k=2 lambda=1\n0 0\n1\n")


def test_matrix_market_roundtrip():
    for t, v, k in [(1, 2, 2), (2, 3, 3), (2, 2, 4)]:
        m = build_matrix(t, v, k)
        buf = io.StringIO()
        write_matrix_market(m, buf)
        text = buf.getvalue()
        assert text.splitlines()[0] == MM_HEADER
        assert matrix_from_market(text, t, v, k) == m


def test_matrix_market_layout():
    buf = io.StringIO()
    write_matrix_market(build_matrix(1, 2, 2), buf)
    n_rows, n_cols, entries = read_matrix_market(buf.getvalue())
    assert (n_rows, n_cols, len(entries)) == (4, 4, 8)
    assert entries == sorted(entries)
    coord = [ln for ln in buf.getvalue().splitlines() if not ln.startswith("%")][1:]
    assert coord[:2] == ["1 1 1", "1 2 1"]


def test_dense_dump(m233):
    m = build_matrix(2, 3, 3)
    assert parse_dense(dense_text(m)) == m233
    labelled = dense_text(m, labels=True).splitlines()
    assert labelled[4].startswith("(0,0)@{1,2} | 1 1 1 .")
    assert labelled[-1].startswith("(2,2)@{2,3} |")
