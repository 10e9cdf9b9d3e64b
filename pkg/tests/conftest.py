import random
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from oatrade.formats import parse_dense, parse_trade
from oatrade.trades import LatinTrade, PartialLatinSquare

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def m233():
    return parse_dense((DATA / "m2_3_3.txt").read_text())


@pytest.fixture(scope="session")
def trade_v5():
    return parse_trade((DATA / "trade_v5.txt").read_text())


@pytest.fixture(scope="session")
def trade_v4():
    return parse_trade((DATA / "trade_v4.txt").read_text())


def brute_matrix(t, v, k):
    """M_t(v,k) straight from the definition, as a dense list of lists."""
    from itertools import combinations

    rows = []
    for I in combinations(range(1, k + 1), t):
        for u in product(range(v), repeat=t):
            rows.append([int(all(x[i - 1] == s for s, i in zip(u, I))) for x in product(range(v), repeat=k)])
    return rows


def fraction_rank(rows):
    """Plain Gauss-Jordan over Q with Fractions; an oracle independent of Bareiss."""
    m = [[Fraction(e) for e in r] for r in rows]
    rank = 0
    n_cols = len(m[0]) if m else 0
    for c in range(n_cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def random_latin_square(v, rng):
    """The cyclic square with rows, columns and symbols shuffled."""
    rp, cp, sp = (rng.sample(range(v), v) for _ in range(3))
    return [[sp[(rp[i] + cp[j]) % v] for j in range(v)] for i in range(v)]


def row_cycle_trade(square, r1, r2, c0):
    """Swap a row cycle between rows r1 and r2 of a Latin square.

    The cycle starts at column c0 and follows the symbol of row r2 back into
    row r1. Returns the trade (original cells, swapped cells).
    """
    v = len(square)
    where = {s: c for c, s in enumerate(square[r1])}
    cols = [c0]
    c = where[square[r2][c0]]
    while c != c0:
        cols.append(c)
        c = where[square[r2][c]]
    P = {}
    Q = {}
    for c in cols:
        P[(r1, c)], P[(r2, c)] = square[r1][c], square[r2][c]
        Q[(r1, c)], Q[(r2, c)] = square[r2][c], square[r1][c]
    return LatinTrade(PartialLatinSquare(v, P), PartialLatinSquare(v, Q))


def random_trade(v, rng):
    square = random_latin_square(v, rng)
    r1, r2 = rng.sample(range(v), 2)
    return row_cycle_trade(square, r1, r2, rng.randrange(v))


@pytest.fixture
def rng():
    return random.Random(20061019)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, format_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, name, detail = RESULTS[number]
        terminalreporter.write_line(format_line(number, ok, name, detail))
