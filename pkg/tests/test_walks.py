import itertools
from math import comb

import pytest

from slitplane.fps import LaurentPoly
from slitplane.walks import (
    brute_force_counts,
    diagonal_series,
    endpoint_series,
    enumerate_walks,
    full_series,
)

STEPS = {"E": (1, 0), "W": (-1, 0), "N": (0, 1), "S": (0, -1)}


def listed_walks(n):
    """Every step word of length n that stays on the slit plane."""
    for word in itertools.product("EWNS", repeat=n):
        i = j = 0
        ok = True
        for step in word:
            di, dj = STEPS[step]
            i, j = i + di, j + dj
            if j == 0 and i <= 0:
                ok = False
                break
        if ok:
            yield "".join(word), (i, j)


def listed_counts(n):
    out = {}
    for _, end in listed_walks(n):
        out[end] = out.get(end, 0) + 1
    return out


@pytest.fixture(scope="module")
def table():
    return enumerate_walks(14)


def test_single_steps(table):
    assert table.count(1, 0, 1) == 1
    assert table.count(1, -1, 0) == 0
    assert listed_counts(1) == {(1, 0): 1, (0, 1): 1, (0, -1): 1}


def test_two_step_anchor(table):
    words = [w for w, end in listed_walks(2) if end == (-1, -1)]
    assert words == ["SW"]
    assert table.count(2, -1, -1) == 1


def test_three_step_anchor(table):
    assert listed_counts(3)[0, 1] == 4
    assert table.count(3, 0, 1) == 4


def test_four_step_anchor(table):
    words = sorted(w for w, end in listed_walks(4) if end == (-2, -2))
    assert words == ["SSWW", "SWSW", "SWWS"]
    assert table.count(4, -2, -2) == 3


@pytest.mark.parametrize("n", range(0, 7))
def test_dp_matches_listing(table, n):
    dp = {(i, j): c for m, i, j, c in table.nonzero() if m == n}
    assert dp == listed_counts(n)


@pytest.mark.parametrize("n", [7, 8])
def test_dp_matches_pruned_dfs(table, n):
    dp = {(i, j): c for m, i, j, c in table.nonzero() if m == n}
    assert dp == brute_force_counts(n)


def test_table_invariants(table):
    N = table.max_steps
    assert table.count(0, 0, 0) == 1
    for n in range(N + 1):
        for i in range(-N, N + 1):
            for j in range(-N, N + 1):
                c = table.count(n, i, j)
                if n == 0 and (i, j) != (0, 0):
                    assert c == 0
                if n >= 1 and j == 0 and i <= 0:
                    assert c == 0
                if abs(i) + abs(j) > n or (i + j + n) % 2:
                    assert c == 0
                # reflection in the x-axis
                assert c == table.count(n, i, -j)
                # bounded by unrestricted walks: C(n, (n+i+j)/2) C(n, (n+i-j)/2)
                if (n + i + j) % 2 == 0 and abs(i) + abs(j) <= n:
                    assert c <= comb(n, (n + i + j) // 2) * comb(n, (n + i - j) // 2)


def test_endpoint_series(table):
    assert endpoint_series(table, 0, 1).truncate(4).scalars() == [0, 1, 0, 4, 0]
    assert endpoint_series(table, -1, 0).valuation() is None
    assert endpoint_series(table, 0, 0).scalars() == [1] + [0] * 14
    with pytest.raises(ValueError):
        endpoint_series(table, 15, 0)


def test_full_series(table):
    S = full_series(table)
    assert S[0] == 1
    assert S[1] == LaurentPoly({(1, 0): 1, (0, 1): 1, (0, -1): 1})
    assert S[2].coefficient(1, 1) == 2
    for n, ex, ey, c in S.items():
        assert c.denominator == 1 and c > 0


def test_diagonal_series(table):
    F = diagonal_series(table)
    assert F[0] == 1
    assert F[2].coefficient(0, 1) == 2
    assert F[2].coefficient(0, -1) == 1
    assert F[4].coefficient(0, -1) == 7
    assert all(not F[n] for n in range(1, 15, 2))


def test_negative_steps_rejected():
    with pytest.raises(ValueError):
        enumerate_walks(-1)
