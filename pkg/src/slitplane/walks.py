"""Brute-force counts of walks on the slit plane.

A walk starts at the origin, takes unit steps N, S, E, W, and after the
start never touches a point (-k, 0) with k >= 0 (the origin included).
These counts are the independent oracle for every generating function in
:mod:`slitplane.gf`.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _backend
from .fps import LaurentPoly, Series

STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def forbidden(i: int, j: int) -> bool:
    return j == 0 and i <= 0


@dataclass(frozen=True)
class WalkTable:
    """Counts a_{i,j}(n) for 0 <= n <= max_steps."""

    max_steps: int
    layers: tuple

    def count(self, n: int, i: int, j: int) -> int:
        N = self.max_steps
        if not 0 <= n <= N:
            raise IndexError(f"step count {n} outside 0..{N}")
        if abs(i) > N or abs(j) > N:
            return 0
        return self.layers[n][i + N][j + N]

    def nonzero(self):
        """Yield (n, i, j, count) for every nonzero entry, sorted."""
        N = self.max_steps
        for n, grid in enumerate(self.layers):
            for p in range(N - n, N + n + 1):
                row = grid[p]
                for q in range(N - n, N + n + 1):
                    if row[q]:
                        yield n, p - N, q - N, row[q]


def enumerate_walks(N: int) -> WalkTable:
    """Layered DP over step count."""
    if N < 0:
        raise ValueError("max_steps must be nonnegative")
    layers = _backend.kernels.walk_layers(N)
    return WalkTable(N, tuple(tuple(tuple(row) for row in grid) for grid in layers))


def brute_force_counts(n: int) -> dict[tuple[int, int], int]:
    """Endpoint counts of n-step walks by listing every path.

    Depth-first; dead prefixes are pruned, so the cost is the number of
    surviving prefixes.  Meant for n <= 10 as a check on the DP.
    """
    counts: dict[tuple[int, int], int] = {}

    def walk(i, j, left):
        if left == 0:
            counts[i, j] = counts.get((i, j), 0) + 1
            return
        for di, dj in STEPS:
            a, b = i + di, j + dj
            if not forbidden(a, b):
                walk(a, b, left - 1)

    walk(0, 0, n)
    return counts


def endpoint_series(table: WalkTable, i: int, j: int) -> Series:
    N = table.max_steps
    if abs(i) > N or abs(j) > N:
        raise ValueError(f"endpoint ({i}, {j}) outside the table")
    return Series([table.count(n, i, j) for n in range(N + 1)], N)


def full_series(table: WalkTable) -> Series:
    """The complete generating function sum a_{i,j}(n) x^i y^j t^n."""
    by_n: list[dict] = [{} for _ in range(table.max_steps + 1)]
    for n, i, j, c in table.nonzero():
        by_n[n][i, j] = c
    return Series([LaurentPoly(d) for d in by_n], table.max_steps)


def diagonal_series(table: WalkTable) -> Series:
    """sum a_{i,i}(2n) y^i t^{2n}, as a series of order max_steps."""
    N = table.max_steps
    coeffs = []
    for n in range(N + 1):
        if n % 2:
            coeffs.append({})
            continue
        coeffs.append({(0, i): table.count(n, i, i) for i in range(-n, n + 1)})
    return Series([LaurentPoly(d) for d in coeffs], N)
