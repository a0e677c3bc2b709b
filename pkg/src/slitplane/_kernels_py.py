"""Pure-Python reference kernels.

The compiled module ``_kernels`` exposes exactly the same functions; the
dispatcher in ``_backend`` picks one at import time.
"""

from math import gcd

#: Exponent pairs are packed into a single int as ``ex * KEY_BASE + ey``.
#: Addition of packed keys is then addition of exponent pairs.
KEY_BASE = 1 << 32
HALF_BASE = KEY_BASE >> 1

NAME = "python"


def mul_add(acc, a, b, factor):
    """acc += factor * a * b, where a, b, acc map packed keys to ints."""
    get = acc.get
    for ka, va in a.items():
        if factor != 1:
            va *= factor
        for kb, vb in b.items():
            k = ka + kb
            acc[k] = get(k, 0) + va * vb


def add_scaled(acc, a, factor):
    get = acc.get
    for k, v in a.items():
        acc[k] = get(k, 0) + v * factor


def normalize(terms, den):
    """Drop zero entries and reduce by the common gcd.

    Returns a new ``(terms, den)`` pair with ``den > 0``.
    """
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return {}, 1
    if den < 0:
        den = -den
        terms = {k: -v for k, v in terms.items()}
    g = gcd(den, *terms.values())
    if g != 1:
        den //= g
        terms = {k: v // g for k, v in terms.items()}
    return terms, den


def walk_layers(N):
    """Forward DP for slit-plane walks.

    Returns a list of N+1 square grids of side 2N+1; ``layers[n][i+N][j+N]``
    is the number of n-step walks ending at (i, j).
    """
    # one cell of zero padding on every side keeps neighbour lookups in range
    off = N + 1
    side = 2 * N + 3
    cur = [[0] * side for _ in range(side)]
    cur[off][off] = 1
    layers = [_strip(cur)]
    for n in range(1, N + 1):
        nxt = [[0] * side for _ in range(side)]
        lo, hi = off - n, off + n
        for p in range(lo, hi + 1):
            row_m, row, row_p = cur[p - 1], cur[p], cur[p + 1]
            out = nxt[p]
            for q in range(lo, hi + 1):
                out[q] = row_m[q] + row_p[q] + row[q - 1] + row[q + 1]
        # forbidden half-line: j == 0, i <= 0
        for p in range(off + 1):
            nxt[p][off] = 0
        layers.append(_strip(nxt))
        cur = nxt
    return layers


def _strip(grid):
    return [row[1:-1] for row in grid[1:-1]]
