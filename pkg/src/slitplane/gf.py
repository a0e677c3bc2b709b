"""Generating functions for walks on the slit plane.

All builders take a truncation order N and return a :class:`Series` known
exactly modulo t^(N+1).  Square roots are only ever taken of series whose
constant term is 1, so everything stays in the rationals.

Variables used below:

* ``C(t)``: the Catalan series (1 - sqrt(1-4t)) / (2t)
* ``u = t C(t) C(-t)``
* ``s = t C(4t^2)``, the series of walks ending at (0, 1)
* ``S(x, y; t)``: the complete generating function
* ``F(y; t)``: the diagonal series, y^i t^(2n) -> a_{i,i}(2n)
* ``F_minus``, ``F_plus``: the parts of F with negative / positive powers of
  y (``F_minus`` is written with y -> 1/y, so it has positive powers)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .fps import LaurentPoly, Series, compose_t, invert, sqrt, var


class DomainError(ValueError):
    pass


class UnknownSeries(KeyError):
    pass


# -- small exact helpers ----------------------------------------------------


def binom(top, k: int) -> Fraction:
    """Binomial coefficient with an arbitrary rational top.

    For integer top >= 0 this is zero outside 0 <= k <= top; otherwise it is
    the falling factorial top (top-1) ... (top-k+1) / k!.
    """
    if k < 0:
        return Fraction(0)
    top = Fraction(top)
    if top.denominator == 1 and top >= 0:
        return Fraction(comb(int(top), k))
    num = Fraction(1)
    for m in range(k):
        num *= top - m
        num /= m + 1
    return num


def _t(N):
    return var("t", N)


def _y(N):
    return var("y", N)


def _ybar(N):
    return var("ybar", N)


# -- scalar series ----------------------------------------------------------


def sqrt_1m4t(N: int) -> Series:
    return sqrt(1 - 4 * _t(N))


def sqrt_1p4t(N: int) -> Series:
    return sqrt(1 + 4 * _t(N))


def build_C(N: int) -> Series:
    # (1 - sqrt(1-4t)) has zero constant term; one order is spent dividing by t
    return ((1 - sqrt_1m4t(N + 1)).div_t(1)) / 2


def build_C_neg(N: int) -> Series:
    return compose_t(build_C(N), -_t(N))


def build_u(N: int) -> Series:
    """u from its radical form (sqrt(1+4t) - 1) / (sqrt(1-4t) + 1)."""
    return (sqrt_1p4t(N) - 1) * invert(sqrt_1m4t(N) + 1)


def build_u_product(N: int) -> Series:
    """u as t C(t) C(-t)."""
    return (build_C(N) * build_C_neg(N)).shift(1).truncate(N)


def build_s(N: int) -> Series:
    return compose_t(build_C(N), 4 * _t(N) ** 2).shift(1).truncate(N)


# -- the complete and diagonal series ---------------------------------------


def build_S(N: int) -> Series:
    """S(x, y; t) from its closed form.

    The two half-powers in the numerator each start with 2; their product P
    starts with 4, so the numerator is 2 sqrt(P/4) and stays rational.
    """
    t, xbar = _t(N), var("xbar", N)
    first = 1 - 2 * t * (1 + xbar) + sqrt_1m4t(N)
    second = 1 + 2 * t * (1 - xbar) + sqrt_1p4t(N)
    root = sqrt(first * second / 4)
    steps = var("x", N) + xbar + _y(N) + _ybar(N)
    # S = 2 sqrt(P/4) / (2 (1 - t K))
    return root * invert(1 - t * steps)


def diag_discriminant(N: int) -> Series:
    """1 - 4 t^2 (1+y)^2 / y, with (1+y)^2/y stored as y + 2 + 1/y."""
    t = _t(N)
    return 1 - 4 * t * t * (_y(N) + 2 + _ybar(N))


def build_X_kernel(N: int) -> Series:
    """The kernel root (1 - sqrt(disc)) / (2t(1+y)) by the quadratic formula."""
    num = (1 - sqrt(diag_discriminant(N + 1))).div_t(1) / 2
    one_plus_y = LaurentPoly({(0, 0): 1, (0, 1): 1})
    return num.map_coeffs(lambda c: c.exact_div_y(one_plus_y))


def build_F(N: int) -> Series:
    """The diagonal series F(y; t) from its closed form."""
    t = _t(N)
    tX = (build_X_kernel(N) * t)
    left = (1 + sqrt_1m4t(N)) / 2 - t - tX
    right = (1 + sqrt_1p4t(N)) / 2 + t - tX
    return sqrt(left) * sqrt(right) * invert(sqrt(diag_discriminant(N)))


def _s2y(N: int) -> Series:
    s = build_s(N)
    return s * s * _y(N)


def build_F_minus(N: int) -> Series:
    """sum_{i>=1} a_{-i,-i}(2n) y^i t^(2n)."""
    u = build_u(N)
    u2 = u * u
    z = _s2y(N)
    Cz = compose_t(build_C(N), z)
    num = (1 - u2) * z * Cz
    den = 1 + u2 * Cz * Cz * z
    return num * invert(den) * invert(sqrt(1 - 4 * z))


def delta_diagonal_series(N: int) -> Series:
    """(1/2)((1 - 4 s^2 y)^(-1/2) - 1): y^i t^(2n) -> a_{i,i}(2n) - a_{-i,-i}(2n)."""
    return (invert(sqrt(1 - 4 * _s2y(N))) - 1) / 2


def build_F_plus(N: int) -> Series:
    return build_F_minus(N) + delta_diagonal_series(N)


# -- closed forms -----------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormQuery:
    i: int
    n: int

    def __post_init__(self):
        if self.i < 1 or self.n < self.i:
            raise DomainError(f"need i >= 1 and n >= i, got i={self.i}, n={self.n}")


def closed_form_a_diag_neg(q: ClosedFormQuery) -> Fraction:
    """a_{-i,-i}(2n) = i/(2n) C(2i,i) C(n+i,2i) C(4n,2n) / C(2n+2i,2i)."""
    i, n = q.i, q.n
    return (
        Fraction(i, 2 * n)
        * comb(2 * i, i)
        * comb(n + i, 2 * i)
        * Fraction(comb(4 * n, 2 * n), comb(2 * n + 2 * i, 2 * i))
    )


def printed_diag_pos(q: ClosedFormQuery) -> Fraction:
    """The diagonal value with the correction term as printed:
    4^n (i/n) C(2i,i) C(2n,n-i).  Disagrees with enumeration."""
    i, n = q.i, q.n
    return closed_form_a_diag_neg(q) + 4**n * Fraction(i, n) * comb(2 * i, i) * comb(2 * n, n - i)


def delta_closed_form(q: ClosedFormQuery) -> Fraction:
    """Coefficient of y^i t^(2n) in the diagonal difference series.

    Expanding (1/2) C(2i,i) s^(2i) with [x^m] C(x)^k = k/(2m+k) C(2m+k, m)
    gives 4^(n-i) i/(2n) C(2i,i) C(2n,n-i).
    """
    i, n = q.i, q.n
    return 4 ** (n - i) * Fraction(i, 2 * n) * comb(2 * i, i) * comb(2 * n, n - i)


def b_series_first_proof(i: int, N: int) -> Series:
    """(-1)^i (1-u^2)^(1-2i) sum_{k=i}^{2i-1} C(2i-1,k) (-1)^k u^(2k)."""
    if i < 1:
        raise DomainError("i must be positive")
    u = build_u(N)
    u2 = u * u
    total = Series([], N)
    power = u2 ** i
    for k in range(i, 2 * i):
        total = total + power * ((-1) ** k * comb(2 * i - 1, k))
        power = power * u2
    return total * invert(1 - u2) ** (2 * i - 1) * (-1) ** i


# -- catalog ----------------------------------------------------------------


@dataclass(frozen=True)
class NamedSeries:
    name: str
    series: Series
    description: str


CATALOG: dict[str, tuple[Callable[[int], Series], str]] = {
    "C": (build_C, "Catalan series C(t)"),
    "C_neg": (build_C_neg, "C(-t)"),
    "u": (build_u, "u = t C(t) C(-t)"),
    "s": (build_s, "s = t C(4t^2), walks ending at (0,1)"),
    "S": (build_S, "complete generating function S(x,y;t)"),
    "F": (build_F, "diagonal series F(y;t)"),
    "F_plus": (build_F_plus, "positive-y part of F"),
    "F_minus": (build_F_minus, "negative-y part of F, written with y -> 1/y"),
    "X_kernel": (build_X_kernel, "kernel root X(t) of x = t(x^2(1+y) + 1 + 1/y)"),
    "Delta": (delta_diagonal_series, "diagonal difference (1/2)((1-4s^2y)^(-1/2) - 1)"),
}


def named_series(name: str, N: int) -> NamedSeries:
    try:
        builder, description = CATALOG[name]
    except KeyError:
        raise UnknownSeries(name) from None
    return NamedSeries(name, builder(N), description)
