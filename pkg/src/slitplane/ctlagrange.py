"""Constant-term extraction and the kernel form of Lagrange inversion.

For G, F power series in x and t (coefficients may be Laurent in y), let X be
the unique series with zero constant term satisfying X = t G(X, t).  Then

    CT_x  x / (x - t G(x, t)) * F(x, t)  =  F(X, t) / (1 - t G_x(X, t)).

:func:`kernel_ct` evaluates the right side; :func:`kernel_ct_direct` expands
the left side term by term and is kept as an independent reference.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fps import LaurentPoly, Series, invert, mul, slice_var


@dataclass(frozen=True)
class KernelProblem:
    G: Series
    F: Series
    order: int

    def __post_init__(self):
        for name, s in (("G", self.G), ("F", self.F)):
            if min_x_exponent(s) < 0:
                raise ValueError(f"{name} has a negative power of x")


def min_x_exponent(f: Series) -> int:
    lows = [c.degree_range("x")[0] for c in f.coeffs if c]
    return min(lows, default=0)


def max_x_exponent(f: Series) -> int:
    highs = [c.degree_range("x")[1] for c in f.coeffs if c]
    return max(highs, default=0)


def ct_var(f: Series, var: str) -> Series:
    """Keep exactly the terms whose exponent in ``var`` is zero."""
    return f.map_coeffs(lambda p: p.select(var, 0))


def x_slices(f: Series) -> list[Series]:
    """[f_0, f_1, ...] with f = sum_k f_k(t) x^k; f must be polynomial in x."""
    if min_x_exponent(f) < 0:
        raise ValueError("series has negative powers of x")
    return [slice_var(f, "x", k) for k in range(max_x_exponent(f) + 1)]


def eval_x(f: Series, X: Series) -> Series:
    """f(X, t) by Horner's rule in x.

    X must have zero constant term so that only finitely many powers matter.
    """
    order = min(f.order, X.order)
    if X.coeffs[0]:
        raise ValueError("substituted series must have zero constant term")
    slices = x_slices(f.truncate(order))
    # X^k = O(t^k): higher powers of x cannot contribute
    slices = slices[: order + 1]
    X = X.truncate(order)
    res = slices[-1].truncate(order)
    for s in reversed(slices[:-1]):
        res = mul(res, X) + s.truncate(order)
    return res


def solve_fixed_point(G: Series, order: int, seed: Series | None = None) -> Series:
    """The unique X with X(0) = 0 and X = t G(X, t), modulo t^(order+1).

    Each pass of X <- t G(X, t) fixes one more coefficient.  Without a seed
    the iteration starts from 0 and pass k runs at precision k only; with a
    seed, order+1 full-precision passes are made from it.
    """
    if min_x_exponent(G) < 0:
        raise ValueError("G has a negative power of x")
    if G.order < order - 1:
        raise ValueError(f"G is known only to order {G.order}; need {order - 1}")
    if seed is not None:
        X = seed.truncate(order)
        for _ in range(order + 1):
            X = eval_x(G, X).shift(1).truncate(order)
        return X
    X = Series([], 0)
    for k in range(1, order + 1):
        X = eval_x(G.truncate(k - 1), X).shift(1)
    return X


def kernel_ct(p: KernelProblem) -> Series:
    """F(X, t) / (1 - t G_x(X, t)) with X from :func:`solve_fixed_point`."""
    N = p.order
    X = solve_fixed_point(p.G, N)
    G_x = p.G.map_coeffs(lambda c: c.diff("x")).truncate(N)
    denom = 1 - eval_x(G_x, X).shift(1).truncate(N)
    return mul(eval_x(p.F.truncate(N), X), invert(denom))


def kernel_ct_direct(p: KernelProblem) -> Series:
    """CT_x of F * sum_k (t G / x)^k, expanded literally."""
    N = p.order
    step = p.G.truncate(N).map_coeffs(lambda c: c * LaurentPoly.monomial(1, -1, 0))
    step = step.shift(1).truncate(N)
    term = p.F.truncate(N)
    total = ct_var(term, "x")
    # (tG/x)^k is O(t^k)
    for _ in range(N):
        term = mul(term, step)
        total = total + ct_var(term, "x")
    return total
