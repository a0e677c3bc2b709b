from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slitplane.fps import (
    BadConstantTerm,
    LaurentPoly,
    NonInvertibleSubstitution,
    NonScalarUnit,
    NonzeroConstant,
    OrderExceeded,
    Series,
    add,
    coeff,
    compose_t,
    invert,
    mul,
    sqrt,
    subst_monomial,
    t_log_derivative,
    t_log_integrate,
    var,
)
from slitplane.gf import binom

from helpers import series


def scal(*cs, order=None):
    return Series(cs, order)


def catalan_numbers(k):
    c = [1]
    for n in range(k):
        c.append(sum(c[j] * c[n - j] for j in range(n + 1)))
    return c


# -- LaurentPoly --------------------------------------------------------------


def test_laurent_zero_pruning_and_lowest_terms():
    p = LaurentPoly({(1, 0): Fraction(2, 4), (0, 1): 0})
    assert p.terms() == {(1, 0): Fraction(1, 2)}
    assert p == LaurentPoly({(1, 0): Fraction(1, 2)})
    assert (p - p).is_zero()


def test_laurent_negative_exponents_roundtrip():
    p = LaurentPoly({(-3, 5): 1, (2, -7): -2, (0, 0): 3})
    assert p.coefficient(-3, 5) == 1
    assert p.coefficient(2, -7) == -2
    assert p.exponents() == [(-3, 5), (0, 0), (2, -7)]


def test_laurent_product():
    x = LaurentPoly({(1, 0): 1})
    xb = LaurentPoly({(-1, 0): 1})
    assert (x + xb) ** 2 == LaurentPoly({(2, 0): 1, (0, 0): 2, (-2, 0): 1})


def test_exact_div_y():
    one_plus_y = LaurentPoly({(0, 0): 1, (0, 1): 1})
    q = LaurentPoly({(0, -1): 1, (0, 0): 2, (3, 2): Fraction(1, 3)})
    assert (q * one_plus_y).exact_div_y(one_plus_y) == q
    with pytest.raises(ArithmeticError):
        LaurentPoly({(0, 0): 1}).exact_div_y(one_plus_y)


def test_diff_x():
    p = LaurentPoly({(2, 1): 1, (0, 0): 5, (-1, 0): 3})
    assert p.diff("x") == LaurentPoly({(1, 1): 2, (-2, 0): -3})


# -- add / mul -------------------------------------------------------------------


def test_add_cancellation():
    assert scal(1, 1) + scal(1, -1) == scal(2, 0)


def test_add_identity():
    f = var("x", 3) + var("t", 3) * var("ybar", 3)
    assert f + Series([], 3) == f


def test_add_term_merge():
    t = var("t", 2)
    got = t * var("x", 2) + t * var("xbar", 2)
    assert coeff(got, 1) == LaurentPoly({(1, 0): 1, (-1, 0): 1})


def test_add_truncates_to_smaller_order():
    assert add(scal(1, 1, 1), scal(1, 1)).order == 1


def test_mul_difference_of_squares():
    assert mul(scal(1, 1, 0), scal(1, -1, 0)) == scal(1, 0, -1)


def test_mul_catalan_product_gives_u():
    # oracle: Catalan numbers from their recurrence, Cauchy product by hand
    c = catalan_numbers(6)
    C = scal(*c, order=6)
    Cneg = scal(*[(-1) ** n * v for n, v in enumerate(c)], order=6)
    manual = [0] + [sum(c[k] * (-1) ** (n - k) * c[n - k] for k in range(n + 1)) for n in range(6)]
    assert manual[:6] == [0, 1, 0, 3, 0, 22]
    assert (C * Cneg).shift(1).truncate(5) == scal(*manual[:6], order=5)


@given(series())
def test_mul_identity(f):
    assert f * Series.constant(1, f.order) == f


# -- invert ---------------------------------------------------------------------


def test_invert_geometric():
    assert invert(scal(1, -1, order=5)) == scal(1, 1, 1, 1, 1, 1)


def test_invert_one():
    assert invert(Series.constant(1, 4)) == Series.constant(1, 4)


def test_invert_binomial_square():
    t, x, xb = var("t", 3), var("x", 3), var("xbar", 3)
    inv = invert(1 - t * (x + xb))
    assert coeff(inv, 2) == LaurentPoly({(2, 0): 1, (0, 0): 2, (-2, 0): 1})


@pytest.mark.parametrize("bad", [Series.constant(0, 2), var("x", 2), var("t", 2)])
def test_invert_needs_scalar_unit(bad):
    with pytest.raises(NonScalarUnit):
        invert(bad)


# -- sqrt -------------------------------------------------------------------------


def test_sqrt_binomial_series():
    # oracle: binom(1/2, n) (-4)^n
    want = [binom(Fraction(1, 2), n) * (-4) ** n for n in range(9)]
    assert want[:5] == [1, -2, -2, -4, -10]
    assert sqrt(scal(1, -4, order=8)) == scal(*want)


def test_sqrt_one():
    assert sqrt(Series.constant(1, 3)) == Series.constant(1, 3)


def test_sqrt_perfect_square():
    assert sqrt(scal(1, 2, 1, order=6)) == scal(1, 1, order=6)


@pytest.mark.parametrize("bad", [Series.constant(4, 2), Series.constant(0, 2), var("x", 2) + 1])
def test_sqrt_constant_term(bad):
    with pytest.raises(BadConstantTerm):
        sqrt(bad)


# -- compose_t ----------------------------------------------------------------


def test_compose_catalan_at_4t2():
    C = scal(1, 1, 2, 5)
    got = compose_t(C, 4 * var("t", 7) ** 2)
    assert got == scal(1, 0, 4, 0, 32, 0, 320, 0)


def test_compose_with_zero():
    f = scal(3, 1, 2, order=4)
    assert compose_t(f, Series([], 4)) == Series.constant(3, 4)


def test_compose_s_relation():
    # s = t C(4t^2); t = s / (1 + 4 s^2) as a series in s
    c = catalan_numbers(10)
    N = 19
    s_of_t = Series([0] + [c[k // 2] * 4 ** (k // 2) if k % 2 == 0 else 0 for k in range(N)], N)
    t_of_s = var("t", N) * invert(1 + 4 * var("t", N) ** 2)
    assert compose_t(t_of_s, s_of_t) == var("t", N)


def test_compose_requires_zero_constant():
    with pytest.raises(NonzeroConstant):
        compose_t(scal(1, 1), scal(1, 1))


def test_compose_order_accounts_for_valuation():
    assert compose_t(scal(1, 1, 1), var("t", 10) ** 3).order == 8


# -- subst_monomial ---------------------------------------------------------------


def test_subst_exponent_arithmetic():
    xy = Series.constant(LaurentPoly({(1, 1): 1}), 0)
    got = subst_monomial(xy, (-1, 0), (1, 1))
    assert got == Series.constant(LaurentPoly({(0, 1): 1}), 0)


@given(series(max_order=4))
def test_subst_identity(f):
    assert subst_monomial(f, (1, 0), (0, 1)) == f


@given(series(max_order=4))
def test_subst_involution(f):
    # x -> 1/x, y -> x y is its own inverse
    g = subst_monomial(f, (-1, 0), (1, 1))
    assert subst_monomial(g, (-1, 0), (1, 1)) == f


@pytest.mark.parametrize("images", [((1, 1), (1, 1)), ((2, 0), (0, 1)), ((0, 0), (0, 1))])
def test_subst_must_be_invertible(images):
    with pytest.raises(NonInvertibleSubstitution):
        subst_monomial(Series.constant(1, 1), *images)


# -- t d/dt -------------------------------------------------------------------------


def test_log_derivative_examples():
    assert t_log_derivative(scal(0, 0, 1)) == scal(0, 0, 2)
    assert t_log_derivative(Series.constant(7, 3)) == Series([], 3)
    assert t_log_derivative(scal(0, 1, 0, 4)) == scal(0, 1, 0, 12)


def test_log_integrate_examples():
    assert t_log_integrate(scal(0, 0, 2)) == scal(0, 0, 1)
    assert t_log_integrate(scal(0, 1, 0, 12)) == scal(0, 1, 0, 4)
    with pytest.raises(NonzeroConstant):
        t_log_integrate(scal(1, 1))


@given(series())
def test_log_integrate_inverts_derivative(f):
    assert t_log_integrate(t_log_derivative(f)) == f - Series.constant(f.coeffs[0], f.order)


# -- coeff --------------------------------------------------------------------------


def test_coeff_examples():
    assert coeff(scal(1, 3), 1) == 3
    with pytest.raises(OrderExceeded):
        coeff(scal(1, 3), 2)
    with pytest.raises(OrderExceeded):
        coeff(scal(1, 3), -1)


def test_coeff_central_binomial():
    t, x, xb = var("t", 4), var("x", 4), var("xbar", 4)
    c4 = coeff(invert(1 - t * (x + xb)), 4)
    assert c4.specialize("x", 1) == 16
    assert c4.coefficient(0, 0) == 6


def test_format_series():
    assert scal(1, 1, 2).to_text() == "1 + t + 2*t^2"
    assert scal(0, Fraction(-1, 2), 0, -3).to_text() == "-1/2*t - 3*t^3"
    assert Series([], 3).to_text() == "0"
    assert (var("t", 2) * var("xbar", 2)).to_text() == "x^-1*t"


# -- ring properties ----------------------------------------------------------


@given(series(order=5), series(order=5), series(order=5))
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100)
@given(st.integers(0, 20).flatmap(lambda N: series(order=N, constant=1, with_x=False)))
def test_sqrt_squares_back(a):
    r = sqrt(a)
    assert r.coeffs[0] == 1
    assert r * r == a


@given(series(constant=1) | series(constant=-3, scalar=True))
def test_invert_is_inverse(a):
    assert a * invert(a) == Series.constant(1, a.order)


@given(series(order=6, scalar=True), series(order=6, constant=0, scalar=True),
       series(order=6, constant=0, scalar=True))
def test_compose_associative(f, g, h):
    lhs = compose_t(compose_t(f, g), h)
    rhs = compose_t(f, compose_t(g, h))
    order = min(lhs.order, rhs.order)
    assert lhs.truncate(order) == rhs.truncate(order)
