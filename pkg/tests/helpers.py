from contextlib import contextmanager
from fractions import Fraction

from hypothesis import strategies as st

from slitplane import _backend
from slitplane.fps import LaurentPoly, Series

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurent(draw, max_terms=4, span=2, with_x=True):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        ex = draw(st.integers(-span, span)) if with_x else 0
        ey = draw(st.integers(-span, span))
        terms[ex, ey] = draw(small)
    return LaurentPoly(terms)


@st.composite
def series(draw, order=None, constant=None, scalar=False, max_order=8, with_x=True):
    if order is None:
        order = draw(st.integers(0, max_order))
    coeffs = []
    for n in range(order + 1):
        if scalar:
            coeffs.append(LaurentPoly.scalar(draw(small)))
        else:
            coeffs.append(draw(laurent(with_x=with_x)))
    if constant is not None:
        coeffs[0] = LaurentPoly.scalar(Fraction(constant))
    return Series(coeffs, order)


@contextmanager
def using(name):
    """Temporarily switch the kernel backend."""
    previous = _backend.kernels
    _backend.use(name)
    try:
        yield _backend.kernels
    finally:
        _backend.kernels = previous
