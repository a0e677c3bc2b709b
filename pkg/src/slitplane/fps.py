"""Truncated power series in t over Laurent polynomials in x and y.

Coefficients are exact rationals.  A :class:`LaurentPoly` stores integer
numerators over one shared positive denominator, which keeps the inner
convolution loop in plain integer arithmetic; the hot loops live in
``_kernels`` (compiled) or ``_kernels_py`` (fallback).

Every binary operation on :class:`Series` truncates to the smaller of the two
operand orders.  Nothing ever extends precision silently.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Mapping

from . import _backend
from ._kernels_py import HALF_BASE, KEY_BASE


class SeriesError(ValueError):
    """Base class for power-series domain errors."""


class NonScalarUnit(SeriesError):
    pass


class BadConstantTerm(SeriesError):
    pass


class NonzeroConstant(SeriesError):
    pass


class NonInvertibleSubstitution(SeriesError):
    pass


class OrderExceeded(SeriesError, IndexError):
    pass


def pack(ex: int, ey: int) -> int:
    return ex * KEY_BASE + ey


def unpack(key: int) -> tuple[int, int]:
    ey = (key + HALF_BASE) % KEY_BASE - HALF_BASE
    return (key - ey) // KEY_BASE, ey


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


class LaurentPoly:
    """Sparse Laurent polynomial in x, y with rational coefficients.

    Immutable.  Equality is structural: terms are kept in lowest terms with no
    zero entries, so two equal polynomials have identical storage.
    """

    __slots__ = ("_terms", "_den", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        if not terms:
            self._terms, self._den = {}, 1
        else:
            fracs = {pack(ex, ey): _as_fraction(c) for (ex, ey), c in terms.items()}
            den = lcm(*(f.denominator for f in fracs.values()))
            raw = {k: f.numerator * (den // f.denominator) for k, f in fracs.items()}
            self._terms, self._den = _backend.kernels.normalize(raw, den)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, den: int) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms, obj._den = _backend.kernels.normalize(terms, den)
        obj._hash = None
        return obj

    @classmethod
    def scalar(cls, c) -> "LaurentPoly":
        c = _as_fraction(c)
        return cls._raw({0: c.numerator}, c.denominator)

    @classmethod
    def monomial(cls, c, ex: int = 0, ey: int = 0) -> "LaurentPoly":
        c = _as_fraction(c)
        return cls._raw({pack(ex, ey): c.numerator}, c.denominator)

    # -- inspection -------------------------------------------------------

    def terms(self) -> dict[tuple[int, int], Fraction]:
        """Exponent pair -> coefficient, in ascending lexicographic order."""
        d = self._den
        out = {unpack(k): Fraction(v, d) for k, v in self._terms.items()}
        return dict(sorted(out.items()))

    def coefficient(self, ex: int = 0, ey: int = 0) -> Fraction:
        return Fraction(self._terms.get(pack(ex, ey), 0), self._den)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def scalar_value(self) -> Fraction:
        if not self.is_scalar():
            raise NonScalarUnit("Laurent polynomial is not a pure rational")
        return Fraction(self._terms.get(0, 0), self._den)

    def exponents(self) -> list[tuple[int, int]]:
        return sorted(unpack(k) for k in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._den == other._den and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == LaurentPoly.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._den, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms()!r})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return lin_comb([(1, self), (1, other)])

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return lin_comb([(1, self), (-1, other)])

    def __rsub__(self, other) -> "LaurentPoly":
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._terms.items()}, self._den)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict = {}
        _backend.kernels.mul_add(acc, self._terms, other._terms, 1)
        return LaurentPoly._raw(acc, self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = _as_fraction(c)
        if not c:
            return ZERO
        return LaurentPoly._raw(
            {k: v * c.numerator for k, v in self._terms.items()}, self._den * c.denominator
        )

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structural maps --------------------------------------------------

    def subst_monomial(self, x_image: tuple[int, int], y_image: tuple[int, int]) -> "LaurentPoly":
        (a, b), (c, d) = x_image, y_image
        out = {}
        for key, v in self._terms.items():
            ex, ey = unpack(key)
            out[pack(ex * a + ey * c, ex * b + ey * d)] = v
        return LaurentPoly._raw(out, self._den)

    def select(self, var: str, exponent: int) -> "LaurentPoly":
        """Terms whose exponent in ``var`` equals ``exponent`` (exponent kept)."""
        idx = _var_index(var)
        return LaurentPoly._raw(
            {k: v for k, v in self._terms.items() if unpack(k)[idx] == exponent}, self._den
        )

    def diff(self, var: str) -> "LaurentPoly":
        idx = _var_index(var)
        out = {}
        for k, v in self._terms.items():
            e = unpack(k)[idx]
            if e:
                out[k - (KEY_BASE if idx == 0 else 1)] = v * e
        return LaurentPoly._raw(out, self._den)

    def specialize(self, var: str, value) -> "LaurentPoly":
        """Set ``var`` to a nonzero rational value."""
        idx = _var_index(var)
        value = _as_fraction(value)
        if not value:
            raise ZeroDivisionError("cannot specialize a Laurent variable at 0")
        out = {}
        for (ex, ey), c in self.terms().items():
            e = (ex, ey)[idx]
            key = (0, ey) if idx == 0 else (ex, 0)
            out[key] = out.get(key, 0) + c * value**e
        return LaurentPoly(out)

    def degree_range(self, var: str) -> tuple[int, int] | None:
        if not self._terms:
            return None
        idx = _var_index(var)
        es = [unpack(k)[idx] for k in self._terms]
        return min(es), max(es)

    def exact_div_y(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient by a Laurent polynomial in y alone.

        Raises ``ArithmeticError`` if the division leaves a remainder.
        """
        if divisor.is_zero() or divisor.degree_range("x") != (0, 0):
            raise ValueError("divisor must be a nonzero Laurent polynomial in y")
        dlo, dhi = divisor.degree_range("y")
        lead = divisor.coefficient(0, dhi)
        quot = {}
        # each power of x is an independent univariate division in y
        for ex in sorted({e for e, _ in self.exponents()}):
            rem = self.select("x", ex)
            floor = rem.degree_range("y")[0] - dlo
            while rem:
                top = rem.degree_range("y")[1]
                if top - dhi < floor:
                    raise ArithmeticError("division by the y-polynomial is not exact")
                c = rem.coefficient(ex, top) / lead
                quot[(ex, top - dhi)] = c
                rem = rem - LaurentPoly.monomial(c, ex, top - dhi) * divisor
        return LaurentPoly(quot)


def _var_index(var: str) -> int:
    try:
        return {"x": 0, "y": 1}[var]
    except KeyError:
        raise ValueError(f"variable must be 'x' or 'y', got {var!r}") from None


def _coerce_poly(c) -> LaurentPoly | None:
    if isinstance(c, LaurentPoly):
        return c
    if isinstance(c, (int, Rational)):
        return LaurentPoly.scalar(c)
    return None


def lin_comb(pairs: Iterable[tuple[object, LaurentPoly]]) -> LaurentPoly:
    """Sum of ``c * p`` over (rational, LaurentPoly) pairs."""
    items = [(_as_fraction(c), p) for c, p in pairs if c and p]
    if not items:
        return ZERO
    den = lcm(*(c.denominator * p._den for c, p in items))
    acc: dict = {}
    add = _backend.kernels.add_scaled
    for c, p in items:
        add(acc, p._terms, c.numerator * (den // (c.denominator * p._den)))
    return LaurentPoly._raw(acc, den)


def sum_of_products(pairs: Iterable[tuple[LaurentPoly, LaurentPoly]]) -> LaurentPoly:
    """Sum of ``a * b`` over pairs; one normalisation at the end."""
    pairs = [(a, b) for a, b in pairs if a and b]
    if not pairs:
        return ZERO
    den = lcm(*(a._den * b._den for a, b in pairs))
    acc: dict = {}
    mul_add = _backend.kernels.mul_add
    for a, b in pairs:
        mul_add(acc, a._terms, b._terms, den // (a._den * b._den))
    return LaurentPoly._raw(acc, den)


ZERO = LaurentPoly()
ONE = LaurentPoly.scalar(1)


class Series:
    """Element of R[x, 1/x, y, 1/y][[t]] modulo t^(order+1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [c if isinstance(c, LaurentPoly) else LaurentPoly.scalar(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = cs[: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self.coeffs: tuple[LaurentPoly, ...] = tuple(cs)
        self.order = order

    @classmethod
    def _of(cls, coeffs: list, order: int) -> "Series":
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.order = order
        return obj

    @classmethod
    def constant(cls, c, order: int) -> "Series":
        return cls([c], order)

    @classmethod
    def monomial(cls, c, n: int, order: int, ex: int = 0, ey: int = 0) -> "Series":
        cs = [ZERO] * (order + 1)
        if n <= order:
            cs[n] = LaurentPoly.monomial(c, ex, ey)
        return cls._of(cs, order)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int, int], object], order: int) -> "Series":
        """Build from {(n, ex, ey): coefficient}; terms beyond ``order`` are dropped."""
        by_n: dict[int, dict] = {}
        for (n, ex, ey), c in terms.items():
            if n <= order:
                by_n.setdefault(n, {})[(ex, ey)] = c
        return cls([LaurentPoly(by_n.get(n)) for n in range(order + 1)], order)

    # -- inspection -------------------------------------------------------

    def __getitem__(self, n: int) -> LaurentPoly:
        return coeff(self, n)

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_scalar(self) -> bool:
        return all(c.is_scalar() for c in self.coeffs)

    def scalars(self) -> list[Fraction]:
        """Coefficients of a scalar series as rationals."""
        return [c.scalar_value() for c in self.coeffs]

    def items(self):
        """Yield (n, ex, ey, coefficient) in canonical order."""
        for n, c in enumerate(self.coeffs):
            for (ex, ey), v in c.terms().items():
                yield n, ex, ey, v

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"Series({self.to_text()!s}, order={self.order})"

    def to_text(self) -> str:
        return format_series(self)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Series | None":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Rational, LaurentPoly)):
            return Series.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else add(other, -self)

    def __neg__(self):
        return Series._of([-c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Series._of([c.scale(other) for c in self.coeffs], self.order)
        if isinstance(other, LaurentPoly):
            return Series._of([c * other for c in self.coeffs], self.order)
        if isinstance(other, Series):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / _as_fraction(other))
        if isinstance(other, Series):
            return mul(self, invert(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        out = Series.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                out = mul(out, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return out

    # -- order bookkeeping ------------------------------------------------

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise OrderExceeded(f"cannot raise order {self.order} to {order}")
        return Series._of(list(self.coeffs[: order + 1]), order)

    def shift(self, k: int) -> "Series":
        """Multiply by t^k exactly; the known order grows by k."""
        return Series._of([ZERO] * k + list(self.coeffs), self.order + k)

    def div_t(self, k: int = 1) -> "Series":
        """Divide by t^k; the low k coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise NonzeroConstant(f"series is not divisible by t^{k}")
        if k > self.order:
            raise OrderExceeded("no coefficients left after division")
        return Series._of(list(self.coeffs[k:]), self.order - k)

    def map_coeffs(self, fn) -> "Series":
        return Series._of([fn(c) for c in self.coeffs], self.order)


def var(name: str, order: int) -> Series:
    """The series t, x, y, xbar or ybar at the given order."""
    table = {"t": (1, 0, 0), "x": (0, 1, 0), "y": (0, 0, 1), "xbar": (0, -1, 0), "ybar": (0, 0, -1)}
    n, ex, ey = table[name]
    return Series.monomial(1, n, order, ex, ey)


def add(a: Series, b: Series) -> Series:
    order = min(a.order, b.order)
    return Series._of(
        [a.coeffs[n] + b.coeffs[n] for n in range(order + 1)], order
    )


def mul(a: Series, b: Series) -> Series:
    order = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    a_nz = [k for k in range(order + 1) if ac[k]]
    b_nz = {k for k in range(order + 1) if bc[k]}
    out = []
    for n in range(order + 1):
        out.append(sum_of_products(
            (ac[k], bc[n - k]) for k in a_nz if k <= n and (n - k) in b_nz
        ))
    return Series._of(out, order)


def invert(a: Series) -> Series:
    c0 = a.coeffs[0]
    if not c0 or not c0.is_scalar():
        raise NonScalarUnit("constant coefficient must be a nonzero rational")
    inv0 = 1 / c0.scalar_value()
    ac = a.coeffs
    a_nz = [k for k in range(1, a.order + 1) if ac[k]]
    r = [LaurentPoly.scalar(inv0)]
    for n in range(1, a.order + 1):
        s = sum_of_products((ac[k], r[n - k]) for k in a_nz if k <= n)
        r.append(s.scale(-inv0))
    return Series._of(r, a.order)


def sqrt(a: Series) -> Series:
    """Square root with constant term 1, by the order-by-order recurrence."""
    if a.coeffs[0] != ONE:
        raise BadConstantTerm("sqrt needs constant coefficient exactly 1")
    r = [ONE]
    half = Fraction(1, 2)
    for n in range(1, a.order + 1):
        # the t^n coefficient of r^2 is 2 r_n + sum_{0<k<n} r_k r_{n-k}
        cross = sum_of_products((r[k], r[n - k]) for k in range(1, (n + 1) // 2))
        acc = [(1, a.coeffs[n]), (-2, cross)]
        if n % 2 == 0 and n > 0:
            acc.append((-1, r[n // 2] * r[n // 2]))
        r.append(lin_comb(acc).scale(half))
    return Series._of(r, a.order)


def compose_t(f: Series, g: Series) -> Series:
    """f(g(t)) for g with zero constant term."""
    if g.coeffs[0]:
        raise NonzeroConstant("inner series must have zero constant term")
    v = g.valuation()
    if v is None:
        return Series.constant(f.coeffs[0], g.order)
    order = min(g.order, v * (f.order + 1) - 1)
    g = g.truncate(order)
    top = min(f.order, order // v)
    res = Series.constant(f.coeffs[top], order)
    for k in range(top - 1, -1, -1):
        res = mul(res, g) + Series.constant(f.coeffs[k], order)
    return res


def subst_monomial(f: Series, x_image: tuple[int, int], y_image: tuple[int, int]) -> Series:
    """Rewrite x -> x^a y^b and y -> x^c y^d, given as exponent pairs."""
    (a, b), (c, d) = x_image, y_image
    if a * d - b * c not in (1, -1):
        raise NonInvertibleSubstitution(f"exponent matrix {x_image}, {y_image} is singular over Z")
    return f.map_coeffs(lambda p: p.subst_monomial(x_image, y_image))


def t_log_derivative(f: Series) -> Series:
    """t d/dt: the t^n coefficient is multiplied by n."""
    return Series._of([c.scale(n) for n, c in enumerate(f.coeffs)], f.order)


def t_log_integrate(f: Series) -> Series:
    """Inverse of t d/dt on series without constant term."""
    if f.coeffs[0]:
        raise NonzeroConstant("t-log integration needs a zero constant term")
    return Series._of(
        [ZERO] + [c.scale(Fraction(1, n)) for n, c in enumerate(f.coeffs) if n], f.order
    )


def coeff(f: Series, n: int) -> LaurentPoly:
    if not 0 <= n <= f.order:
        raise OrderExceeded(f"t^{n} is outside 0..{f.order}")
    return f.coeffs[n]


def slice_var(f: Series, var: str, exponent: int) -> Series:
    """Series of the coefficients of var^exponent, with that variable removed."""
    idx = _var_index(var)

    def take(p: LaurentPoly) -> LaurentPoly:
        sel = p.select(var, exponent)
        out = {}
        for key, v in sel._terms.items():
            ex, ey = unpack(key)
            out[pack(*((0, ey) if idx == 0 else (ex, 0)))] = v
        return LaurentPoly._raw(out, sel._den)

    return f.map_coeffs(take)


def _monomial_text(n: int, ex: int, ey: int) -> list[str]:
    parts = []
    for name, e in (("x", ex), ("y", ey), ("t", n)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return parts


def format_series(f: Series) -> str:
    """Canonical text: ascending t, then lexicographic (x, y) exponents."""
    out = []
    for n, ex, ey, c in f.items():
        mono = _monomial_text(n, ex, ey)
        mag = abs(c)
        body = "*".join(mono if mag == 1 and mono else [str(mag)] + mono)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out) if out else "0"
