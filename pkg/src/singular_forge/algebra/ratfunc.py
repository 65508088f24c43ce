"""Reduced rational functions over Q(i) with order and Laurent-expansion queries."""

from __future__ import annotations

import math

from .points import INF, is_infinity
from .poly import ONE_POLY, ZERO_POLY, Poly, poly_gcd, taylor_shift_coeffs
from .scalars import ONE, ZERO, GaussianRational, as_scalar
from .series import TruncatedLaurent, series_divide


class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic; the zero function is 0/1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=ZERO_POLY, den=ONE_POLY, *, reduce: bool = True):
        if not isinstance(num, Poly):
            num = Poly.const(num) if not isinstance(num, (list, tuple)) else Poly(num)
        if not isinstance(den, Poly):
            den = Poly.const(den) if not isinstance(den, (list, tuple)) else Poly(den)
        if not den.c:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.c:
            den = ONE_POLY
        elif reduce and den.deg > 0:
            g = poly_gcd(num, den)
            if g.deg > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != ONE:
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RationalFunction":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def const(cls, x) -> "RationalFunction":
        s = as_scalar(x)
        return cls._raw(Poly._make((s,)) if s else ZERO_POLY, ONE_POLY)

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls._raw(Poly.x(), ONE_POLY)

    @classmethod
    def pole(cls, a, k: int = 1, coeff=ONE) -> "RationalFunction":
        """coeff / (z - a)^k."""
        return cls._raw(Poly.const(coeff), Poly.linear(a) ** k) if as_scalar(coeff) else ZERO_RF

    @classmethod
    def power(cls, a, k: int) -> "RationalFunction":
        """(z - a)^k for any integer k; for a = INF this is z^(-k)."""
        if is_infinity(a):
            return cls.power(ZERO, -k)
        lin = Poly.linear(a)
        if k >= 0:
            return cls._raw(lin ** k, ONE_POLY)
        return cls._raw(ONE_POLY, lin ** (-k))

    # predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num.c)

    def is_zero(self) -> bool:
        return not self.num.c

    def is_polynomial(self) -> bool:
        return self.den.deg == 0

    def is_constant(self) -> bool:
        return self.den.deg == 0 and self.num.deg <= 0

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.c[0] if self.num.c else ZERO

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            try:
                other = as_rf(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        if self.den.deg == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    # arithmetic -------------------------------------------------------
    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            other = as_rf(other)
        if not self.num.c:
            return other
        if not other.num.c:
            return self
        d1, d2 = self.den, other.den
        if d1.deg == 0 and d2.deg == 0:
            return RationalFunction._raw(self.num + other.num, ONE_POLY)
        if d1 == d2:
            return RationalFunction(self.num + other.num, d1)
        g = poly_gcd(d1, d2)
        if g.deg == 0:
            return RationalFunction._raw(self.num * d2 + other.num * d1, d1 * d2)
        d1g = d1.exact_div(g)
        d2g = d2.exact_div(g)
        num = self.num * d2g + other.num * d1g
        if not num.c:
            return ZERO_RF
        h = poly_gcd(num, g)
        if h.deg > 0:
            num = num.exact_div(h)
            g = g.exact_div(h)
        return RationalFunction._raw(num, d1g * d2g * g)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            other = as_rf(other)
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return as_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            if isinstance(other, Poly):
                other = RationalFunction(other)
            else:
                s = as_scalar(other)
                if not s:
                    return ZERO_RF
                return RationalFunction._raw(self.num * s, self.den)
        if not self.num.c or not other.num.c:
            return ZERO_RF
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.deg == 0 and d2.deg == 0:
            return RationalFunction._raw(n1 * n2, ONE_POLY)
        g1 = poly_gcd(n1, d2) if d2.deg > 0 and n1.deg > 0 else ONE_POLY
        g2 = poly_gcd(n2, d1) if d1.deg > 0 and n2.deg > 0 else ONE_POLY
        if g1.deg > 0:
            n1 = n1.exact_div(g1)
            d2 = d2.exact_div(g1)
        if g2.deg > 0:
            n2 = n2.exact_div(g2)
            d1 = d1.exact_div(g2)
        num = n1 * n2
        den = d1 * d2
        lc = den.lc
        if lc != ONE:
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        return RationalFunction._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.c:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num, reduce=False)

    def __truediv__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            other = as_rf(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return as_rf(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self.num ** k, self.den ** k)

    def derivative(self) -> "RationalFunction":
        if self.den.deg == 0:
            return RationalFunction._raw(self.num.derivative(), ONE_POLY)
        # (n' d - n d') / d^2, reduced through the squarefree structure of d
        n, d = self.num, self.den
        dp = d.derivative()
        g = poly_gcd(d, dp)
        dg = d.exact_div(g)
        num = n.derivative() * dg - n * dp.exact_div(g)
        return RationalFunction(num, dg * d)

    def __call__(self, x):
        x = as_scalar(x)
        dv = self.den(x)
        if not dv:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / dv

    def eval_complex(self, x: complex) -> complex:
        import numpy as np

        return complex(np.polyval(self.num.to_complex()[::-1], x) / np.polyval(self.den.to_complex()[::-1], x)) if self.num.c else 0j

    def substitute_inverse(self) -> "RationalFunction":
        """f(1/w) as a rational function of w."""
        dn, dd = self.num.deg, self.den.deg
        if not self.num.c:
            return self
        num = self.num.reversed()
        den = self.den.reversed()
        if dd > dn:
            num = num.shift_degree(dd - dn)
        elif dn > dd:
            den = den.shift_degree(dn - dd)
        return RationalFunction(num, den, reduce=False)

    def order_at(self, a) -> float | int:
        return order_at(self, a)

    def laurent(self, a, upto: int) -> TruncatedLaurent:
        return laurent_expand(self, a, upto)


def as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction._raw(x, ONE_POLY)
    return RationalFunction.const(x)


ZERO_RF = RationalFunction._raw(ZERO_POLY, ONE_POLY)
ONE_RF = RationalFunction._raw(ONE_POLY, ONE_POLY)


def _poly_order(p: Poly, a: GaussianRational) -> int:
    if not a:
        return p.valuation()
    k = 0
    lin = Poly.linear(a)
    while True:
        q, r = p.divmod(lin)
        if r.c:
            return k
        p = q
        k += 1


def order_at(f: RationalFunction, a) -> float | int:
    """Order of vanishing of f at a (negative for poles, +inf for f = 0)."""
    if not f.num.c:
        return math.inf
    if is_infinity(a):
        return f.den.deg - f.num.deg
    a = as_scalar(a)
    if f.den.deg > 0 and not f.den(a):
        return -_poly_order(f.den, a)
    if not f.num(a):
        return _poly_order(f.num, a)
    return 0


def laurent_expand(f: RationalFunction, a, upto: int) -> TruncatedLaurent:
    """Laurent expansion of f at a (chart w = 1/z at infinity) through order `upto`."""
    if is_infinity(a):
        g = f.substitute_inverse()
        return _expand_at_zero(g.num.c, g.den.c, upto, INF)
    a = as_scalar(a)
    num = taylor_shift_coeffs(f.num.c, a) if a else f.num.c
    den = taylor_shift_coeffs(f.den.c, a) if a else f.den.c
    return _expand_at_zero(num, den, upto, a)


def _expand_at_zero(num, den, upto: int, point) -> TruncatedLaurent:
    if not num:
        return TruncatedLaurent(point, upto + 1, (), upto)
    vn = next(k for k, x in enumerate(num) if x)
    vd = next(k for k, x in enumerate(den) if x)
    val = vn - vd
    if upto < val:
        raise ValueError(f"truncation order {upto} lies below the valuation {val}")
    n = upto - val + 1
    coeffs = series_divide(num[vn:], den[vd:], n, ZERO)
    return TruncatedLaurent(point, val, coeffs, upto)


def principal_part_poly(f: RationalFunction):
    """Split f = polynomial part + proper part."""
    q, r = f.num.divmod(f.den)
    return q, RationalFunction._raw(r, f.den) if r.c else ZERO_RF
