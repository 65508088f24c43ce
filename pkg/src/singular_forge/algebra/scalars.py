"""Exact Gaussian rationals (a + b i) / d."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class UnsupportedScalarField(ValueError):
    """Raised when a value would require an algebraic extension of Q(i)."""


class GaussianRational:
    """An element of Q(i), stored as (a + b i) / d with d > 0 and gcd(a, b, d) = 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int = 0, b: int = 0, d: int = 1):
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        obj.d = d
        return obj

    @classmethod
    def from_parts(cls, re, im=0) -> "GaussianRational":
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return cls(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def is_real(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.d == 1

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.a, -self.b, self.d)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianRational):
            try:
                other = as_scalar(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, int):
                return GaussianRational._raw(self.a + other * self.d, self.b, self.d)
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.d == other.d:
            return GaussianRational(self.a + other.a, self.b + other.b, self.d)
        return GaussianRational(
            self.a * other.d + other.a * self.d,
            self.b * other.d + other.b * self.d,
            self.d * other.d,
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.d == other.d:
            return GaussianRational(self.a - other.a, self.b - other.b, self.d)
        return GaussianRational(
            self.a * other.d - other.a * self.d,
            self.b * other.d - other.b * self.d,
            self.d * other.d,
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, int):
                return GaussianRational(self.a * other, self.b * other, self.d)
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.b == 0 and other.b == 0:
            return GaussianRational(self.a * other.a, 0, self.d * other.d)
        return GaussianRational(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d * other.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.a * self.d, -self.b * self.d, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __complex__(self) -> complex:
        return complex(self.a / self.d, self.b / self.d)

    def floor_re(self) -> int:
        return self.a // self.d

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    def __str__(self) -> str:
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}*I"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{abs(im)}*I"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return GaussianRational._raw(x.numerator, 0, x.denominator)
    return NotImplemented


def as_scalar(x) -> GaussianRational:
    """Coerce ints, Fractions, "a/b" strings and {"re","im"} dicts to a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return _coerce(x)
    if isinstance(x, str):
        return GaussianRational.from_parts(Fraction(x.strip()))
    if isinstance(x, dict):
        return GaussianRational.from_parts(Fraction(str(x.get("re", "0"))), Fraction(str(x.get("im", "0"))))
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars; pass a string or Fraction")
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)
