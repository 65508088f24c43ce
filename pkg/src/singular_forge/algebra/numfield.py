"""Arithmetic in Q(i)[t]/(g) for squarefree g, by dynamic evaluation.

The quotient is a product of fields, one per irreducible factor of g. A zero
test or an inversion that meets a zero divisor raises Split carrying a
nontrivial factorization of g; callers restart the computation on each factor.
"""

from __future__ import annotations

import numpy as np

from .poly import ONE_POLY, ZERO_POLY, Poly, poly_gcd, poly_gcdex
from .scalars import GaussianRational, as_scalar


class Split(Exception):
    """g = left * right with both factors of positive degree."""

    def __init__(self, left: Poly, right: Poly):
        super().__init__(f"modulus splits: ({left}) * ({right})")
        self.left = left
        self.right = right


class NFElem:
    __slots__ = ("p", "g")

    def __init__(self, p: Poly, g: Poly):
        self.p = p.divmod(g)[1] if p.deg >= g.deg else p
        self.g = g

    @classmethod
    def generator(cls, g: Poly) -> "NFElem":
        return cls(Poly.x(), g)

    @classmethod
    def scalar(cls, x, g: Poly) -> "NFElem":
        return cls(Poly.const(x), g)

    def _lift(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            return other
        if isinstance(other, Poly):
            return NFElem(other, self.g)
        return NFElem(Poly.const(as_scalar(other)), self.g)

    def __add__(self, other) -> "NFElem":
        return NFElem(self.p + self._lift(other).p, self.g)

    __radd__ = __add__

    def __neg__(self) -> "NFElem":
        return NFElem(-self.p, self.g)

    def __sub__(self, other) -> "NFElem":
        return NFElem(self.p - self._lift(other).p, self.g)

    def __rsub__(self, other) -> "NFElem":
        return NFElem(self._lift(other).p - self.p, self.g)

    def __mul__(self, other) -> "NFElem":
        if isinstance(other, (GaussianRational, int)):
            return NFElem(self.p * as_scalar(other), self.g)
        return NFElem(self.p * self._lift(other).p, self.g)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "NFElem":
        if isinstance(other, (GaussianRational, int)):
            return NFElem(self.p * as_scalar(other).inverse(), self.g)
        return self * self._lift(other).inverse()

    def _check_split(self) -> Poly:
        d = poly_gcd(self.p, self.g)
        if 0 < d.deg < self.g.deg:
            raise Split(d, self.g.exact_div(d))
        return d

    def is_zero(self) -> bool:
        if not self.p.c:
            return True
        return self._check_split().deg == self.g.deg

    def __bool__(self) -> bool:
        return not self.is_zero()

    def inverse(self) -> "NFElem":
        d, s, _ = poly_gcdex(self.p, self.g)
        if d.deg == self.g.deg or not d.c:
            raise ZeroDivisionError("inverse of zero in Q(i)[t]/(g)")
        if d.deg > 0:
            raise Split(d, self.g.exact_div(d))
        return NFElem(s, self.g)

    def __eq__(self, other) -> bool:
        return (self - other).is_zero()

    __hash__ = None

    def values(self, roots) -> np.ndarray:
        """Numeric values at the given complex roots of g."""
        c = self.p.to_complex()[::-1] if self.p.c else np.zeros(1, dtype=np.complex128)
        return np.polyval(c, np.asarray(roots))

    def __repr__(self) -> str:
        return f"NFElem({self.p} mod {self.g})"


def nf_zero(g: Poly) -> NFElem:
    return NFElem(ZERO_POLY, g)


def nf_one(g: Poly) -> NFElem:
    return NFElem(ONE_POLY, g)
