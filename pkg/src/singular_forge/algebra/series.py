"""Truncated Laurent series with explicit valuation and truncation order."""

from __future__ import annotations

from typing import Sequence

from .points import point_str
from .scalars import ONE, ZERO, GaussianRational, as_scalar


def series_divide(num: Sequence, den: Sequence, n: int, zero):
    """First n power-series coefficients of num/den; den[0] must be invertible."""
    inv = den[0].inverse()
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else zero
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return out


def series_mul(a: Sequence, b: Sequence, n: int, zero):
    out = []
    for k in range(n):
        acc = zero
        for j in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return out


class TruncatedLaurent:
    """sum_{k=valuation}^{order} c_k x^k with x = z - a (x = 1/z at infinity), known through `order`."""

    __slots__ = ("point", "valuation", "coeffs", "order")

    def __init__(self, point, valuation: int, coeffs: Sequence, order: int):
        coeffs = [as_scalar(c) for c in coeffs]
        coeffs = coeffs[: max(0, order - valuation + 1)]
        lead = 0
        while lead < len(coeffs) and not coeffs[lead]:
            lead += 1
        coeffs = coeffs[lead:]
        valuation += lead
        if not coeffs:
            valuation = order + 1
        else:
            coeffs += [ZERO] * (order - valuation + 1 - len(coeffs))
        self.point = point
        self.valuation = valuation
        self.coeffs = tuple(coeffs)
        self.order = order

    def is_zero(self) -> bool:
        """True when the series vanishes through its truncation order."""
        return not self.coeffs

    def __getitem__(self, k: int) -> GaussianRational:
        if k > self.order:
            raise IndexError(f"coefficient {k} lies beyond truncation order {self.order}")
        if k < self.valuation:
            return ZERO
        return self.coeffs[k - self.valuation]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        return (self.point == other.point and self.valuation == other.valuation
                and self.coeffs == other.coeffs and self.order == other.order)

    def __repr__(self) -> str:
        terms = ", ".join(f"{self.valuation + i}: {c}" for i, c in enumerate(self.coeffs) if c)
        return f"TruncatedLaurent(at={point_str(self.point)}, {{{terms}}}, O(x^{self.order + 1}))"

    def _check(self, other: "TruncatedLaurent"):
        if self.point != other.point:
            raise ValueError("series expanded at different points")

    def __add__(self, other: "TruncatedLaurent") -> "TruncatedLaurent":
        self._check(other)
        order = min(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        coeffs = [self[k] + other[k] for k in range(lo, order + 1)]
        return TruncatedLaurent(self.point, lo, coeffs, order)

    def __neg__(self) -> "TruncatedLaurent":
        return TruncatedLaurent(self.point, self.valuation, [-c for c in self.coeffs], self.order)

    def __sub__(self, other: "TruncatedLaurent") -> "TruncatedLaurent":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedLaurent":
        if not isinstance(other, TruncatedLaurent):
            s = as_scalar(other)
            return TruncatedLaurent(self.point, self.valuation, [c * s for c in self.coeffs], self.order)
        self._check(other)
        if self.is_zero() or other.is_zero():
            order = min(self.order + other.valuation, other.order + self.valuation)
            return TruncatedLaurent(self.point, order + 1, (), order)
        val = self.valuation + other.valuation
        order = min(self.order + other.valuation, other.order + self.valuation)
        n = order - val + 1
        coeffs = series_mul(self.coeffs, other.coeffs, n, ZERO) if n > 0 else []
        return TruncatedLaurent(self.point, val, coeffs, order)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedLaurent":
        """Multiply by x^k."""
        return TruncatedLaurent(self.point, self.valuation + k, self.coeffs, self.order + k)

    def truncate(self, order: int) -> "TruncatedLaurent":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedLaurent(self.point, self.valuation, self.coeffs, order)

    def derivative(self) -> "TruncatedLaurent":
        """d/dx of the series (the local variable x)."""
        coeffs = [c * (self.valuation + i) for i, c in enumerate(self.coeffs)]
        return TruncatedLaurent(self.point, self.valuation - 1, coeffs, self.order - 1)

    def inverse(self) -> "TruncatedLaurent":
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series that vanishes to working order")
        n = self.order - self.valuation + 1
        coeffs = series_divide([ONE], self.coeffs, n, ZERO)
        return TruncatedLaurent(self.point, -self.valuation, coeffs, -self.valuation + n - 1)

    def exp(self) -> "TruncatedLaurent":
        """exp of a series with positive valuation."""
        if not self.is_zero() and self.valuation < 1:
            raise ValueError("exp requires a series without constant or polar terms")
        n = self.order + 1
        h = [self[k] for k in range(n)]
        hp = [h[k] * k for k in range(n)]  # k h_k, the coefficients of x h'(x)
        e = [ONE] + [ZERO] * (n - 1)
        for k in range(1, n):
            acc = ZERO
            for j in range(1, k + 1):
                if hp[j]:
                    acc = acc + hp[j] * e[k - j]
            e[k] = acc / k
        return TruncatedLaurent(self.point, 0, e, self.order)

    @classmethod
    def constant(cls, point, c, order: int) -> "TruncatedLaurent":
        return cls(point, 0, [as_scalar(c)], order)
