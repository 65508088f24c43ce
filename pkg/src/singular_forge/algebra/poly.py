"""Dense univariate polynomials over Q(i), coefficients lowest degree first."""

from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .scalars import ONE, ZERO, GaussianRational, UnsupportedScalarField, as_scalar


def _trim(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


class Poly:
    """Immutable polynomial with GaussianRational coefficients."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim([as_scalar(x) for x in coeffs])
        self._hash = None

    @classmethod
    def _make(cls, c) -> "Poly":
        obj = object.__new__(cls)
        obj.c = _trim(list(c)) if (c and not c[-1]) else tuple(c)
        obj._hash = None
        return obj

    @classmethod
    def const(cls, x) -> "Poly":
        return cls._make((as_scalar(x),))

    @classmethod
    def x(cls) -> "Poly":
        return cls._make((ZERO, ONE))

    @classmethod
    def linear(cls, a) -> "Poly":
        """z - a."""
        return cls._make((-as_scalar(a), ONE))

    @classmethod
    def monomial(cls, k: int, coeff=ONE) -> "Poly":
        return cls._make((ZERO,) * k + (as_scalar(coeff),))

    @property
    def coeffs(self) -> tuple:
        return self.c

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> GaussianRational:
        return self.c[-1] if self.c else ZERO

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({[str(x) for x in self.c]})"

    def __str__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for k, x in enumerate(self.c):
            if not x:
                continue
            mono = "" if k == 0 else "z" + (f"^{k}" if k > 1 else "")
            if not mono:
                terms.append(f"({x})" if not x.is_real() else str(x))
            elif x == 1:
                terms.append(mono)
            elif x == -1:
                terms.append("-" + mono)
            else:
                terms.append((f"({x})" if not x.is_real() else str(x)) + "*" + mono)
        return " + ".join(terms)

    # arithmetic -------------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly._make(tuple(-x for x in self.c))

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly._make(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            s = as_scalar(other)
            if not s:
                return ZERO_POLY
            return Poly._make(tuple(x * s for x in self.c))
        a, b = self.c, other.c
        if not a or not b:
            return ZERO_POLY
        if len(a) == 1:
            s = a[0]
            return Poly._make(tuple(s * x for x in b))
        if len(b) == 1:
            s = b[0]
            return Poly._make(tuple(x * s for x in a))
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly._make(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, s) -> "Poly":
        return self * s

    def shift_degree(self, k: int) -> "Poly":
        """Multiply by z^k."""
        if not self.c or k == 0:
            return self
        return Poly._make((ZERO,) * k + self.c)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = other.deg
        if len(r) - 1 < db:
            return ZERO_POLY, self
        inv_lc = other.c[-1].inverse()
        q = [ZERO] * (len(r) - db)
        bc = other.c
        for k in range(len(r) - 1 - db, -1, -1):
            t = r[k + db]
            if not t:
                continue
            t = t * inv_lc
            q[k] = t
            for j in range(db):
                if bc[j]:
                    r[k + j] = r[k + j] - t * bc[j]
            r[k + db] = ZERO
        return Poly._make(q), Poly._make(r[:db] if db > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self.c:
            return self
        lc = self.c[-1]
        if lc == ONE:
            return self
        inv = lc.inverse()
        return Poly._make(tuple(x * inv for x in self.c))

    def derivative(self) -> "Poly":
        return Poly._make(tuple(self.c[k] * k for k in range(1, len(self.c))))

    def __call__(self, x):
        acc = None
        for coeff in reversed(self.c):
            acc = coeff if acc is None else acc * x + coeff
        if acc is None:
            return ZERO if isinstance(x, GaussianRational) else x * 0
        return acc

    def taylor_shift(self, a) -> "Poly":
        """Coefficients of p(a + x) as a polynomial in x."""
        a = as_scalar(a)
        if not a:
            return self
        return Poly._make(taylor_shift_coeffs(self.c, a))

    def valuation(self) -> int | None:
        """Index of the lowest nonzero coefficient (None for the zero polynomial)."""
        for k, x in enumerate(self.c):
            if x:
                return k
        return None

    def reversed(self, n: int | None = None) -> "Poly":
        """z^n p(1/z) with n = deg p by default."""
        if n is None:
            n = self.deg
        if not self.c:
            return self
        if n < self.deg:
            raise ValueError("reversal degree below polynomial degree")
        return Poly._make(tuple(reversed(self.c + (ZERO,) * (n - self.deg))))

    def to_complex(self) -> np.ndarray:
        """Coefficients as a complex array, lowest degree first."""
        return np.array([complex(x) for x in self.c], dtype=np.complex128)


ZERO_POLY = Poly._make(())
ONE_POLY = Poly._make((ONE,))


def taylor_shift_coeffs(c: Sequence, a) -> tuple:
    """Coefficients of p(a + x) given coefficients of p; works over any ring holding `a`."""
    out = list(c)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = out[j] + a * out[j + 1]
    return tuple(out)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q(i) by the Euclidean algorithm."""
    if not f.c:
        return g.monic()
    if not g.c:
        return f.monic()
    if f.deg < g.deg:
        f, g = g, f
    if g.deg == 0:
        return ONE_POLY
    f, g = f.monic(), g.monic()
    while g.c:
        r = f.divmod(g)[1]
        f, g = g, r.monic()
        if g.deg == 0:
            return ONE_POLY
    return f


def poly_gcdex(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (d, s, t) with s f + t g = d = monic gcd(f, g)."""
    r0, r1 = f, g
    s0, s1 = ONE_POLY, ZERO_POLY
    t0, t1 = ZERO_POLY, ONE_POLY
    while r1.c:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.c:
        return ZERO_POLY, ZERO_POLY, ZERO_POLY
    inv = r0.lc.inverse()
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if not f.c or not g.c:
        return ZERO_POLY
    return (f * g.exact_div(poly_gcd(f, g))).monic()


def poly_lcm_many(polys: Iterable[Poly]) -> Poly:
    return reduce(poly_lcm, polys, ONE_POLY)


def squarefree_part(f: Poly) -> Poly:
    if f.deg <= 0:
        return ONE_POLY if f.c else f
    g = poly_gcd(f, f.derivative())
    return f.exact_div(g).monic()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree factors with multiplicities (constant factors dropped)."""
    out = []
    if f.deg <= 0:
        return out
    f = f.monic()
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.deg > 0:
        a = poly_gcd(b, d)
        if a.deg > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _gaussian_integer_form(f: Poly) -> tuple[int, int]:
    """Leading coefficient (re, im) of f scaled to have Gaussian integer coefficients."""
    den = 1
    for x in f.c:
        den = den * x.d // gcd(den, x.d)
    lc = f.lc
    return lc.a * (den // lc.d), lc.b * (den // lc.d)


def _numeric_roots(f: Poly, precise: bool = False) -> list[complex]:
    if precise:
        import mpmath

        with mpmath.workdps(60):
            coeffs = [mpmath.mpc(mpmath.mpf(x.a) / x.d, mpmath.mpf(x.b) / x.d) for x in reversed(f.c)]
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
            return [complex(r) for r in roots]
    return list(np.roots(f.to_complex()[::-1]))


def qi_roots(f: Poly) -> list[tuple[GaussianRational, int]]:
    """All roots of f with multiplicities, provided every root lies in Q(i).

    Raises UnsupportedScalarField otherwise. Candidates come from floating
    roots and are accepted only after exact verification.
    """
    result = []
    for factor, mult in squarefree_decomposition(f):
        for root in _squarefree_qi_roots(factor):
            result.append((root, mult))
    result.sort(key=lambda t: t[0].sort_key())
    return result


def _squarefree_qi_roots(f: Poly) -> list[GaussianRational]:
    roots: list[GaussianRational] = []
    remaining = f.monic()
    for precise in (False, True):
        if remaining.deg <= 0:
            break
        la, lb = _gaussian_integer_form(remaining)
        lcz = complex(la, lb)
        lcq = GaussianRational(la, lb, 1)
        for r in _numeric_roots(remaining, precise=precise):
            if remaining.deg <= 0:
                break
            w = lcz * r
            cand = GaussianRational(int(round(w.real)), int(round(w.imag)), 1) / lcq
            if not remaining(cand):
                roots.append(cand)
                remaining = remaining.exact_div(Poly.linear(cand))
                la, lb = _gaussian_integer_form(remaining) if remaining.deg > 0 else (1, 0)
                lcz = complex(la, lb)
                lcq = GaussianRational(la, lb, 1)
    if remaining.deg > 0:
        raise UnsupportedScalarField(f"polynomial factor {remaining} has roots outside Q(i)")
    return roots


def numeric_roots(f: Poly) -> list[complex]:
    """Floating approximations of the distinct roots of f."""
    sf = squarefree_part(f)
    if sf.deg <= 0:
        return []
    return [complex(r) for r in np.roots(sf.to_complex()[::-1])]


def poly_from_roots(roots: Iterable) -> Poly:
    out = ONE_POLY
    for r in roots:
        out = out * Poly.linear(r)
    return out
