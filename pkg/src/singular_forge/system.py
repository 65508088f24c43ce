"""Linear systems dy/dz = B(z) y and scalar equations on the Riemann sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .algebra.matrix import RatMatrix
from .algebra.points import INF, as_point, is_infinity, point_key, point_str
from .algebra.poly import Poly, poly_lcm_many, qi_roots, squarefree_part
from .algebra.ratfunc import ONE_RF, ZERO_RF, RationalFunction, as_rf, laurent_expand, order_at
from .algebra.scalars import ZERO, GaussianRational

CHART_Z = "z-a"
CHART_W = "w=1/z"


class NotSingularError(ValueError):
    """A rank was requested at an ordinary point."""


def chart_name(a) -> str:
    return CHART_W if is_infinity(a) else CHART_Z


def _finite_poles(dens: Sequence[Poly]) -> list[GaussianRational]:
    d = squarefree_part(poly_lcm_many(dens))
    if d.deg <= 0:
        return []
    return [root for root, _ in qi_roots(d)]


class LinearSystem:
    """dy/dz = B(z) y with B a p x p matrix of rational functions."""

    def __init__(self, B):
        if not isinstance(B, RatMatrix):
            B = RatMatrix(B)
        n, m = B.shape
        if n != m:
            raise ValueError(f"coefficient matrix must be square, got {n}x{m}")
        self.B = B

    @property
    def p(self) -> int:
        return self.B.n

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearSystem) and self.B == other.B

    def __hash__(self) -> int:
        return hash(self.B)

    def __repr__(self) -> str:
        return f"LinearSystem({self.B!r})"

    @cached_property
    def chart_at_infinity(self) -> RatMatrix:
        """B~(w) = -(1/w^2) B(1/w), the coefficient in the chart w = 1/z."""
        w2 = RationalFunction(Poly.const(-1), Poly.monomial(2))
        return self.B.substitute_inverse().map(lambda f: f * w2)

    def local_matrix(self, a) -> RatMatrix:
        """Coefficient matrix in the local chart at a (B itself at finite points)."""
        return self.chart_at_infinity if is_infinity(a) else self.B

    def local_order(self, a) -> float | int:
        """Minimal order of the entries of the local coefficient at a (x = z - a or w)."""
        if is_infinity(a):
            return self.chart_at_infinity.order_at(0)
        return self.B.order_at(a)

    @cached_property
    def singular_locus(self) -> tuple:
        pts = list(_finite_poles([f.den for f in self.B.entries() if f.num.c]))
        if self.local_order(INF) < 0:
            pts.append(INF)
        return tuple(sorted(pts, key=point_key))

    def is_singular(self, a) -> bool:
        return self.local_order(as_point(a)) < 0

    def poincare_rank(self, a) -> int:
        a = as_point(a)
        o = self.local_order(a)
        if o >= 0:
            raise NotSingularError(f"{point_str(a)} is an ordinary point of the system")
        return -o - 1

    def leading_coefficients(self, a, r: int, count: int):
        """A_0..A_{count-1} with x^{r+1} y' = (A_0 + A_1 x + ...) y in the local chart at a."""
        m = self.local_matrix(a)
        at = 0 if is_infinity(a) else a
        return m.laurent_coefficients(at, -r - 1, -r - 2 + count)

    def residue(self, a):
        """Coefficient of x^{-1} in the local chart at a."""
        return _residue_of(self.local_matrix(a), ZERO if is_infinity(a) else a)


def _residue_of(m: RatMatrix, at):
    out = []
    for row in m.rows:
        new = []
        for f in row:
            o = order_at(f, at)
            new.append(laurent_expand(f, at, -1)[-1] if o <= -1 else ZERO)
        out.append(new)
    return out


def _residue_scalar(f: RationalFunction, a) -> GaussianRational:
    """Residue of the differential f dz at a (finite or infinity)."""
    if is_infinity(a):
        g = f.substitute_inverse() * RationalFunction(Poly.const(-1), Poly.monomial(2))
        a = ZERO
    else:
        g = f
    if order_at(g, a) > -1:
        return ZERO
    return laurent_expand(g, a, -1)[-1]


def singular_locus(S: LinearSystem) -> list:
    return list(S.singular_locus)


def poincare_rank(S: LinearSystem, a) -> int:
    return S.poincare_rank(a)


def residue_trace_sum(S: LinearSystem) -> GaussianRational:
    """Sum of the residues of tr B(z) dz over all poles, infinity included."""
    tr = S.B.trace()
    total = ZERO
    for a in S.singular_locus:
        total = total + _residue_scalar(tr, a)
    if INF not in S.singular_locus:
        total = total + _residue_scalar(tr, INF)
    return total


class ScalarEquation:
    """u^(p) + b_1 u^(p-1) + ... + b_p u = 0."""

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(as_rf(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a scalar equation needs order p >= 1")
        self.b = coeffs

    @property
    def p(self) -> int:
        return len(self.b)

    def coeff(self, j: int) -> RationalFunction:
        """b_j for 1 <= j <= p (b_0 = 1)."""
        return ONE_RF if j == 0 else self.b[j - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarEquation) and self.b == other.b

    def __hash__(self) -> int:
        return hash(self.b)

    def __repr__(self) -> str:
        return "ScalarEquation([" + ", ".join(str(c) for c in self.b) + "])"

    @cached_property
    def chart_at_infinity(self) -> "ScalarEquation":
        """The equation satisfied by u as a function of w = 1/z."""
        p = self.p
        mw2 = RationalFunction(Poly.monomial(2, -1))
        # ops[k] = coefficients of (d/dz)^k in powers of d/dw
        ops = [[ONE_RF]]
        for _ in range(p):
            prev = ops[-1]
            new = [ZERO_RF] * (len(prev) + 1)
            for j, c in enumerate(prev):
                new[j] = new[j] + mw2 * c.derivative()
                new[j + 1] = new[j + 1] + mw2 * c
            ops.append(new)
        total = [ZERO_RF] * (p + 1)
        for k in range(p + 1):
            bk = self.coeff(p - k).substitute_inverse()
            if not bk.num.c:
                continue
            for j, c in enumerate(ops[k]):
                total[j] = total[j] + bk * c
        lead = total[p]
        return ScalarEquation([total[p - j] / lead for j in range(1, p + 1)])

    def local_coeff(self, j: int, a) -> tuple[RationalFunction, object]:
        """b_j in the local chart at a together with the chart's base point."""
        if is_infinity(a):
            return self.chart_at_infinity.coeff(j), ZERO
        return self.coeff(j), a

    def local_order(self, j: int, a) -> float | int:
        f, at = self.local_coeff(j, a)
        return order_at(f, at)

    @cached_property
    def singular_points(self) -> tuple:
        pts = list(_finite_poles([c.den for c in self.b if c.num.c]))
        if any(self.local_order(j, INF) < 0 for j in range(1, self.p + 1)):
            pts.append(INF)
        return tuple(sorted(pts, key=point_key))

    def is_singular(self, a) -> bool:
        a = as_point(a)
        return any(self.local_order(j, a) < 0 for j in range(1, self.p + 1))


def companion(E: ScalarEquation) -> LinearSystem:
    """First-order system for (u, u', ..., u^(p-1))."""
    p = E.p
    rows = [[ZERO_RF] * p for _ in range(p)]
    for i in range(p - 1):
        rows[i][i + 1] = ONE_RF
    for k in range(p):
        rows[p - 1][k] = -E.coeff(p - k)
    return LinearSystem(RatMatrix._make(rows))


def newton_slope(orders: Sequence[float | int]) -> tuple[Fraction, tuple[int, ...]]:
    """Largest slope max(0, max_j (-ord b_j - j)/j) and the indices attaining it."""
    best = Fraction(0)
    attain: list[int] = []
    for j, o in enumerate(orders, start=1):
        if o == math.inf:
            continue
        s = Fraction(-int(o) - j, j)
        if s > best:
            best, attain = s, [j]
        elif s == best and s > 0:
            attain.append(j)
    return best, tuple(attain)


def equation_katz_rank(E: ScalarEquation, a) -> Fraction:
    a = as_point(a)
    return newton_slope([E.local_order(j, a) for j in range(1, E.p + 1)])[0]


def fuchsian_check(E: ScalarEquation, a) -> bool:
    a = as_point(a)
    return all(E.local_order(j, a) >= -j for j in range(1, E.p + 1))


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class SingularPointReport:
    point: object
    chart: str
    poincare_rank: int
    katz_rank: Fraction
    minimal_rank: int
    classification: str
    residue: list | None = None
    residue_trace: GaussianRational | None = None
    slope_indices: tuple = field(default_factory=tuple)
