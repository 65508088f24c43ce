"""Seeded generators of systems, equations and gauges."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .algebra.matrix import RatMatrix, cm_inverse, cm_mul, identity
from .algebra.points import is_infinity
from .algebra.poly import Poly
from .algebra.ratfunc import ZERO_RF, RationalFunction
from .algebra.scalars import ONE, ZERO, GaussianRational
from .gauge import GaugeTransform
from .system import LinearSystem, ScalarEquation

POINT_POOL = (0, 1, -1, 2, -2, 3, GaussianRational(0, 1), GaussianRational(0, -1), GaussianRational(1, 1), GaussianRational(1, 0, 2))
LEADING_KINDS = ("generic", "nilpotent", "lowrank")
MAX_RETRIES = 32


@dataclass(frozen=True)
class InstanceProfile:
    p: int = 2
    n_finite: int = 2
    pole_orders: tuple = (1, 1)
    include_inf: bool = False
    inf_degree: int = 0
    coeff_bound: int = 2
    leading: str = "mixed"
    seed: int = 0
    points: tuple = ()  # explicit finite points; drawn from POINT_POOL when empty

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(GaussianRational(0) + a for a in self.points))
        if self.points and len(self.points) != self.n_finite:
            raise ValueError("one point per finite pole order")
        if len(set(self.points)) != len(self.points):
            raise ValueError("finite points must be distinct")
        if self.p not in (1, 2, 3):
            raise ValueError("p must be 1, 2 or 3")
        if len(self.pole_orders) != self.n_finite:
            raise ValueError("one pole order per finite point")
        if self.n_finite > len(POINT_POOL):
            raise ValueError("too many finite points")
        if any(k < 1 for k in self.pole_orders):
            raise ValueError("pole orders are positive")
        if self.leading not in LEADING_KINDS + ("mixed",):
            raise ValueError(f"unknown leading kind {self.leading}")

    def to_json(self) -> dict:
        from .serialize import scalar_to_json

        d = asdict(self)
        d["pole_orders"] = list(self.pole_orders)
        if self.points:
            d["points"] = [scalar_to_json(a) for a in self.points]
        else:
            del d["points"]
        return d

    @classmethod
    def from_json(cls, obj: dict, seed: int | None = None) -> "InstanceProfile":
        d = dict(obj)
        from .serialize import scalar_from_json

        d["pole_orders"] = tuple(d.get("pole_orders", ()))
        d["points"] = tuple(scalar_from_json(a) for a in d.get("points", ()))
        if seed is not None:
            d["seed"] = seed
        return cls(**d)


def _scalar(rng: random.Random, bound: int, gaussian: bool = False) -> GaussianRational:
    re = rng.randint(-bound, bound)
    im = rng.randint(-1, 1) if gaussian and rng.random() < 0.2 else 0
    den = rng.choice((1, 1, 1, 2))
    return GaussianRational(re, im, den)


def _random_matrix(rng, p, bound):
    return [[_scalar(rng, bound, gaussian=True) for _ in range(p)] for _ in range(p)]


def _unimodular(rng, p):
    """Integer matrix with determinant +-1."""
    m = identity(p)
    for _ in range(2 * p):
        i, j = rng.sample(range(p), 2) if p > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        m = [[m[r][k] + (c * m[j][k] if r == i else 0) for k in range(p)] for r in range(p)]
    return m


def _within(m, bound) -> bool:
    return all(abs(x.re) <= bound and abs(x.im) <= bound for row in m for x in row)


def _leading(rng, p, bound, kind):
    """Nonzero leading coefficient of the requested kind with entries inside the coefficient bound."""
    for _ in range(MAX_RETRIES):
        if kind == "generic" or p == 1:
            m = _random_matrix(rng, p, bound)
        elif kind == "nilpotent":
            u = [[_scalar(rng, bound) if j > i else ZERO for j in range(p)] for i in range(p)]
            P = _unimodular(rng, p)
            m = cm_mul(P, cm_mul(u, cm_inverse(P)))
        else:
            u = [_scalar(rng, bound) for _ in range(p)]
            v = [_scalar(rng, bound) for _ in range(p)]
            m = [[u[i] * v[j] for j in range(p)] for i in range(p)]
        if any(x for row in m for x in row) and _within(m, bound):
            return m
    if kind == "nilpotent" and p > 1:
        return [[ONE if j == i + 1 else ZERO for j in range(p)] for i in range(p)]
    return identity(p)


def _const_rf(m):
    return RatMatrix.from_constant(m)


def generate_instance(profile: InstanceProfile) -> LinearSystem:
    """B = sum_i sum_k C_{i,k}/(z-a_i)^k (+ polynomial part when infinity is requested)."""
    rng = random.Random(profile.seed)
    p, bound = profile.p, profile.coeff_bound
    pts = rng.sample(POINT_POOL, profile.n_finite)
    if profile.points:
        pts = list(profile.points)
    B = RatMatrix.zeros(p)
    for a, order in zip(pts, profile.pole_orders):
        for k in range(1, order + 1):
            if k == order:
                kind = rng.choice(LEADING_KINDS) if profile.leading == "mixed" else profile.leading
                C = _leading(rng, p, bound, kind)
            else:
                C = _random_matrix(rng, p, bound)
            B = B + _const_rf(C) * RationalFunction.pole(a, k)
    if profile.include_inf:
        for k in range(profile.inf_degree + 1):
            C = _leading(rng, p, bound, "generic") if k == profile.inf_degree else _random_matrix(rng, p, bound)
            B = B + _const_rf(C) * RationalFunction(Poly.monomial(k))
    return LinearSystem(B)


def default_profile(seed: int) -> InstanceProfile:
    rng = random.Random(1_000_003 * seed + 17)
    p = rng.choice((1, 2, 2, 3))
    n = rng.randint(1, 2 if p == 3 else 3)
    orders = tuple(rng.choice((1, 1, 2, 2, 3)) if p < 3 else rng.choice((1, 1, 2)) for _ in range(n))
    include_inf = rng.random() < 0.3
    inf_degree = rng.choice((0, 0, 1)) if p < 3 else 0
    return InstanceProfile(p, n, orders, include_inf, inf_degree, 2, "mixed", seed)


def fuchsian_profile(seed: int) -> InstanceProfile:
    rng = random.Random(7_000_001 * seed + 3)
    p = rng.choice((1, 2, 3))
    n = rng.randint(1, 3 if p < 3 else 2)
    return InstanceProfile(p, n, (1,) * n, False, 0, 2, "generic", seed)


def formal_instance(seed: int) -> tuple[LinearSystem, GaussianRational]:
    """An irregular point at 0 whose leading matrix has distinct Q(i) eigenvalues."""
    rng = random.Random(9_000_011 * seed + 5)
    p = rng.choice((1, 2, 2, 3))
    r = rng.choice((1, 1, 2))
    pool = [-3, -2, -1, 0, 1, 2, 3, GaussianRational(0, 1), GaussianRational(1, -1)]
    eig = rng.sample([e for e in pool if e != 0] if p == 1 else pool, p)
    P = _unimodular(rng, p)
    lam = [[GaussianRational(0) + eig[i] if i == j else ZERO for j in range(p)] for i in range(p)]
    A0 = cm_mul(P, cm_mul(lam, cm_inverse(P)))
    B = _const_rf(A0) * RationalFunction.pole(0, r + 1)
    for k in range(1, r + 1):
        B = B + _const_rf(_random_matrix(rng, p, 2)) * RationalFunction.pole(0, k)
    if rng.random() < 0.5:
        other = rng.choice((1, -1, 2))
        B = B + _const_rf(_random_matrix(rng, p, 2)) * RationalFunction.pole(other, 1)
    if rng.random() < 0.3:
        B = B + _const_rf(_random_matrix(rng, p, 1))
    return LinearSystem(B), GaussianRational(0)


def euler_matrix(seed: int):
    """Nonzero exact residue A for the Euler system B = A/z."""
    rng = random.Random(5_000_011 * seed + 1)
    p = rng.choice((1, 2, 3))
    for _ in range(MAX_RETRIES):
        A = [[GaussianRational(rng.randint(-3, 3), 0, rng.choice((1, 2, 3, 4))) for _ in range(p)] for _ in range(p)]
        if any(x for row in A for x in row):
            return A
    return identity(p)


def random_equation(seed: int) -> ScalarEquation:
    """Scalar equation with poles at small points, Fuchsian or irregular by a seeded coin."""
    rng = random.Random(3_000_017 * seed + 11)
    p = rng.choice((1, 2, 3))
    fuchsian = rng.random() < 0.5
    pts = rng.sample(POINT_POOL[:6], rng.randint(1, 2))
    coeffs = []
    for j in range(1, p + 1):
        f = ZERO_RF
        for a in pts:
            top = j if fuchsian else j + rng.randint(0, 2)
            for k in range(1, top + 1):
                if rng.random() < 0.6:
                    f = f + RationalFunction.pole(a, k, _scalar(rng, 2))
        if rng.random() < 0.3:
            f = f + RationalFunction.const(_scalar(rng, 2))
        coeffs.append(f)
    return ScalarEquation(coeffs)


def random_gauge(rng: random.Random, p: int, points=()) -> GaugeTransform:
    """U(z) diag((z-b)^k) P with U unipotent polynomial and P constant unimodular."""
    points = [a for a in points if not is_infinity(a)]
    b = rng.choice(points + [GaussianRational(1, 0, 3), GaussianRational(-1, 1)]) if rng.random() < 0.7 else GaussianRational(2, 0, 5)
    ks = [rng.choice((-1, 0, 1)) for _ in range(p)]
    if p > 1 and not any(ks):
        ks[0] = 1
    lin = RationalFunction(Poly.linear(b))
    D = RatMatrix.diag([lin ** k for k in ks])
    U = RatMatrix.identity(p)
    if p > 1:
        rows = [list(r) for r in U.rows]
        for i in range(p):
            for j in range(i + 1, p):
                rows[i][j] = RationalFunction(Poly([rng.randint(-1, 1), rng.randint(-1, 1)]))
        U = RatMatrix(rows)
    P = RatMatrix.from_constant(_unimodular(rng, p))
    return GaugeTransform(U * D * P)
