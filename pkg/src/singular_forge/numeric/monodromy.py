"""Analytic continuation along polygonal paths and monodromy matrices."""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field

import numpy as np

from ..algebra.points import INF, is_infinity
from ..algebra.scalars import GaussianRational
from ..algebra.poly import ZERO_POLY, numeric_roots, poly_lcm_many
from ..system import LinearSystem, NotSingularError, ScalarEquation, companion
from . import ddkernels as dd
from . import kernels

PRECISIONS = ("double", "dd")
DEFAULT_PRECISION = "dd"
DEFAULT_TOL = {"double": 1e-14, "dd": 1e-30}
KMAX = 200
CIRCLE_VERTICES = 32
CONVENTION = ("loops are lassos along straight rays from the base point, counterclockwise around each point; "
              "points sorted counterclockwise by angle from the middle of the largest angular gap; "
              "G_i transports the identity (column convention Y(end) = G Y(start)); "
              "the infinity loop is the clockwise circle through the base point; "
              "relation: G_inf G_n ... G_1 = I")


class SafetyRadiusError(ValueError):
    pass


class StepUnderflowError(RuntimeError):
    pass


class NumericSystem:
    """B(z) = N(z)/d(z) with coefficient arrays in powers of (z - center), and the finite poles.

    The re-centering is exact, so loops near `center` avoid cancellation in the monomial basis.
    """

    def __init__(self, S: LinearSystem, center: complex = 0j):
        p = S.p
        self.p = p
        self.center = complex(center)
        c = GaussianRational.from_parts(Fraction(self.center.real), Fraction(self.center.imag))
        self.center_dd = dd.dd_from_complex(self.center)
        d0 = poly_lcm_many(f.den for f in S.B.entries() if f.num.c)
        nums = []
        for f in S.B.entries():
            nums.append((f.num * d0.exact_div(f.den)).taylor_shift(c) if f.num.c else ZERO_POLY)
        d = d0.taylor_shift(c) if d0.c else d0
        deg = max([x.deg for x in nums if x.c] + [0])
        N = np.zeros((deg + 1, p * p), dtype=np.complex128)
        for idx, x in enumerate(nums):
            for k, c in enumerate(x.c):
                N[k, idx] = complex(c)
        self.N = N
        self.d = d.to_complex() if d.c else np.ones(1, dtype=np.complex128)
        self.poles = np.array(numeric_roots(d0) if d0.deg > 0 else [], dtype=np.complex128)
        self.infinite = S.is_singular(INF)
        self.zero = not any(f.num.c for f in S.B.entries())
        width = max(N.shape[0], self.d.shape[0])
        packed = np.zeros((width, p * p + 1), dtype=np.complex128)
        packed[: N.shape[0], : p * p] = N
        packed[: self.d.shape[0], p * p] = self.d
        self.packed = packed
        exact = np.zeros((width, p * p + 1, 4))
        for idx, x in enumerate(nums + [d]):
            for k, c in enumerate(x.c):
                exact[k, idx] = dd.dd_from_fraction_pair(c.re, c.im)
        if not d.c:
            exact[0, p * p] = dd.dd_from_complex(1.0)
        self.packed_dd = exact

    def distance(self, z: complex) -> float:
        if self.poles.size == 0:
            return math.inf
        return float(np.abs(self.poles - z).min())


def _segment_distance(a: complex, b: complex, c: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(c - a)
    t = ((c - a) * ab.conjugate()).real / abs(ab) ** 2
    t = min(1.0, max(0.0, t))
    return abs(a + t * ab - c)


def _transport_segment(ns: NumericSystem, z0: complex, z1: complex, tol: float) -> np.ndarray:
    p = ns.p
    T = np.eye(p, dtype=np.complex128)
    if ns.zero:
        return T
    z = z0
    remaining = z1 - z0
    while abs(remaining) > 0:
        rho = ns.distance(z)
        h = remaining if abs(remaining) <= 0.5 * rho else remaining / abs(remaining) * 0.5 * rho
        while True:
            sh = kernels.taylor_shift(ns.packed, z - ns.center, h)
            Nt = (sh[:, : p * p] * h).reshape(-1, p, p)
            dt = sh[:, p * p].copy()
            step, _, ok = kernels.taylor_step(np.ascontiguousarray(Nt), dt, KMAX, tol)
            if ok:
                break
            h = h / 2
            if abs(h) < 1e-14 * max(1.0, abs(z)):
                raise StepUnderflowError(f"step size underflow near {z}")
        T = step @ T
        z = z + h
        remaining = z1 - z
        if abs(remaining) < 1e-15 * max(1.0, abs(z1)):
            break
    return T


def _transport_segment_dd(ns: NumericSystem, z0: complex, z1: complex, tol: float) -> np.ndarray:
    """Double-double version; positions are carried in double-double so segments end exactly."""
    p = ns.p
    T = dd.dd_identity(p)
    if ns.zero:
        return T
    z = dd.dd_from_complex(z0)
    end = dd.dd_from_complex(z1)
    while True:
        rem = dd.dd_add(end, -z)
        remc = complex(dd.dd_to_complex(rem))
        if remc == 0:
            break
        zc = complex(dd.dd_to_complex(z))
        rho = ns.distance(zc)
        last = abs(remc) <= 0.5 * rho
        h = rem if last else dd.dd_from_complex(remc / abs(remc) * 0.5 * rho)
        while True:
            sh = dd.dd_taylor_shift(ns.packed_dd, dd.dd_add(z, -ns.center_dd), h)
            Nt = dd.dd_mul(sh[:, : p * p], h).reshape(-1, p, p, 4)
            dt = np.ascontiguousarray(sh[:, p * p])
            step, _, ok = dd.dd_taylor_step(np.ascontiguousarray(Nt), dt, KMAX, tol)
            if ok:
                break
            h = h * 0.5
            last = False
            if abs(h[0]) + abs(h[2]) < 1e-14 * max(1.0, abs(zc)):
                raise StepUnderflowError(f"step size underflow near {zc}")
        T = dd.dd_matmul(step, T)
        z = dd.dd_add(z, h)
        if last:
            break
    return T


def _check_path(ns: NumericSystem, pts, safety):
    if safety is not None:
        for a, b in zip(pts, pts[1:]):
            for c in ns.poles:
                if _segment_distance(a, b, c) < safety:
                    raise SafetyRadiusError(f"edge {a}->{b} passes within {safety} of singular point {c}")
    else:
        for z in pts:
            if ns.distance(z) == 0:
                raise SafetyRadiusError(f"path vertex {z} is a singular point")


def _check_precision(precision: str, tol: float | None) -> float:
    if precision not in PRECISIONS:
        raise ValueError(f"precision must be one of {PRECISIONS}")
    return DEFAULT_TOL[precision] if tol is None else tol


def transport_dd(S, path, tol: float | None = None, safety: float | None = None) -> np.ndarray:
    """Double-double transport matrix, shape (p, p, 4)."""
    return _transport_dd_growth(S, path, tol, safety)[0]


def _transport_dd_growth(S, path, tol, safety=None):
    """Transport plus the largest condition number of the partial products at the vertices."""
    ns = S if isinstance(S, NumericSystem) else NumericSystem(S)
    tol = _check_precision("dd", tol)
    pts = [complex(z) for z in path]
    _check_path(ns, pts, safety)
    T = dd.dd_identity(ns.p)
    growth = 1.0
    for a, b in zip(pts, pts[1:]):
        T = dd.dd_matmul(_transport_segment_dd(ns, a, b, tol), T)
        growth = max(growth, float(np.linalg.cond(dd.dd_to_complex(T))))
    return T, growth


def transport(S, path, tol: float | None = None, safety: float | None = None,
              precision: str = DEFAULT_PRECISION) -> np.ndarray:
    """T with Y(end) = T Y(start) along the polygon `path` (identity initial data)."""
    tol = _check_precision(precision, tol)
    if precision == "dd":
        return dd.dd_to_complex(transport_dd(S, path, tol, safety))
    ns = S if isinstance(S, NumericSystem) else NumericSystem(S)
    pts = [complex(z) for z in path]
    _check_path(ns, pts, safety)
    T = np.eye(ns.p, dtype=np.complex128)
    for a, b in zip(pts, pts[1:]):
        T = _transport_segment(ns, a, b, tol) @ T
    return T


@dataclass
class Loop:
    base: complex
    vertices: list
    label: object


@dataclass
class MonodromyRep:
    base: complex
    points: list
    matrices: list
    convention: str = CONVENTION
    residual: float = 0.0
    conditions: list = field(default_factory=list)
    tol: float = DEFAULT_TOL[DEFAULT_PRECISION]
    precision: str = DEFAULT_PRECISION


def safety_radius(points) -> float:
    pts = list(points)
    if len(pts) < 2:
        return 0.5
    dmin = min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1:])
    return min(dmin / 2, 0.5)


def _circle(center: complex, radius: float, start_angle: float, clockwise: bool = False, m: int = CIRCLE_VERTICES):
    sgn = -1.0 if clockwise else 1.0
    pts = [complex(center + radius * np.exp(1j * (start_angle + sgn * 2 * np.pi * k / m))) for k in range(m)]
    return pts + [pts[0]]  # closed exactly in floating point


def _geometry(poles):
    center = complex(np.mean(poles)) if len(poles) else 0j
    spread = max((abs(a - center) for a in poles), default=0.0)
    s = safety_radius(poles)
    return center, spread + max(1.0, 4 * s), s


def _ray_clearance(base: complex, poles, s: float) -> float:
    worst = math.inf
    for i, a in enumerate(poles):
        u = (a - base) / abs(a - base)
        end = a - s * u
        for j, c in enumerate(poles):
            if j != i:
                worst = min(worst, _segment_distance(base, end, c))
    return worst


def choose_base(poles) -> complex:
    center, R, s = _geometry(poles)
    best, best_clear = None, -1.0
    for k in range(64):
        b = center + R * np.exp(1j * (2 * np.pi * k / 64 + 0.1))
        clear = _ray_clearance(b, poles, s)
        if clear > best_clear + 1e-12:
            best, best_clear = b, clear
    return complex(best)


def order_points(base: complex, poles) -> list[int]:
    """Indices of poles sorted counterclockwise as seen from base, cut at the largest angular gap."""
    if len(poles) == 0:
        return []
    ang = [math.atan2((a - base).imag, (a - base).real) % (2 * np.pi) for a in poles]
    srt = sorted(ang)
    gaps = [(srt[(i + 1) % len(srt)] - srt[i]) % (2 * np.pi) or 2 * np.pi for i in range(len(srt))]
    i = int(np.argmax(gaps))
    phi0 = (srt[i] + gaps[i] / 2) % (2 * np.pi)
    return sorted(range(len(poles)), key=lambda k: ((ang[k] - phi0) % (2 * np.pi), abs(poles[k] - base)))


def lasso(base: complex, a: complex, s: float) -> Loop:
    u = (a - base) / abs(a - base)
    ang = math.atan2(-u.imag, -u.real)
    verts = [base] + _circle(a, s, ang) + [base]
    return Loop(base, verts, a)


def infinity_loop(base: complex, center: complex) -> Loop:
    R = abs(base - center)
    ang = math.atan2((base - center).imag, (base - center).real)
    verts = _circle(center, R, ang, clockwise=True, m=4 * CIRCLE_VERTICES)
    return Loop(base, [base] + verts[1:-1] + [base], INF)


def _loop_matrix(ns, vertices, tol, precision, safety=None) -> np.ndarray:
    """Loop matrix in double-double layout (p, p, 4) whatever the working precision."""
    if precision == "dd":
        return transport_dd(ns, vertices, tol, safety)
    G = transport(ns, vertices, tol, safety, precision="double")
    out = np.zeros(G.shape + (4,))
    out[..., 0] = G.real
    out[..., 2] = G.imag
    return out


def monodromy_rep(S: LinearSystem, base: complex | None = None, tol: float | None = None,
                  precision: str = DEFAULT_PRECISION) -> MonodromyRep:
    tol = _check_precision(precision, tol)
    ns = NumericSystem(S)
    poles = list(ns.poles)
    if poles:
        ns = NumericSystem(S, _geometry(poles)[0])
    if not poles and not ns.infinite:
        return MonodromyRep(base if base is not None else 0j, [], [], tol=tol, precision=precision)
    center, R, s = _geometry(poles)
    if base is None:
        base = choose_base(poles)
    base = complex(base)
    if poles and _ray_clearance(base, poles, s) < 0.99 * s:
        raise SafetyRadiusError(f"rays from base point {base} pass too close to singular points")
    order = order_points(base, poles)
    labels, mats, conds = [], [], []
    prod = dd.dd_identity(S.p)
    for k in order:
        loop = lasso(base, poles[k], s)
        G = _loop_matrix(ns, loop.vertices, tol, precision, safety=0.99 * s)
        prod = dd.dd_matmul(G, prod)
        labels.append(complex(poles[k]))
        mats.append(dd.dd_to_complex(G))
        conds.append(float(np.linalg.cond(mats[-1])))
    # the infinity loop closes the relation even when infinity is ordinary
    G = _loop_matrix(ns, infinity_loop(base, center).vertices, tol, precision)
    prod = dd.dd_matmul(G, prod)
    if ns.infinite:
        labels.append(INF)
        mats.append(dd.dd_to_complex(G))
        conds.append(float(np.linalg.cond(mats[-1])))
    residual = _distance_to_identity(prod)
    return MonodromyRep(base, labels, mats, residual=residual, conditions=conds, tol=tol, precision=precision)


def _distance_to_identity(G_dd: np.ndarray) -> float:
    """Max row sum norm of G - I, with the subtraction done in double-double."""
    diff = dd.dd_to_complex(dd.dd_add(G_dd, -dd.dd_identity(G_dd.shape[0])))
    return float(np.abs(diff).sum(axis=1).max())


GROWTH_LIMIT = 1e8
MAX_SHRINK = 16


def _local_loop(ns: NumericSystem, a, radius: float | None = None):
    if is_infinity(a):
        center, R, _ = _geometry(list(ns.poles))
        return infinity_loop(center + R, center).vertices
    a = complex(a)
    others = [c for c in ns.poles if abs(c - a) > 1e-9]
    if len(others) == len(ns.poles):
        raise NotSingularError(f"{a} is not a singular point")
    s = safety_radius(others + [a]) if radius is None else radius
    return _circle(a, s, 0.0)


def _local_dd(ns: NumericSystem, a, tol: float) -> np.ndarray:
    """Local loop in double-double.

    The conjugacy class does not depend on the radius, but the conditioning of the
    partial transports does and it blows up near irregular neighbours; the circle
    shrinks while that conditioning is large and still improving.
    """
    verts = _local_loop(ns, a)
    T, growth = _transport_dd_growth(ns, verts, tol)
    if is_infinity(a):
        return T
    radius = abs(verts[0] - complex(a))
    for _ in range(MAX_SHRINK):
        if growth <= GROWTH_LIMIT:
            break
        T2, g2 = _transport_dd_growth(ns, _local_loop(ns, a, radius / 4), tol)
        if g2 > growth / 10:
            break
        T, growth, radius = T2, g2, radius / 4
    return T


def _centered(S_or_ns, a) -> NumericSystem:
    if isinstance(S_or_ns, NumericSystem):
        return S_or_ns
    return NumericSystem(S_or_ns, 0j if is_infinity(a) else complex(a))


def local_monodromy(S: LinearSystem, a, tol: float | None = None, precision: str = DEFAULT_PRECISION) -> np.ndarray:
    """Monodromy around a single point along a small circle (conjugacy class only)."""
    ns = _centered(S, a)
    tol = _check_precision(precision, tol)
    if precision == "dd":
        return dd.dd_to_complex(_local_dd(ns, a, tol))
    return transport(ns, _local_loop(ns, a), tol, precision=precision)


def trivial_residual(S_or_E, a, step_tol: float | None = None, precision: str = DEFAULT_PRECISION) -> float:
    """||G - I|| (max row sum) for the local monodromy G around a."""
    S = companion(S_or_E) if isinstance(S_or_E, ScalarEquation) else S_or_E
    ns = _centered(S, a)
    tol = _check_precision(precision, step_tol)
    if precision == "dd":
        return _distance_to_identity(_local_dd(ns, a, tol))
    return _distance_to_identity(_loop_matrix(ns, _local_loop(ns, a), tol, precision))


def verify_trivial(S_or_E, a, tol: float = 1e-8, step_tol: float | None = None,
                   precision: str = DEFAULT_PRECISION) -> bool:
    return trivial_residual(S_or_E, a, step_tol, precision) <= tol
