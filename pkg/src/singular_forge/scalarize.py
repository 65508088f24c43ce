"""Cyclic vectors, scalar equations and apparent singularities."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .algebra.matrix import RatMatrix
from .algebra.numfield import NFElem, Split, nf_one, nf_zero
from .algebra.points import INF, as_point, is_infinity, point_str
from .algebra.poly import ONE_POLY, Poly, poly_lcm_many, squarefree_part
from .algebra.ratfunc import RationalFunction, as_rf
from .algebra.scalars import ZERO, GaussianRational
from .algebra.series import series_divide
from .system import LinearSystem, NotSingularError, ScalarEquation, ceil_fraction, equation_katz_rank

CANDIDATE_SEED = 20240917
RANDOM_ATTEMPTS = 64
FROBENIUS_CAP = 512


class CyclicVectorError(RuntimeError):
    def __init__(self, attempts):
        super().__init__(f"no cyclic vector among {len(attempts)} candidates")
        self.attempts = attempts


class UndecidedError(RuntimeError):
    def __init__(self, order: int):
        super().__init__(f"undecided at order {order}")
        self.order = order


class ApparentCertificationError(RuntimeError):
    """A new pole of the scalar equation failed the apparent-singularity test."""


# ---------------------------------------------------------------------------
# cyclic vectors


@dataclass(frozen=True)
class CyclicVector:
    c: tuple
    W: RatMatrix
    det: RationalFunction
    candidate_index: int
    attempts: int


def candidate_schedule(p: int, seed: int = CANDIDATE_SEED) -> Iterable[tuple]:
    """e1, then e1 + z e2 + ... + z^(p-1) e_p, then seeded small-integer polynomial vectors."""
    yield tuple(Poly.const(1 if i == 0 else 0) for i in range(p))
    if p > 1:
        yield tuple(Poly.monomial(i) for i in range(p))
    rng = random.Random(seed)
    for _ in range(RANDOM_ATTEMPTS):
        yield tuple(Poly([rng.randint(-3, 3) for _ in range(p)]) for _ in range(p))


def krylov_rows(S: LinearSystem, c: Sequence) -> list[list[RationalFunction]]:
    """v_0 = c, v_{k+1} = v_k' + v_k B, for k = 0..p."""
    p = S.p
    v = [as_rf(x) for x in c]
    rows = [v]
    cols = [[S.B.rows[i][j] for i in range(p)] for j in range(p)]
    for _ in range(p):
        new = []
        for j in range(p):
            acc = v[j].derivative()
            for i in range(p):
                if v[i].num.c and cols[j][i].num.c:
                    acc = acc + v[i] * cols[j][i]
            new.append(acc)
        v = new
        rows.append(v)
    return rows


def _equation_from_rows(rows) -> tuple[RatMatrix, RationalFunction, ScalarEquation] | None:
    p = len(rows) - 1
    W = RatMatrix._make(rows[:p])
    det = W.det()
    if det.is_zero():
        return None
    sol = (RatMatrix._make([rows[p]]) * W.inverse()).rows[0]
    # (b_p, ..., b_1) = -v_p W^{-1}
    b = [-sol[p - j] for j in range(1, p + 1)]
    return W, det, ScalarEquation(b)


def cyclic_vector(S: LinearSystem, candidates: Iterable | None = None) -> tuple[CyclicVector, ScalarEquation]:
    tried = []
    for idx, c in enumerate(candidates if candidates is not None else candidate_schedule(S.p)):
        c = tuple(x if isinstance(x, Poly) else Poly.const(x) for x in c)
        res = _equation_from_rows(krylov_rows(S, c))
        tried.append([str(x) for x in c])
        if res is not None:
            W, det, E = res
            return CyclicVector(c, W, det, idx, len(tried)), E
    raise CyclicVectorError(tried)


# ---------------------------------------------------------------------------
# apparent singularities


@dataclass(frozen=True)
class ApparentCertificate:
    exponents: tuple[int, ...]
    truncation_order: int


def _falling(k: int) -> list[int]:
    """Integer coefficients of s(s-1)...(s-k+1), lowest degree first."""
    c = [1]
    for i in range(k):
        new = [0] * (len(c) + 1)
        for d, x in enumerate(c):
            new[d + 1] += x
            new[d] -= i * x
        c = new
    return c


def _falling_value(s: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= s - i
    return out


class _LocalExpansion:
    """Laurent coefficients of a rational function at a root t of g, over Q(i)[t]/(g)."""

    def __init__(self, f: RationalFunction, g: Poly):
        self.g = g
        self.zero = nf_zero(g)
        if f.is_zero():
            self.val = None
            return
        self._num = f.num
        self._den = f.den
        self._cache: dict = {}
        vn = self._first_nonzero(f.num)
        vd = self._first_nonzero(f.den)
        self.vn, self.vd = vn, vd
        self.val = vn - vd
        self._coeffs: list = []

    def _taylor(self, poly: Poly, k: int) -> NFElem:
        """k-th Taylor coefficient of poly at t."""
        key = (id(poly), k)
        if key not in self._cache:
            d = poly
            for _ in range(k):
                d = d.derivative()
            if d.c:
                d = d * GaussianRational(1, 0, factorial(k))
            self._cache[key] = NFElem(d, self.g)
        return self._cache[key]

    def _first_nonzero(self, poly: Poly) -> int:
        k = 0
        while self._taylor(poly, k).is_zero():
            k += 1
        return k

    def coeff(self, m: int) -> NFElem:
        """Coefficient of x^m."""
        if self.val is None or m < self.val:
            return self.zero
        k = m - self.val
        if k >= len(self._coeffs):
            n = k + 1
            num = [self._taylor(self._num, self.vn + i) for i in range(n)]
            den = [self._taylor(self._den, self.vd + i) for i in range(n)]
            self._coeffs = series_divide(num, den, n, self.zero)
        return self._coeffs[k]


def _frobenius(E: ScalarEquation, g: Poly, truncation: int | None):
    """Apparent-singularity test at the roots of g (raises Split on zero divisors)."""
    p = E.p
    exps = [_LocalExpansion(E.coeff(j), g) for j in range(1, p + 1)]
    vals = [x.val for x in exps]
    if all(v is None or v >= 0 for v in vals):
        raise NotSingularError("not a pole of any coefficient")
    if any(v is not None and v < -j for j, v in enumerate(vals, start=1)):
        return False  # irregular singular point

    def beta(j: int, m: int) -> NFElem:
        if j == 0:
            return nf_one(g) if m == 0 else nf_zero(g)
        return exps[j - 1].coeff(m - j)

    # indicial polynomial I(s) = sum_j beta_{j,0} [s]_{p-j}
    ind = [nf_zero(g) for _ in range(p + 1)]
    for j in range(p + 1):
        b0 = beta(j, 0)
        for d, x in enumerate(_falling(p - j)):
            if x:
                ind[d] = ind[d] + b0 * x
    roots_g = np.roots(g.to_complex()[::-1]) if g.deg > 1 else np.array([complex(-g.c[0] / g.c[1])])
    vals_num = np.array([c.values(roots_g) for c in ind])  # (p+1) x deg g
    cands = set()
    for e in range(vals_num.shape[1]):
        for r in np.roots(vals_num[::-1, e]):
            k = int(round(r.real))
            if abs(r.imag) < 1e-3 and abs(r.real - k) < 1e-3:
                cands.add(k)
    exponents = []
    for k in sorted(cands):
        acc = nf_zero(g)
        for j in range(p + 1):
            acc = acc + beta(j, 0) * _falling_value(k, p - j)
        if acc.is_zero():
            exponents.append(k)
    if len(exponents) < p:
        return False
    rho = exponents[0]
    spread = exponents[-1] - rho
    n_terms = truncation if truncation is not None else spread + p + 4
    if n_terms < spread + 1:
        raise UndecidedError(n_terms)

    def P(m: int, s: int) -> NFElem:
        acc = nf_zero(g)
        for j in range(p + 1):
            fv = _falling_value(s, p - j)
            if fv:
                b = beta(j, m)
                if b.p.c:
                    acc = acc + b * fv
        return acc

    # c_n as vectors over the free parameters (c_0 and one per resonance)
    def unit(i):
        return [nf_one(g) if k == i else nf_zero(g) for k in range(p)]

    cs = [unit(0)]
    resonance = {k - rho: i for i, k in enumerate(exponents)}
    for n in range(1, spread + 1):
        rhs = [nf_zero(g) for _ in range(p)]
        for m in range(1, n + 1):
            pm = P(m, rho + n - m)
            if not pm.p.c:
                continue
            prev = cs[n - m]
            rhs = [r - pm * c for r, c in zip(rhs, prev)]
        if n in resonance:
            if any(not r.is_zero() for r in rhs):
                return False  # logarithmic terms
            cs.append(unit(resonance[n]))
        else:
            inv = P(0, rho + n).inverse()
            cs.append([r * inv for r in rhs])
    return ApparentCertificate(tuple(exponents), n_terms)


def _apparent_on(E: ScalarEquation, g: Poly, truncation: int | None) -> list:
    try:
        return [(g, _frobenius(E, g, truncation))]
    except Split as s:
        return _apparent_on(E, s.left, truncation) + _apparent_on(E, s.right, truncation)


def _with_retries(fn, truncation: int | None):
    n = truncation
    while True:
        try:
            return fn(n)
        except UndecidedError as e:
            n = 2 * e.order
            if n > FROBENIUS_CAP:
                raise


def is_apparent(E: ScalarEquation, a, truncation: int | None = None):
    """ApparentCertificate when every solution is meromorphic at a, else False."""
    a = as_point(a)
    if is_infinity(a):
        E, a = E.chart_at_infinity, ZERO
    if not E.is_singular(a):
        raise NotSingularError(f"{point_str(a)} is not a pole of any coefficient")
    g = Poly.linear(a)
    return _with_retries(lambda n: _frobenius(E, g, n), truncation)


@dataclass(frozen=True)
class ApparentCluster:
    """Apparent points forming the roots of one squarefree factor."""

    factor: Poly | None  # None for the point at infinity
    points: tuple  # exact points when rational, else ()
    numeric: tuple
    certificate: ApparentCertificate

    @property
    def count(self) -> int:
        return 1 if self.factor is None else self.factor.deg


@dataclass
class ScalarizationReport:
    equation: ScalarEquation
    cyclic: CyclicVector
    original_singular: tuple
    apparent: list
    m: int
    R: int
    n: int
    bound_value: int
    bound_satisfied: bool
    katz_ranks: dict
    findings: list = field(default_factory=list)


def new_pole_factor(E: ScalarEquation, original) -> Poly:
    """Squarefree polynomial whose roots are the finite poles of E outside `original`."""
    d = squarefree_part(poly_lcm_many(c.den for c in E.b if c.num.c))
    for a in original:
        if is_infinity(a):
            continue
        lin = Poly.linear(a)
        q, r = d.divmod(lin)
        if not r.c:
            d = q
    return d.monic() if d.deg > 0 else ONE_POLY


def _clusters(E: ScalarEquation, g: Poly, truncation: int | None) -> list[ApparentCluster]:
    out = []
    results = _with_retries(lambda n: _apparent_on(E, g, n), truncation)
    for factor, cert in results:
        factor = factor.monic()
        if cert is False:
            raise ApparentCertificationError(f"roots of {factor} are not apparent singularities")
        numeric = tuple(sorted((complex(r) for r in np.roots(factor.to_complex()[::-1])), key=lambda c: (c.real, c.imag)))
        points = (-factor.c[0],) if factor.deg == 1 else ()
        out.append(ApparentCluster(factor, points, numeric, cert))
    out.sort(key=lambda cl: (cl.factor.deg, [(x.re, x.im) for x in cl.factor.c]))
    return out


def scalarize_and_count(S: LinearSystem, truncation: int | None = None, katz_ranks: dict | None = None,
                        cyclic: tuple | None = None) -> ScalarizationReport:
    cv, E = cyclic if cyclic is not None else cyclic_vector(S)
    original = S.singular_locus
    g = new_pole_factor(E, original)
    apparent = _clusters(E, g, truncation) if g.deg > 0 else []
    if INF not in original and E.is_singular(INF):
        cert = is_apparent(E, INF, truncation)
        if cert is False:
            raise ApparentCertificationError("infinity is not an apparent singularity")
        apparent.append(ApparentCluster(None, (INF,), (), cert))
    m = sum(cl.count for cl in apparent)
    if katz_ranks is None:
        katz_ranks = {a: equation_katz_rank(E, a) for a in original}
    R = sum(ceil_fraction(k) for k in katz_ranks.values())
    n = len(original)
    p = S.p
    bound = (R + n + 1) * p * (p - 1) // 2
    rep = ScalarizationReport(E, cv, original, apparent, m, R, n, bound, m <= bound, katz_ranks)
    if m > bound:
        rep.findings.append(f"apparent count {m} exceeds (R+n+1)p(p-1)/2 = {bound}")
    return rep


@dataclass
class Theorem2Report:
    katz_ranks: dict
    K: int
    n: int
    p: int
    bound: int
    m: int
    auxiliary: int
    satisfied: bool
    scalarization: ScalarizationReport


def theorem2_pipeline(S: LinearSystem, truncation: int | None = None,
                      scalarization: ScalarizationReport | None = None) -> Theorem2Report:
    from .bounds import theorem2_value

    rep = scalarization if scalarization is not None else scalarize_and_count(S, truncation)
    ks = list(rep.katz_ranks.values())
    K = sum(ceil_fraction(k) for k in ks)
    bound = theorem2_value(S.p, len(ks), ks)
    auxiliary = 0  # generated instances need no auxiliary point
    return Theorem2Report(rep.katz_ranks, K, len(ks), S.p, bound, rep.m, auxiliary,
                          rep.m + auxiliary <= bound, rep)
