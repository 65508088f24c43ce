"""Katz rank, classification, Moser reduction and formal local data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra.matrix import (
    RatMatrix,
    cm_eigenvalues,
    cm_inverse,
    cm_left_nullspace,
    cm_mul,
    cm_nullspace,
    cm_rref,
    cm_scale,
    cm_sub,
    cm_transpose,
    cm_triangularize,
    identity,
)
from .algebra.points import INF, as_point, is_infinity, point_str
from .algebra.poly import Poly
from .algebra.ratfunc import RationalFunction, laurent_expand
from .algebra.scalars import ONE, ZERO
from .algebra.series import TruncatedLaurent
from .gauge import GaugeTransform, apply_gauge
from .scalarize import cyclic_vector
from .system import (
    LinearSystem,
    NotSingularError,
    SingularPointReport,
    ceil_fraction,
    chart_name,
    newton_slope,
)

FUCHSIAN = "fuchsian"
REGULAR_NON_FUCHSIAN = "regular-non-fuchsian"
IRREGULAR_UNRAMIFIED = "irregular-unramified"
IRREGULAR_RAMIFIED = "irregular-ramified"


class MoserIterationError(RuntimeError):
    def __init__(self, msg, system, gauge):
        super().__init__(msg)
        self.system = system
        self.gauge = gauge


class NonGenericLeadingMatrix(ValueError):
    """Repeated eigenvalues in the leading coefficient."""


@lru_cache(maxsize=512)
def _scalar_equation(S: LinearSystem):
    return cyclic_vector(S)


def _require_singular(S: LinearSystem, a):
    a = as_point(a)
    if not S.is_singular(a):
        raise NotSingularError(f"{point_str(a)} is an ordinary point of the system")
    return a


def katz_slope_data(S: LinearSystem, a) -> tuple[Fraction, tuple]:
    a = _require_singular(S, a)
    _, E = _scalar_equation(S)
    return newton_slope([E.local_order(j, a) for j in range(1, E.p + 1)])


def katz_rank_system(S: LinearSystem, a) -> Fraction:
    """Katz rank at a, read off the Newton polygon of a scalarized equation."""
    return katz_slope_data(S, a)[0]


def minimal_poincare_rank(S: LinearSystem, a) -> int:
    return ceil_fraction(katz_rank_system(S, a))


def classify_from(r: int, kappa: Fraction) -> str:
    if r == 0:
        return FUCHSIAN
    if kappa == 0:
        return REGULAR_NON_FUCHSIAN
    if kappa.denominator > 1:
        return IRREGULAR_RAMIFIED
    return IRREGULAR_UNRAMIFIED


def classify_singularity(S: LinearSystem, a) -> str:
    a = _require_singular(S, a)
    return classify_from(S.poincare_rank(a), katz_rank_system(S, a))


def singular_point_report(S: LinearSystem, a) -> SingularPointReport:
    a = _require_singular(S, a)
    r = S.poincare_rank(a)
    kappa, idx = katz_slope_data(S, a)
    res = S.residue(a)
    tr = ZERO
    for i in range(S.p):
        tr = tr + res[i][i]
    return SingularPointReport(a, chart_name(a), r, kappa, ceil_fraction(kappa), classify_from(r, kappa),
                               res, tr, idx)


# ---------------------------------------------------------------------------
# Moser reduction


def _block_toeplitz_kernel(X, Y, d: int):
    """Nonzero (v_0..v_d) with X v_0 = 0, X v_j + Y v_{j-1} = 0, Y v_d = 0, if any."""
    k = len(X[0])
    rows = []
    for blk in range(d + 2):
        for i in range(len(X)):
            row = [ZERO] * (k * (d + 1))
            if blk <= d:
                for c in range(k):
                    row[blk * k + c] = X[i][c]
            if blk >= 1:
                for c in range(k):
                    row[(blk - 1) * k + c] = Y[i][c]
            rows.append(row)
    ker = cm_nullspace(rows, ncols=k * (d + 1))
    if not ker:
        return None
    v = ker[0]
    return [v[j * k:(j + 1) * k] for j in range(d + 1)]


def moser_step(A0, A1):
    """Basis of W for a rank-reducing shear, or None when (A0, A1) is Moser-irreducible."""
    N = cm_nullspace(A0)  # columns of ker A0 (as vectors)
    if not N:
        return None
    C = cm_left_nullspace(A0)  # rows annihilating Im A0
    Nm = cm_transpose(N)  # p x k
    X = cm_mul(C, Nm)
    Y = cm_mul(C, cm_mul(A1, Nm))
    k = len(N)
    for d in range(k):
        chain = _block_toeplitz_kernel(X, Y, d)
        if chain is not None:
            vecs = [cm_mul(Nm, [[x] for x in v]) for v in chain]
            return [[row[0] for row in vec] for vec in vecs]
    return None


def shear_gauge(W_basis, p: int, a) -> GaugeTransform:
    """Gamma = D P: constant change of basis, then (z-a) (or 1/z at infinity) on the W coordinates."""
    ech, pivots = cm_rref(W_basis)  # rows span W, reduced echelon form
    cols = []
    for j in range(p):
        if j in pivots:
            cols.append(ech[pivots.index(j)])
        else:
            cols.append([ONE if i == j else ZERO for i in range(p)])
    T = cm_transpose(cols)
    P = cm_inverse(T)
    x = RationalFunction(Poly.const(1), Poly.monomial(1)) if is_infinity(a) else RationalFunction(Poly.linear(a))
    D = RatMatrix.diag([x if j in pivots else ONE for j in range(p)])
    return GaugeTransform(D * RatMatrix.from_constant(P))


def moser_reduce(S: LinearSystem, a, max_iter: int | None = None) -> tuple[LinearSystem, GaugeTransform]:
    """Reduce the Poincare rank at a to its minimal value by shearing steps."""
    a = _require_singular(S, a)
    p = S.p
    total = GaugeTransform.identity(p)
    cur = S
    r0 = S.poincare_rank(a)
    cap = max_iter if max_iter is not None else p * (r0 + 1) * 4
    for _ in range(cap + 1):
        if not cur.is_singular(a):
            return cur, total
        r = cur.poincare_rank(a)
        if r == 0:
            return cur, total
        A0, A1 = cur.leading_coefficients(a, r, 2)
        W = moser_step(A0, A1)
        if W is None:
            return cur, total
        step = shear_gauge(W, p, a)
        cur = apply_gauge(cur, step)
        total = step.compose(total)
    raise MoserIterationError(f"Moser reduction at {point_str(a)} exceeded {cap} steps", cur, total)


# ---------------------------------------------------------------------------
# formal data


@dataclass
class FormalLocalData:
    point: object
    poincare_rank: int
    eigenvalues: tuple  # leading eigenvalues, in the order of the blocks
    q: tuple  # q_j as polynomials in t = 1/(z-a) (t = z at infinity), zero constant term
    multiplicities: tuple
    E: list
    lambda_shift: tuple
    F: list  # p x p TruncatedLaurent
    truncation: int
    certified_order: int
    defect_zero: bool
    ramified: bool = False

    @property
    def katz_rank(self) -> int:
        return max(q.deg for q in self.q) if self.q else 0


def formal_data_unramified(S: LinearSystem, a, truncation: int | None = None) -> FormalLocalData:
    a = _require_singular(S, a)
    r = S.poincare_rank(a)
    if r < 1:
        raise ValueError("formal data requires an irregular point (Poincare rank >= 1)")
    p = S.p
    N = truncation if truncation is not None else max(2 * (r + 1) + 4, 8)
    A = S.leading_coefficients(a, r, N + 1)
    eig = cm_eigenvalues(A[0])
    if any(m > 1 for _, m in eig):
        raise NonGenericLeadingMatrix("unsupported: non-generic leading matrix (repeated eigenvalues)")
    pairs = [(lam, cm_nullspace(cm_sub(A[0], cm_scale(identity(p), lam)))[0]) for lam, _ in eig]
    # order by eigenvector pivot so an already diagonal leading matrix keeps its basis
    pairs.sort(key=lambda pv: next(i for i, x in enumerate(pv[1]) if x))
    lams = [lam for lam, _ in pairs]
    T0 = cm_transpose([v for _, v in pairs])
    T0i = cm_inverse(T0)
    Ap = [cm_mul(T0i, cm_mul(Ak, T0)) for Ak in A]
    T = [identity(p)]
    D = [[lams[i] for i in range(p)]]  # D_k as diagonal vectors
    for k in range(1, N + 1):
        R = [[ZERO] * p for _ in range(p)]
        for j in range(1, k + 1):
            R = cm_sub(R, cm_mul(Ap[j], T[k - j]))
        for j in range(1, k):
            R = [[R[i][l] + T[j][i][l] * D[k - j][l] for l in range(p)] for i in range(p)]
        if k - r > 0:
            R = [[R[i][l] + T[k - r][i][l] * (k - r) for l in range(p)] for i in range(p)]
        D.append([-R[i][i] for i in range(p)])
        T.append([[R[i][l] / (lams[i] - lams[l]) if i != l else ZERO for l in range(p)] for i in range(p)])

    point = INF if is_infinity(a) else a
    qs, es, hs = [], [], []
    for i in range(p):
        # q_i = sum_{k<r} d_{k,i} x^{k-r}/(k-r), as a polynomial in t = 1/x
        qc = [ZERO] * (r + 1)
        for k in range(r):
            qc[r - k] = D[k][i] / (k - r)
        qs.append(Poly(qc))
        es.append(D[r][i])
        hs.append([D[k][i] / (k - r) for k in range(r + 1, N + 1)])  # coefficient of x^(k-r)
    shifts = [e.floor_re() for e in es]
    rhos = [e - n for e, n in zip(es, shifts)]

    # F = T0 (I + sum T_k x^k) diag(exp h_i) diag(x^{n_i}), valid through order N - r
    order = N - r
    expo = []
    for i in range(p):
        h = TruncatedLaurent(point, 1, hs[i][: max(order, 0)], order)
        expo.append(h.exp())
    Tser = [[TruncatedLaurent(point, 0, [T[k][i][l] for k in range(N + 1)], N) for l in range(p)] for i in range(p)]
    F = []
    for i in range(p):
        row = []
        for l in range(p):
            acc = None
            for m in range(p):
                if not T0[i][m]:
                    continue
                term = Tser[m][l] * T0[i][m]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = TruncatedLaurent(point, N + 1, (), N)
            row.append((acc * expo[l]).shift(shifts[l]))
        F.append(row)

    certified, ok = _defect(S, a, F, rhos, qs, r)
    return FormalLocalData(a, r, tuple(lams), tuple(qs), (1,) * p,
                           [[rhos[i] if i == j else ZERO for j in range(p)] for i in range(p)],
                           tuple(shifts), F, N, certified, ok)


def _defect(S: LinearSystem, a, F, rhos, qs, r: int) -> tuple[int, bool]:
    """Check F' + F (E/x + Q') - B F = 0 through the attainable order."""
    p = S.p
    point = INF if is_infinity(a) else a
    at = ZERO if is_infinity(a) else a
    # columns carry different integer shifts, so B is expanded through the widest relative extent
    span = 0
    for l in range(p):
        col = [F[i][l] for i in range(p)]
        span = max(span, min(f.order for f in col) - min(f.valuation for f in col))
    high = span + 1
    B = [[laurent_expand(S.local_matrix(a).rows[i][j], at, high) for j in range(p)] for i in range(p)]
    B = [[TruncatedLaurent(point, s.valuation, s.coeffs, s.order) for s in row] for row in B]
    # diagonal multiplier E/x + Q'(x): Q' = d/dx q(1/x) = -sum_m m c_m x^{-m-1}
    diag = []
    for l in range(p):
        c = {}
        c[-1] = rhos[l]
        for m, cm in enumerate(qs[l].c):
            if m and cm:
                c[-m - 1] = c.get(-m - 1, ZERO) - cm * m
        lo = min(c)
        diag.append(TruncatedLaurent(point, lo, [c.get(k, ZERO) for k in range(lo, high + 1)], high))
    worst_order = None
    ok = True
    for i in range(p):
        for l in range(p):
            acc = F[i][l].derivative() + F[i][l] * diag[l]
            for m in range(p):
                acc = acc - B[i][m] * F[m][l]
            worst_order = acc.order if worst_order is None else min(worst_order, acc.order)
            if not acc.is_zero():
                ok = False
    return worst_order, ok


@dataclass
class RegularLocalData:
    point: object
    E: list
    eigenvalues: tuple
    shifts: tuple
    transform: list
    resonant: bool


def regular_exponents(S: LinearSystem, a) -> RegularLocalData:
    a = _require_singular(S, a)
    if S.poincare_rank(a) != 0:
        raise ValueError(f"{point_str(a)} is not a Fuchsian point")
    res = S.residue(a)
    T, U = cm_triangularize(res)
    diag = [U[i][i] for i in range(S.p)]
    shifts = [e.floor_re() for e in diag]
    E = [[U[i][j] - (shifts[i] if i == j else 0) for j in range(S.p)] for i in range(S.p)]
    resonant = any(i != j and (diag[i] - diag[j]).is_integer() and diag[i] != diag[j]
                   for i in range(S.p) for j in range(S.p))
    return RegularLocalData(a, E, tuple(E[i][i] for i in range(S.p)), tuple(shifts), T, resonant)
