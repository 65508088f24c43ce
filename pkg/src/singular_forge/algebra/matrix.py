"""Matrices over rational functions and exact constant linear algebra over Q(i)."""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

from .poly import ONE_POLY, ZERO_POLY, Poly, poly_lcm_many, qi_roots
from .ratfunc import ONE_RF, ZERO_RF, RationalFunction, as_rf, laurent_expand, order_at
from .scalars import ONE, ZERO, GaussianRational, as_scalar


class SingularMatrixError(ArithmeticError):
    """The matrix is singular (identically, for rational-function matrices)."""


# ---------------------------------------------------------------------------
# constant matrices: lists of lists of GaussianRational


def const_matrix(rows) -> list[list[GaussianRational]]:
    return [[as_scalar(x) for x in row] for row in rows]


def identity(n: int) -> list[list[GaussianRational]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> list[list[GaussianRational]]:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def cm_mul(a, b):
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(m):
            acc = ZERO
            for k, x in enumerate(row):
                if x:
                    y = b[k][j]
                    if y:
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def cm_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def cm_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def cm_scale(a, s):
    return [[x * s for x in row] for row in a]


def cm_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def cm_is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def cm_rref(a):
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def cm_rank(a) -> int:
    if not a or not a[0]:
        return 0
    return len(cm_rref(a)[1])


def cm_nullspace(a, ncols: int | None = None) -> list[list[GaussianRational]]:
    """Basis of {v : a v = 0} as a list of column vectors (plain lists)."""
    cols = len(a[0]) if a else (ncols or 0)
    if not a:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    r, pivots = cm_rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][f]
        basis.append(v)
    return basis


def cm_left_nullspace(a) -> list[list[GaussianRational]]:
    """Basis of {w : w a = 0} as row vectors."""
    return cm_nullspace(cm_transpose(a), ncols=len(a))


def cm_inverse(a):
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    r, pivots = cm_rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("constant matrix is singular")
    return [row[n:] for row in r]


def cm_det(a) -> GaussianRational:
    n = len(a)
    m = [list(row) for row in a]
    det = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def cm_charpoly(a) -> Poly:
    """det(x I - a) via the Faddeev-LeVerrier recursion."""
    n = len(a)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = zeros(n)
    for k in range(1, n + 1):
        m = cm_add(cm_mul(a, m), cm_scale(identity(n), coeffs[n - k + 1]))
        am = cm_mul(a, m)
        tr = ZERO
        for i in range(n):
            tr = tr + am[i][i]
        coeffs[n - k] = -tr / k
    return Poly(coeffs)


def cm_eigenvalues(a) -> list[tuple[GaussianRational, int]]:
    """Eigenvalues with algebraic multiplicities; UnsupportedScalarField outside Q(i)."""
    return qi_roots(cm_charpoly(a))


def cm_is_upper_triangular(a) -> bool:
    return all(not a[i][j] for i in range(len(a)) for j in range(i))


def cm_triangularize(a):
    """Return (T, U) with U = T^{-1} a T upper triangular, using Q(i) eigenvalues.

    Raises UnsupportedScalarField when an eigenvalue is not in Q(i).
    """
    n = len(a)
    if cm_is_upper_triangular(a):
        return identity(n), [list(row) for row in a]
    eigs = []
    for lam, mult in cm_eigenvalues(a):
        eigs += [lam] * mult
    # Build a basis whose first k vectors span an invariant subspace, one eigenvector at a time.
    basis: list[list[GaussianRational]] = []
    current = [list(row) for row in a]
    frame = identity(n)  # columns express the working coordinates in the original ones
    size = n
    for step in range(n):
        lam = next(l for l in eigs if cm_rank(cm_sub(current, cm_scale(identity(size), l))) < size)
        eigs.remove(lam)
        v = cm_nullspace(cm_sub(current, cm_scale(identity(size), lam)))[0]
        # complete v to a basis of the working space
        cols = [v] + [[ONE if i == j else ZERO for i in range(size)] for j in range(size)]
        chosen = [v]
        for c in cols[1:]:
            if len(chosen) == size:
                break
            if cm_rank(cm_transpose(chosen + [c])) == len(chosen) + 1:
                chosen.append(c)
        p = cm_transpose(chosen)
        basis.append([sum((frame[i][k] * v[k] for k in range(size)), ZERO) for i in range(n)])
        pinv = cm_inverse(p)
        conj = cm_mul(pinv, cm_mul(current, p))
        new_frame = cm_mul(frame, p)
        frame = [row[1:] for row in new_frame]
        current = [row[1:] for row in conj[1:]]
        size -= 1
    t = cm_transpose(basis)
    u = cm_mul(cm_inverse(t), cm_mul(a, t))
    return t, u


# ---------------------------------------------------------------------------
# rational-function matrices


class RatMatrix:
    """Immutable rectangular matrix of RationalFunction entries."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(as_rf(x) for x in row) for row in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must have positive dimensions")
        self._hash = None

    @classmethod
    def _make(cls, rows) -> "RatMatrix":
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._make([[ONE_RF if i == j else ZERO_RF for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "RatMatrix":
        return cls._make([[ZERO_RF] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, entries) -> "RatMatrix":
        entries = [as_rf(e) for e in entries]
        n = len(entries)
        return cls._make([[entries[i] if i == j else ZERO_RF for j in range(n)] for i in range(n)])

    @classmethod
    def from_constant(cls, a) -> "RatMatrix":
        return cls._make([[RationalFunction.const(x) for x in row] for row in a])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> RationalFunction:
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for row in self.rows:
            yield from row

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        return "RatMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    def map(self, f: Callable[[RationalFunction], RationalFunction]) -> "RatMatrix":
        return RatMatrix._make([[f(x) for x in row] for row in self.rows])

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix._make([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix._make([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "RatMatrix":
        return self.map(lambda x: -x)

    def __mul__(self, other) -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            s = as_rf(other)
            return self.map(lambda x: x * s)
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch in matrix product")
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = ZERO_RF
                for x, y in zip(row, col):
                    if x.num.c and y.num.c:
                        acc = acc + x * y
                new.append(acc)
            out.append(new)
        return RatMatrix._make(out)

    def __rmul__(self, other) -> "RatMatrix":
        s = as_rf(other)
        return self.map(lambda x: s * x)

    def transpose(self) -> "RatMatrix":
        return RatMatrix._make(list(zip(*self.rows)))

    def derivative(self) -> "RatMatrix":
        return self.map(lambda x: x.derivative())

    def trace(self) -> RationalFunction:
        acc = ZERO_RF
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(not x.num.c for x in self.entries())

    def substitute_inverse(self) -> "RatMatrix":
        """Entrywise f(1/w)."""
        return self.map(lambda x: x.substitute_inverse())

    def order_at(self, a) -> float | int:
        """Minimal order over the entries (+inf for the zero matrix)."""
        return min((order_at(x, a) for x in self.entries()), default=math.inf)

    def laurent_coefficients(self, a, lo: int, hi: int) -> list[list[list[GaussianRational]]]:
        """Constant coefficient matrices of x^k, k = lo..hi, in the expansion at a."""
        n, m = self.shape
        out = [[[ZERO] * m for _ in range(n)] for _ in range(hi - lo + 1)]
        for i in range(n):
            for j in range(m):
                f = self.rows[i][j]
                if not f.num.c or order_at(f, a) > hi:
                    continue
                s = laurent_expand(f, a, hi)
                if s.valuation < lo:
                    raise ValueError(f"entry ({i},{j}) has order {s.valuation} below {lo}")
                for k in range(s.valuation, hi + 1):
                    out[k - lo][i][j] = s[k]
        return out

    def evaluate(self, x) -> list[list[GaussianRational]]:
        return [[f(x) for f in row] for row in self.rows]

    # determinant / inverse via a polynomial matrix over a common row denominator
    def _poly_form(self):
        dens = []
        polys = []
        for row in self.rows:
            d = poly_lcm_many(x.den for x in row)
            dens.append(d)
            polys.append([x.num * d.exact_div(x.den) if x.num.c else ZERO_POLY for x in row])
        return polys, dens

    def det(self) -> RationalFunction:
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        polys, dens = self._poly_form()
        num = _poly_det(polys)
        den = ONE_POLY
        for d in dens:
            den = den * d
        return RationalFunction(num, den)

    def inverse(self) -> "RatMatrix":
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        polys, dens = self._poly_form()
        det = _poly_det(polys)
        if not det.c:
            raise SingularMatrixError("matrix is identically singular (det = 0)")
        adj = _poly_adjugate(polys)
        return RatMatrix._make([[RationalFunction(adj[i][j] * dens[j], det) if adj[i][j].c else ZERO_RF
                                 for j in range(n)] for i in range(n)])


def _poly_det(m: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant of a polynomial matrix."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    a = [list(r) for r in m]
    sign = ONE
    prev = ONE_POLY
    for k in range(n - 1):
        if not a[k][k].c:
            piv = next((i for i in range(k + 1, n) if a[i][k].c), None)
            if piv is None:
                return ZERO_POLY
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def _poly_adjugate(m: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    n = len(m)
    if n == 1:
        return [[ONE_POLY]]
    adj = [[ZERO_POLY] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = _poly_det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj
