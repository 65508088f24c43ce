from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from singular_forge.algebra import RatMatrix
from singular_forge.generate import InstanceProfile, default_profile, generate_instance, random_equation
from singular_forge.scalarize import cyclic_vector, is_apparent, scalarize_and_count, theorem2_pipeline
from singular_forge.system import LinearSystem, NotSingularError, ScalarEquation, companion, equation_katz_rank
from singular_forge.local import katz_rank_system

from conftest import Z, sym_rf, z

EULER = ScalarEquation([Fraction(3, 2) / z, Fraction(-1, 2) / z**2])
NILPOTENT_Z = LinearSystem(RatMatrix([[0, z], [0, 0]]))
DIAG = LinearSystem(RatMatrix.diag([0, 1 / z]))


def apply_operator(E, u):
    p = E.p
    out = sp.diff(u, Z, p)
    for j, b in enumerate(E.b, start=1):
        out += sym_rf(b) * sp.diff(u, Z, p - j)
    return sp.simplify(out)


class TestCyclicVector:
    def test_companion_identity_case(self):
        cv, E = cyclic_vector(companion(EULER), candidates=[(1, 0)])
        assert E == EULER

    def test_diagonal_with_sum_vector(self):
        cv, E = cyclic_vector(DIAG, candidates=[(1, 1)])
        assert E == ScalarEquation([0, 0])
        assert cv.det == 1 / z
        # solutions y = (c1, c2 z), so u = c1 + c2 z
        assert apply_operator(E, 1 + 0 * Z) == 0 and apply_operator(E, Z) == 0

    def test_nilpotent_z(self):
        cv, E = cyclic_vector(NILPOTENT_Z, candidates=[(1, 0)])
        assert E == ScalarEquation([-1 / z, 0])
        assert cv.det == z
        # y2 constant, y1 = c1 + c2 z^2 / 2
        assert apply_operator(E, sp.Integer(1)) == 0 and apply_operator(E, Z**2 / 2) == 0

    @given(st.integers(0, 10_000))
    def test_round_trip(self, seed):
        E = random_equation(seed)
        cv, E2 = cyclic_vector(companion(E), candidates=[(1,) + (0,) * (E.p - 1)])
        assert E2 == E

    @settings(max_examples=4)
    @given(st.integers(0, 10_000))
    def test_series_solutions_satisfy_equation(self, seed):
        S = generate_instance(InstanceProfile(p=2, n_finite=2, pole_orders=(1, 2), seed=seed))
        cv, E = cyclic_vector(S)
        z0, N = sp.Rational(7, 3), 8
        Bk = [sp.Matrix(2, 2, lambda i, j: taylor(sym_rf(S.B.rows[i][j]), z0, N)[k]) for k in range(N)]
        c = [taylor(sym_rf(_as_rf(q)), z0, N) for q in cv.c]
        b = [taylor(sym_rf(f), z0, N) for f in E.b]
        for col in range(2):
            Y = [sp.eye(2)[:, col]]
            for k in range(N - 1):
                Y.append(sum((Bk[j] * Y[k - j] for j in range(k + 1)), sp.zeros(2, 1)) / (k + 1))
            u = [sum(c[i][j] * Y[k - j][i] for i in range(2) for j in range(k + 1)) for k in range(N)]
            du = [(k + 1) * u[k + 1] for k in range(N - 1)]
            d2u = [(k + 1) * du[k + 1] for k in range(N - 2)]
            for k in range(N - 2):
                val = d2u[k] + sum(b[0][j] * du[k - j] for j in range(k + 1)) \
                    + sum(b[1][j] * u[k - j] for j in range(k + 1))
                assert sp.expand(val) == 0


def taylor(expr, z0, n):
    """First n Taylor coefficients at z0 by exact power-series division."""
    x = sp.Symbol("x")
    num, den = sp.fraction(sp.cancel(expr))
    num = sp.Poly(sp.expand(num.subs(Z, x + z0)), x).all_coeffs()[::-1] + [0] * n
    den = sp.Poly(sp.expand(den.subs(Z, x + z0)), x).all_coeffs()[::-1] + [0] * n
    out = []
    for k in range(n):
        acc = num[k] - sum(out[j] * den[k - j] for j in range(k))
        out.append(sp.expand(acc / den[0]))
    return out


def _as_rf(poly):
    from singular_forge.algebra import RationalFunction
    return RationalFunction(poly)


class TestIsApparent:
    def test_integer_exponents(self):
        cert = is_apparent(ScalarEquation([-1 / z, 0]), 0)
        assert cert and sorted(cert.exponents) == [0, 2]
        E = ScalarEquation([-1 / z, 0])
        assert apply_operator(E, sp.Integer(1)) == 0 and apply_operator(E, Z**2) == 0

    def test_complex_exponents(self):
        s = sp.Symbol("s")
        assert set(sp.solve(s * (s - 1) + s + 1, s)) == {sp.I, -sp.I}
        assert is_apparent(ScalarEquation([1 / z, 1 / z**2]), 0) is False

    def test_logarithmic_case_rejected(self):
        # u'' + u'/z = 0 has exponents {0, 0} and solution log z
        assert is_apparent(ScalarEquation([1 / z, 0]), 0) is False

    def test_ordinary_point(self):
        with pytest.raises(NotSingularError):
            is_apparent(ScalarEquation([0, 0]), 0)


class TestScalarizeAndCount:
    def test_euler_companion(self):
        rep = scalarize_and_count(companion(EULER))
        assert rep.m == 0 and rep.n == 2 and rep.R == 0
        assert rep.bound_value == 3 and rep.bound_satisfied

    def test_nilpotent_z(self):
        rep = scalarize_and_count(NILPOTENT_Z)
        assert rep.equation == ScalarEquation([-1 / z, 0])
        assert rep.m == 1
        assert [a for cl in rep.apparent for a in cl.points] == [0]

    def test_diagonal_sum_vector(self):
        cv = cyclic_vector(DIAG, candidates=[(1, 1)])
        rep = scalarize_and_count(DIAG, cyclic=cv)
        assert rep.m == 0 and rep.equation == ScalarEquation([0, 0])

    @given(st.integers(0, 10_000))
    def test_katz_consistency_and_bound(self, seed):
        S = generate_instance(default_profile(seed))
        rep = scalarize_and_count(S)
        for a in S.singular_locus:
            assert equation_katz_rank(rep.equation, a) == katz_rank_system(S, a)
        assert rep.bound_satisfied, rep.findings
        for cl in rep.apparent:
            assert not set(cl.points) & set(S.singular_locus)


class TestTheorem2Pipeline:
    def test_ramified_point(self):
        S = LinearSystem(RatMatrix([[0, z**-2], [z**-3, 0]]))
        t2 = theorem2_pipeline(S)
        assert t2.katz_ranks[0] == Fraction(3, 2)
        K = sum(-((-k.numerator) // k.denominator) for k in t2.katz_ranks.values())
        assert t2.K == K
        assert t2.bound == (K + t2.n + 1) * 1 + 1
        assert t2.satisfied

    def test_fuchsian_bound(self):
        S = generate_instance(InstanceProfile(p=3, n_finite=2, pole_orders=(1, 1), leading="generic", seed=4))
        t2 = theorem2_pipeline(S)
        n = len(S.singular_locus)
        if all(k == 0 for k in t2.katz_ranks.values()):
            assert t2.bound == (n + 1) * 3 + 1

    def test_scalar_system(self):
        t2 = theorem2_pipeline(LinearSystem(RatMatrix([[2 / z]])))
        assert t2.bound == 1 and t2.m == 0 and t2.satisfied

    def test_nilpotent_z(self):
        t2 = theorem2_pipeline(NILPOTENT_Z)
        assert t2.m == 1 and t2.m <= t2.bound
