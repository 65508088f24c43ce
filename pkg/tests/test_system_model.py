from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from singular_forge.algebra import INF, RatMatrix
from singular_forge.generate import default_profile, generate_instance, random_equation
from singular_forge.local import katz_rank_system
from singular_forge.system import (
    LinearSystem,
    NotSingularError,
    ScalarEquation,
    companion,
    equation_katz_rank,
    fuchsian_check,
    poincare_rank,
    residue_trace_sum,
    singular_locus,
)

from conftest import Z, sym_matrix, z

W = sp.Symbol("w")
A = RatMatrix([[1, 2], [3, -1]])


def chart_matrix(S):
    """-(1/w^2) B(1/w) computed by sympy."""
    return sp.simplify(-sym_matrix(S.B).subs(Z, 1 / W) / W**2)


def euler(alpha, beta):
    return ScalarEquation([alpha / z, beta / z**2])


class TestSingularLocus:
    def test_constant_matrix_is_singular_at_infinity(self):
        S = LinearSystem(RatMatrix([[0, 1], [0, 0]]))
        assert singular_locus(S) == [INF]
        assert chart_matrix(S)[0, 1] == -1 / W**2

    def test_two_fuchsian_points(self):
        S = LinearSystem(A * (1 / z) - A * (1 / (z - 1)))
        chart = chart_matrix(S)
        holomorphic_at_inf = all(sp.limit(e, W, 0).is_finite for e in chart)
        assert holomorphic_at_inf
        assert singular_locus(S) == [0, 1]

    def test_zero_system(self):
        assert singular_locus(LinearSystem(RatMatrix.zeros(2))) == []


class TestPoincareRank:
    def test_double_pole(self):
        assert poincare_rank(LinearSystem(RatMatrix([[0, z**-2], [0, 0]])), 0) == 1

    def test_fuchsian(self):
        assert poincare_rank(LinearSystem(A * (1 / z)), 0) == 0

    def test_infinity_via_chart(self):
        S = LinearSystem(RatMatrix([[0, 1], [0, 0]]))
        assert poincare_rank(S, INF) == 1
        pole = -min(sp.Poly(sp.fraction(sp.together(e))[1], W).degree() for e in chart_matrix(S) if e != 0)
        assert -pole - 1 == 1

    def test_ordinary_point_rejected(self):
        with pytest.raises(NotSingularError):
            poincare_rank(LinearSystem(RatMatrix([[0, z**-2], [0, 0]])), 1)


class TestResidueTraceSum:
    def test_cancelling_residues(self):
        assert residue_trace_sum(LinearSystem(A * (1 / z) - A * (1 / (z - 1)))) == 0

    def test_diagonal_with_residue_at_infinity(self):
        S = LinearSystem(RatMatrix.diag([1 / z, 0]))
        at_inf = sp.residue(chart_matrix(S).trace(), W, 0)
        assert at_inf == -1
        assert S.residue(INF)[0][0] == -1
        assert residue_trace_sum(S) == 0

    def test_zero(self):
        assert residue_trace_sum(LinearSystem(RatMatrix.zeros(3))) == 0

    @given(st.integers(0, 10_000))
    def test_vanishes_on_generated_systems(self, seed):
        assert residue_trace_sum(generate_instance(default_profile(seed))) == 0


class TestCompanion:
    def test_trivial(self):
        assert companion(ScalarEquation([0, 0])).B == RatMatrix([[0, 1], [0, 0]])

    def test_first_order_term(self):
        assert companion(ScalarEquation([1 / z, 0])).B == RatMatrix([[0, 1], [0, -1 / z]])

    def test_euler(self):
        a, b = Fraction(2, 3), Fraction(-5)
        assert companion(euler(a, b)).B == RatMatrix([[0, 1], [-b / z**2, -a / z]])


class TestEquationKatzRank:
    def test_euler_is_zero(self):
        assert equation_katz_rank(euler(3, 7), 0) == 0

    def test_exponential_growth(self):
        assert equation_katz_rank(ScalarEquation([-(z**-2)]), 0) == 1

    def test_airy_at_infinity(self):
        airy = ScalarEquation([0, -z])
        assert equation_katz_rank(airy, INF) == Fraction(3, 2)
        # chain rule for u(z) = v(w), w = 1/z: u' = -w^2 v', u'' = w^4 v'' + 2 w^3 v'
        v0, v1, v2 = sp.symbols("v0 v1 v2")
        lhs = sp.expand((W**4 * v2 + 2 * W**3 * v1) - (1 / W) * v0)
        d2, d1, d0 = (lhs.coeff(v) for v in (v2, v1, v0))
        b1, b2 = sp.simplify(d1 / d2), sp.simplify(d0 / d2)
        orders = {j: sp.Poly(sp.fraction(sp.together(b))[0], W).monoms()[-1][0]
                  - sp.Poly(sp.fraction(sp.together(b))[1], W).monoms()[-1][0]
                  for j, b in ((1, b1), (2, b2))}
        assert orders == {1: -1, 2: -5}
        assert max(Fraction(-o - j, j) for j, o in orders.items()) == Fraction(3, 2)

    def test_ordinary_point_is_zero(self):
        assert equation_katz_rank(euler(1, 1), 5) == 0


class TestFuchsianCheck:
    def test_examples(self):
        assert fuchsian_check(euler(1, 2), 0)
        assert not fuchsian_check(ScalarEquation([-(z**-2)]), 0)
        assert not fuchsian_check(ScalarEquation([0, -z]), INF)

    @given(st.integers(0, 10_000))
    def test_iff_katz_zero(self, seed):
        E = random_equation(seed)
        for a in E.singular_points:
            assert fuchsian_check(E, a) == (equation_katz_rank(E, a) == 0)


@given(st.integers(0, 10_000))
def test_companion_katz_round_trip(seed):
    E = random_equation(seed)
    S = companion(E)
    for a in S.singular_locus:
        assert katz_rank_system(S, a) == equation_katz_rank(E, a)
