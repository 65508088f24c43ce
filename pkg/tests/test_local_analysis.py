import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from singular_forge.algebra import RatMatrix
from singular_forge.gauge import GaugeTransform, apply_gauge
from singular_forge.generate import default_profile, formal_instance, generate_instance, random_gauge
from singular_forge.local import (
    NonGenericLeadingMatrix,
    classify_singularity,
    formal_data_unramified,
    katz_rank_system,
    minimal_poincare_rank,
    moser_reduce,
    regular_exponents,
)
from singular_forge.scalarize import cyclic_vector
from singular_forge.system import LinearSystem, ceil_fraction

from conftest import z
from defect_oracle import defect_order

REGULAR = LinearSystem(RatMatrix([[0, z**-2], [0, 0]]))
RAMIFIED = LinearSystem(RatMatrix([[0, z**-2], [z**-3, 0]]))


class TestKatzRank:
    def test_regular_non_fuchsian(self):
        assert katz_rank_system(REGULAR, 0) == 0
        shear = apply_gauge(REGULAR, GaugeTransform(RatMatrix.diag([z, 1])))
        assert shear.poincare_rank(0) == 0

    def test_diagonal_double_pole(self):
        assert katz_rank_system(LinearSystem(RatMatrix.diag([z**-2, 0])), 0) == 1

    def test_ramified(self):
        assert katz_rank_system(RAMIFIED, 0) == Fraction(3, 2)
        cv, E = cyclic_vector(RAMIFIED, candidates=[(1, 0)])
        assert E.b[0] == 2 / z and E.b[1] == -(z**-5)
        orders = [E.local_order(j, 0) for j in (1, 2)]
        assert max(Fraction(-o - j, j) for j, o in zip((1, 2), orders)) == Fraction(3, 2)

    @given(st.integers(0, 10_000), st.integers(0, 10_000))
    def test_meromorphic_gauge_invariance(self, seed, gseed):
        S = generate_instance(default_profile(seed))
        G = random_gauge(random.Random(gseed), S.p, list(S.singular_locus))
        S2 = apply_gauge(S, G)
        for a in S.singular_locus:
            if S2.is_singular(a):
                assert katz_rank_system(S2, a) == katz_rank_system(S, a)
            else:
                assert katz_rank_system(S, a) == 0


class TestMinimalRank:
    @pytest.mark.parametrize("B, expected", [
        (RAMIFIED.B, 2),
        (RatMatrix([[0, 1 / z], [0, 0]]), 0),
        (RatMatrix.diag([z**-3, 0]), 2),
    ])
    def test_ceiling(self, B, expected):
        assert minimal_poincare_rank(LinearSystem(B), 0) == expected

    def test_ceiling_helper(self):
        assert [ceil_fraction(Fraction(x)) for x in ("3/2", "0", "2")] == [2, 0, 2]


class TestMoser:
    def test_worked_example(self):
        S2, G = moser_reduce(REGULAR, 0)
        assert G.gamma == RatMatrix.diag([z, 1])
        assert S2.B == RatMatrix([[1 / z, 1 / z], [0, 0]])
        assert apply_gauge(REGULAR, G) == S2

    def test_already_minimal(self):
        S = LinearSystem(RatMatrix.diag([z**-2, 1 / z]))
        S2, G = moser_reduce(S, 0)
        assert S2 == S and G == GaugeTransform.identity(2)

    def test_ramified_keeps_rank(self):
        S2, G = moser_reduce(RAMIFIED, 0)
        assert S2.poincare_rank(0) == 2
        assert G == GaugeTransform.identity(2)

    @given(st.integers(0, 10_000))
    def test_reaches_minimal_rank(self, seed):
        S = generate_instance(default_profile(seed))
        for a in S.singular_locus:
            S2, G = moser_reduce(S, a)
            assert apply_gauge(S, G) == S2
            rank = S2.poincare_rank(a) if S2.is_singular(a) else 0
            assert rank == minimal_poincare_rank(S, a)


class TestClassification:
    def test_examples(self):
        A = RatMatrix([[1, 2], [0, 3]])
        assert classify_singularity(LinearSystem(A * (1 / z)), 0) == "fuchsian"
        assert classify_singularity(RAMIFIED, 0) == "irregular-ramified"
        assert classify_singularity(REGULAR, 0) == "regular-non-fuchsian"
        assert classify_singularity(LinearSystem(RatMatrix.diag([z**-2, 0])), 0) == "irregular-unramified"


class TestFormalData:
    def test_diagonal(self):
        a, b = Fraction(2), Fraction(-1, 3)
        S = LinearSystem(RatMatrix.diag([a / z**2, b / z**2]))
        fd = formal_data_unramified(S, 0, 6)
        qs = {tuple(q.c) for q in fd.q}
        assert qs == {(0, -a), (0, -b)}
        assert fd.E == [[0, 0], [0, 0]]
        assert all(fd.F[i][j].is_zero() == (i != j) for i in range(2) for j in range(2))
        assert all(fd.F[i][i].valuation == 0 and fd.F[i][i].coeffs == (1,) + (0,) * (len(fd.F[i][i].coeffs) - 1)
                   for i in range(2))

    def test_coupled_against_sympy_defect(self):
        S = LinearSystem(RatMatrix([[z**-2, 1], [0, -(z**-2)]]))
        fd = formal_data_unramified(S, 0, 8)
        assert {tuple(q.c) for q in fd.q} == {(0, -1), (0, 1)}
        assert fd.defect_zero
        assert defect_order(S, fd) > fd.certified_order

    def test_repeated_eigenvalues(self):
        with pytest.raises(NonGenericLeadingMatrix):
            formal_data_unramified(LinearSystem(RatMatrix.diag([z**-2, z**-2])), 0, 6)

    @given(st.integers(0, 10_000))
    def test_unramified_rank_and_normalization(self, seed):
        S, a = formal_instance(seed)
        fd = formal_data_unramified(S, a, 6)
        r = S.poincare_rank(a)
        assert max(q.deg for q in fd.q) == r == katz_rank_system(S, a)
        assert fd.defect_zero
        for i in range(S.p):
            assert 0 <= fd.E[i][i].re < 1


class TestRegularExponents:
    def test_diagonal(self):
        S = LinearSystem(RatMatrix.diag([Fraction(1, 3), Fraction(1, 2)]) * (1 / z))
        rd = regular_exponents(S, 0)
        assert sorted(rd.eigenvalues, key=lambda x: x.re) == [Fraction(1, 3), Fraction(1, 2)]
        assert rd.shifts == (0, 0)

    def test_nilpotent(self):
        A = RatMatrix([[0, 1], [0, 0]])
        rd = regular_exponents(LinearSystem(A * (1 / z)), 0)
        assert rd.E == [[0, 1], [0, 0]] and rd.eigenvalues == (0, 0)

    def test_integer_shift(self):
        rd = regular_exponents(LinearSystem(RatMatrix([[Fraction(5, 2) / z]])), 0)
        assert rd.eigenvalues == (Fraction(1, 2),) and rd.shifts == (2,)

    def test_requires_fuchsian(self):
        with pytest.raises(ValueError):
            regular_exponents(REGULAR, 0)


def test_formal_data_default_truncation():
    S = LinearSystem(RatMatrix.diag([z**-4, 0]))
    assert formal_data_unramified(S, 0).truncation == 12
    assert formal_data_unramified(LinearSystem(RatMatrix.diag([z**-2, 0])), 0).truncation == 8
