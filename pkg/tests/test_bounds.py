from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from singular_forge import bounds
from singular_forge.bounds import BoundInputs, PreconditionError
from singular_forge.gauge import SplittingType

from bounds_golden import GOLDEN, evaluate


@pytest.mark.parametrize("name, args, expected", GOLDEN, ids=[f"{g[0]}-{i}" for i, g in enumerate(GOLDEN)])
def test_golden_table(name, args, expected):
    assert evaluate(name, args) == expected


def test_theorem1_scalar_case_is_first_rank():
    assert bounds.theorem1_bound(BoundInputs(1, 3, (7, 1, 2))) == 7


def test_remark2_needs_irregular_point():
    with pytest.raises(PreconditionError):
        bounds.remark2_bound(BoundInputs(2, 2, (0, 0)))


def test_rank_list_length_checked():
    with pytest.raises(PreconditionError):
        bounds.theorem1_bound(BoundInputs(2, 3, (1, 0)))


def test_formsO_constant_splitting():
    assert bounds.formsO_rank_bound(3, SplittingType((2, 2, 2))) == 3


def test_inputs_recompute_totals():
    inp = BoundInputs(2, 3, (1, 2, 0), (Fraction(3, 2), Fraction(1, 3), 0))
    assert inp.R == 3 and inp.K_total == 3


ranks = st.integers(1, 6).flatmap(lambda n: st.tuples(st.integers(1, 6), st.just(n),
                                                      st.lists(st.integers(0, 4), min_size=n, max_size=n)))


@given(ranks)
def test_remark2_is_theorem1_minus_p_minus_one(data):
    p, n, r = data
    if sum(r) == 0:
        r[0] = 1
    inp = BoundInputs(p, n, r)
    assert bounds.theorem1_bound(inp) - bounds.remark2_bound(inp) == p - 1


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(0, 6))
def test_extremal_splitting_reproduces_theorem1(p, n, R, r1):
    r1 = R if n == 1 else min(r1, R)
    gap = (n + R) * 1 - 1
    k = SplittingType(tuple(gap * (p - 1 - j) for j in range(p)))
    assert bounds.prop1_check(k, n, R, 1)
    r = [r1] + [0] * (n - 1)
    r[-1] += R - r1
    assert bounds.formsO_rank_bound(r1, k) == bounds.theorem1_value(p, n, r)


@given(st.lists(st.integers(-5, 12), min_size=1, max_size=4), st.integers(1, 5), st.integers(0, 5), st.integers(1, 5))
def test_prop1_monotone_in_M(ks, n, R, M):
    k = SplittingType(tuple(sorted(ks, reverse=True)))
    if bounds.prop1_check(k, n, R, M):
        assert bounds.prop1_check(k, n, R, M + 1)


@given(st.integers(0, 6), st.integers(0, 12), st.integers(1, 6))
def test_corollary1_is_exact_rational_comparison(r0, r, p):
    assert bounds.corollary1_predicate(r0, r, p) == (r0 * p <= r)
