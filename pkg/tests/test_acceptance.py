"""Acceptance criteria 1-11; each test records one PASS/FAIL line shown in the terminal summary."""

import random
import subprocess
import sys

import numpy as np
import pytest
from scipy.linalg import expm

from singular_forge import bounds
from singular_forge.algebra import INF, RatMatrix
from singular_forge.gauge import HOLOMORPHIC, SplittingType, apply_gauge, classify_gauge
from singular_forge.generate import (
    default_profile,
    euler_matrix,
    formal_instance,
    fuchsian_profile,
    generate_instance,
    random_equation,
    random_gauge,
)
from singular_forge.local import (
    classify_singularity,
    formal_data_unramified,
    katz_rank_system,
    minimal_poincare_rank,
    moser_reduce,
)
from singular_forge.numeric.monodromy import local_monodromy, monodromy_rep, trivial_residual
from singular_forge.scalarize import cyclic_vector, scalarize_and_count
from singular_forge.system import LinearSystem, ceil_fraction, companion, fuchsian_check, residue_trace_sum

from bounds_golden import GOLDEN, evaluate
from conftest import record_acceptance, z
from defect_oracle import defect_order
from test_monodromy_numeric import euler_system, numeric

pytestmark = pytest.mark.acceptance


def instances(seeds):
    return [(s, generate_instance(default_profile(s))) for s in seeds]


def conclude(number, failures, checked, note=""):
    ok = not failures
    detail = f"{checked} checks" + (f", {note}" if note else "")
    if failures:
        detail += f", failures: {failures[:5]}"
    record_acceptance(number, ok, detail)
    assert ok, detail


def test_criterion_01_residue_sum():
    bad = [s for s, S in instances(range(500)) if residue_trace_sum(S) != 0]
    conclude(1, bad, 500, "exact zero")


def test_criterion_02_rank_relations():
    bad, count = [], 0
    for s, S in instances(range(500)):
        for a in S.singular_locus:
            k = katz_rank_system(S, a)
            count += 1
            if not (k <= S.poincare_rank(a) and minimal_poincare_rank(S, a) == ceil_fraction(k)):
                bad.append((s, str(a)))
    conclude(2, bad, count, "points")


def invariant_class(S, a):
    """Meromorphic-gauge invariant part of the classification: regular, or irregular with its ramification."""
    if not S.is_singular(a):
        return "regular"
    c = classify_singularity(S, a)
    return "regular" if c in ("fuchsian", "regular-non-fuchsian") else c


def test_criterion_03_gauge_invariance():
    bad, count, refined = [], 0, 0
    for s, S in instances(range(100)):
        rng = random.Random(10_007 * s + 1)
        for g in range(3):
            G = random_gauge(rng, S.p, list(S.singular_locus))
            S2 = apply_gauge(S, G)
            for a in set(S.singular_locus) | set(S2.singular_locus):
                count += 1
                k1 = katz_rank_system(S, a) if S.is_singular(a) else 0
                k2 = katz_rank_system(S2, a) if S2.is_singular(a) else 0
                if k1 != k2 or invariant_class(S, a) != invariant_class(S2, a):
                    bad.append((s, g, str(a), "katz/class"))
                if classify_gauge(G, a) == HOLOMORPHIC:
                    r1 = S.poincare_rank(a) if S.is_singular(a) else -1
                    r2 = S2.poincare_rank(a) if S2.is_singular(a) else -1
                    if r1 != r2 or (r1 >= 0 and classify_singularity(S, a) != classify_singularity(S2, a)):
                        bad.append((s, g, str(a), "holomorphic"))
                elif S.is_singular(a) and S2.is_singular(a) and \
                        classify_singularity(S, a) != classify_singularity(S2, a):
                    refined += 1
    conclude(3, bad, count, f"point checks; {refined} Fuchsian/regular-non-Fuchsian swaps under meromorphic gauges")


def test_criterion_04_moser():
    bad, count = [], 0
    for s, S in instances(range(200)):
        for a in S.singular_locus:
            count += 1
            S2, G = moser_reduce(S, a)
            rank = S2.poincare_rank(a) if S2.is_singular(a) else 0
            if apply_gauge(S, G) != S2 or rank != minimal_poincare_rank(S, a):
                bad.append((s, str(a)))
    W = LinearSystem(RatMatrix([[0, z**-2], [0, 0]]))
    W2, G = moser_reduce(W, 0)
    if not (G.gamma == RatMatrix.diag([z, 1]) and W2.B == RatMatrix([[1 / z, 1 / z], [0, 0]])
            and classify_singularity(W2, 0) == "fuchsian"):
        bad.append("worked example")
    conclude(4, bad, count + 1)


def test_criterion_05_round_trip():
    bad, irregular = [], 0
    for s in range(100):
        E = random_equation(s)
        irregular += not all(fuchsian_check(E, a) for a in E.singular_points)
        cv, E2 = cyclic_vector(companion(E), candidates=[(1,) + (0,) * (E.p - 1)])
        rep = scalarize_and_count(companion(E), cyclic=(cv, E2))
        if E2 != E or rep.m != 0:
            bad.append(s)
    conclude(5, bad, 100, f"{irregular} irregular")


def test_criterion_06_intermediate_bound():
    bad, total_m = [], 0
    for s, S in instances(range(200)):
        rep = scalarize_and_count(S)
        total_m += rep.m
        if not rep.bound_satisfied or rep.findings:
            bad.append((s, rep.m, rep.bound_value))
    conclude(6, bad, 200, f"{total_m} apparent points in total")


def test_criterion_07_apparent_soundness():
    bad, checked = [], 0
    for s, S in instances(range(100)):
        rep = scalarize_and_count(S)
        E = companion(rep.equation)
        for cl in rep.apparent:
            for pt in ([INF] if cl.factor is None else cl.numeric):
                checked += 1
                res = trivial_residual(E, pt)
                if not res <= 1e-8:
                    bad.append((s, str(pt), res))
    conclude(7, bad, checked, "apparent points")


def test_criterion_08_monodromy():
    bad = []
    for s in range(20):
        A = euler_matrix(s)
        err = np.max(np.abs(local_monodromy(euler_system(A), 0) - expm(2j * np.pi * numeric(A))))
        if not err <= 1e-8:
            bad.append(("euler", s, err))
    systems = [("fuchsian", s, generate_instance(fuchsian_profile(s))) for s in range(100)]
    systems += [("default", s, S) for s, S in instances(range(100))
                if S.singular_locus and all(S.poincare_rank(a) == 0 for a in S.singular_locus)]
    worst = 0.0
    for kind, s, S in systems:
        res = monodromy_rep(S).residual
        worst = max(worst, res)
        if not res <= 1e-8:
            bad.append((kind, s, res))
    conclude(8, bad, 20 + len(systems), f"worst relation residual {worst:.1e}")


def test_criterion_09_formal_defect():
    bad = []
    for s in range(50):
        S, a = formal_instance(s)
        fd = formal_data_unramified(S, a, 8)
        top = max(q.deg for q in fd.q)
        if not defect_order(S, fd) > fd.certified_order or top != S.poincare_rank(a):
            bad.append(s)
    conclude(9, bad, 50)


def test_criterion_10_bound_calculators():
    bad = [(name, args) for name, args, want in GOLDEN if evaluate(name, args) != want]
    grid = 0
    for p in range(1, 7):
        for n in range(1, 7):
            for R in range(1, 7):
                for r1 in ([R] if n == 1 else range(R + 1)):
                    grid += 1
                    k = SplittingType(tuple((n + R - 1) * (p - 1 - j) for j in range(p)))
                    r = [r1] + [0] * (n - 1)
                    r[-1] += R - r1
                    if not bounds.prop1_check(k, n, R, 1) or \
                            bounds.formsO_rank_bound(r1, k) != bounds.theorem1_value(p, n, r):
                        bad.append((p, n, R, r1))
    conclude(10, bad, len(GOLDEN) + grid, f"{len(GOLDEN)} golden cases")


def test_criterion_11_determinism():
    cmd = [sys.executable, "-m", "singular_forge", "verify", "--seeds", "0..99"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    bad = [] if runs[0].stdout == runs[1].stdout and runs[0].stdout else ["reports differ"]
    bad += [f"exit {r.returncode}" for r in runs if r.returncode != 0]
    conclude(11, bad, 2, f"{len(runs[0].stdout)} bytes")
