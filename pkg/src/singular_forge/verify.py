"""End-to-end verification of a system; every step's failure becomes a finding."""

from __future__ import annotations

from dataclasses import dataclass

from . import bounds
from .algebra.points import INF, is_infinity, point_str
from .algebra.scalars import ZERO
from .gauge import apply_gauge
from .local import moser_reduce, singular_point_report
from .scalarize import scalarize_and_count, theorem2_pipeline
from .serialize import (
    SCHEMA,
    complex_to_json,
    const_matrix_to_json,
    equation_to_json,
    fraction_to_json,
    matrix_to_json,
    point_to_json,
    poly_to_json,
    scalar_to_json,
    system_to_json,
)
from .system import LinearSystem, ceil_fraction, companion, residue_trace_sum


@dataclass(frozen=True)
class VerifyOptions:
    monodromy: bool = False
    tol: float | None = None
    precision: str = "dd"
    relation_tol: float = 1e-8
    trivial_tol: float = 1e-8
    trunc: int | None = None


def _point_report_json(rep) -> dict:
    return {
        "point": point_to_json(rep.point),
        "chart": rep.chart,
        "poincare_rank": rep.poincare_rank,
        "katz_rank": fraction_to_json(rep.katz_rank),
        "minimal_rank": rep.minimal_rank,
        "classification": rep.classification,
        "residue": const_matrix_to_json(rep.residue),
        "residue_trace": scalar_to_json(rep.residue_trace),
        "slope_indices": list(rep.slope_indices),
    }


def scalarization_json(rep) -> dict:
    apparent = []
    for cl in rep.apparent:
        apparent.append({
            "factor": None if cl.factor is None else poly_to_json(cl.factor),
            "points": [point_to_json(a) for a in cl.points],
            "numeric": [complex_to_json(z) for z in cl.numeric],
            "count": cl.count,
            "exponents": list(cl.certificate.exponents),
            "truncation_order": cl.certificate.truncation_order,
        })
    return {
        "cyclic_vector": [poly_to_json(c) for c in rep.cyclic.c],
        "candidate_index": rep.cyclic.candidate_index,
        "equation": equation_to_json(rep.equation)["coefficients"],
        "original_singular": [point_to_json(a) for a in rep.original_singular],
        "apparent": apparent,
        "m": rep.m,
        "m_counting": "distinct points",
        "R": rep.R,
        "n": rep.n,
        "bound": rep.bound_value,
        "bound_satisfied": rep.bound_satisfied,
    }


def tolerances(options: VerifyOptions) -> dict:
    from .numeric.monodromy import DEFAULT_TOL

    step = DEFAULT_TOL[options.precision] if options.tol is None else options.tol
    return {"transport_step": step, "precision": options.precision,
            "relation": options.relation_tol, "trivial": options.trivial_tol}


def run_verification(S: LinearSystem, options: VerifyOptions = VerifyOptions()) -> dict:
    props: dict[str, bool] = {}
    findings: list[str] = []
    report: dict = {"schema": SCHEMA, "system": system_to_json(S)["B"], "tolerances": tolerances(options)}

    def guard(name, fn):
        try:
            return fn()
        except Exception as e:  # noqa: BLE001 - every failure is recorded
            findings.append(f"{name}: {type(e).__name__}: {e}")
            props[name] = False
            return None

    locus = guard("system_model.singular_locus", lambda: list(S.singular_locus))
    if locus is None:
        report.update(properties=props, findings=findings, passed=False)
        return report
    report["singular_locus"] = [point_to_json(a) for a in locus]

    total = guard("system_model.residue_trace_sum", lambda: residue_trace_sum(S))
    if total is not None:
        report["residue_trace_sum"] = scalar_to_json(total)
        props["system_model.residue_trace_sum"] = total == ZERO

    points = []
    for a in locus:
        rep = guard(f"local_analysis.report[{point_str(a)}]", lambda a=a: singular_point_report(S, a))
        if rep is not None:
            points.append(rep)
    report["singular_points"] = [_point_report_json(r) for r in points]
    props["local_analysis.katz_le_poincare"] = all(r.katz_rank <= r.poincare_rank for r in points)
    props["local_analysis.minimal_is_ceiling"] = all(r.minimal_rank == ceil_fraction(r.katz_rank) for r in points)

    moser = []
    for r in points:
        def run(r=r):
            S2, G = moser_reduce(S, r.point)
            exact = apply_gauge(S, G) == S2
            rank = S2.poincare_rank(r.point) if S2.is_singular(r.point) else 0
            return {"point": point_to_json(r.point), "rank_before": r.poincare_rank, "rank_after": rank,
                    "minimal_rank": r.minimal_rank, "gauge": matrix_to_json(G.gamma), "gauge_exact": exact,
                    "ok": exact and rank == r.minimal_rank}
        res = guard(f"local_analysis.moser[{point_str(r.point)}]", run)
        if res is not None:
            moser.append(res)
    report["moser"] = moser
    props["local_analysis.moser_minimal"] = all(m["ok"] for m in moser) and len(moser) == len(points)

    katz = {r.point: r.katz_rank for r in points}
    sc = guard("scalarization.scalarize_and_count", lambda: scalarize_and_count(S, options.trunc))
    if sc is not None:
        report["scalarization"] = scalarization_json(sc)
        props["scalarization.intermediate_bound"] = sc.bound_satisfied
        findings.extend(sc.findings)
        props["scalarization.katz_consistent"] = all(sc.katz_ranks[a] == katz.get(a) for a in katz)
        t2 = theorem2_pipeline(S, scalarization=sc)
        report["theorem2"] = {"K": t2.K, "n": t2.n, "p": t2.p, "bound": t2.bound, "m": t2.m,
                              "auxiliary_points": t2.auxiliary, "satisfied": t2.satisfied}
        props["scalarization.theorem2_bound"] = t2.satisfied

    if options.monodromy:
        from .numeric.monodromy import monodromy_rep, trivial_residual

        # Stokes growth makes the relation numerically meaningless at irregular points,
        # so it is asserted only when every point is regular singular
        regular = bool(points) and all(r.katz_rank == 0 for r in points)

        def mono():
            rep = monodromy_rep(S, tol=options.tol, precision=options.precision)
            out = {"base": complex_to_json(rep.base), "convention": rep.convention,
                   "points": ["inf" if is_infinity(a) else complex_to_json(a) for a in rep.points],
                   "relation_residual": rep.residual, "relation_asserted": regular,
                   "conditions": rep.conditions}
            ok = rep.residual <= options.relation_tol
            if regular:
                props["monodromy.product_relation"] = ok
            if not ok:
                worst = max(rep.conditions, default=1.0)
                findings.append(f"monodromy.product_relation: residual {rep.residual:.3e} exceeds "
                                f"{options.relation_tol:g} (largest condition number {worst:.3e})")
            return out
        m = guard("monodromy.product_relation", mono)
        if m is not None and sc is not None:
            E_sys = companion(sc.equation)
            residuals = []
            for cl in sc.apparent:
                locs = [INF] if cl.factor is None else list(cl.numeric)
                for z in locs:
                    res = guard("monodromy.apparent_trivial",
                                lambda z=z: trivial_residual(E_sys, z, options.tol, options.precision))
                    if res is not None:
                        residuals.append(res)
            m["apparent_residuals"] = residuals
            props["monodromy.apparent_trivial"] = all(x <= options.trivial_tol for x in residuals)
        if m is not None:
            report["monodromy"] = m

    if points:
        ranks = [r.minimal_rank for r in points]
        n, p = len(points), S.p
        R = sum(ranks)
        b = {"a1": point_to_json(points[0].point), "minimal_ranks": ranks,
             "theorem1": bounds.theorem1_value(p, n, ranks),
             "remark2": bounds.remark2_bound(bounds.BoundInputs(p, n, ranks)) if R > 0 else None,
             "theorem2": bounds.theorem2_value(p, n, [r.katz_rank for r in points]),
             "corollary1": [{"point": point_to_json(r.point),
                             "holds": bounds.corollary1_predicate(r.minimal_rank, r.poincare_rank, p)}
                            for r in points]}
        report["bounds"] = b

    report["properties"] = props
    report["findings"] = findings
    report["passed"] = all(props.values())
    return report
