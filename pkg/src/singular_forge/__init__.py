"""Exact analysis of linear ODE systems with irregular singular points."""

from .algebra import INF, GaussianRational, Poly, RatMatrix, RationalFunction
from .gauge import GaugeTransform, apply_gauge, classify_gauge
from .local import (
    classify_singularity,
    formal_data_unramified,
    katz_rank_system,
    minimal_poincare_rank,
    moser_reduce,
    singular_point_report,
)
from .scalarize import cyclic_vector, is_apparent, scalarize_and_count, theorem2_pipeline
from .system import LinearSystem, ScalarEquation, companion, poincare_rank, residue_trace_sum, singular_locus
from .verify import VerifyOptions, run_verification

__version__ = "0.1.0"

__all__ = [
    "INF",
    "GaugeTransform",
    "GaussianRational",
    "LinearSystem",
    "Poly",
    "RatMatrix",
    "RationalFunction",
    "ScalarEquation",
    "VerifyOptions",
    "apply_gauge",
    "classify_gauge",
    "classify_singularity",
    "companion",
    "cyclic_vector",
    "formal_data_unramified",
    "is_apparent",
    "katz_rank_system",
    "minimal_poincare_rank",
    "moser_reduce",
    "poincare_rank",
    "residue_trace_sum",
    "run_verification",
    "scalarize_and_count",
    "singular_locus",
    "singular_point_report",
    "theorem2_pipeline",
]
