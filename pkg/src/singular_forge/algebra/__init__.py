"""Exact arithmetic over the Gaussian rationals."""

from .matrix import (
    RatMatrix,
    SingularMatrixError,
    cm_charpoly,
    cm_det,
    cm_eigenvalues,
    cm_inverse,
    cm_mul,
    cm_nullspace,
    cm_rank,
    identity,
)
from .points import INF, as_point, is_infinity, point_key, point_str
from .poly import Poly, poly_gcd, qi_roots, squarefree_part
from .ratfunc import RationalFunction, as_rf, laurent_expand, order_at
from .scalars import GaussianRational, UnsupportedScalarField, as_scalar
from .series import TruncatedLaurent


def mat_inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse; raises SingularMatrixError when det m vanishes identically."""
    return m.inverse()


__all__ = [
    "GaussianRational",
    "INF",
    "Poly",
    "RatMatrix",
    "RationalFunction",
    "SingularMatrixError",
    "TruncatedLaurent",
    "UnsupportedScalarField",
    "as_point",
    "as_rf",
    "as_scalar",
    "cm_charpoly",
    "cm_det",
    "cm_eigenvalues",
    "cm_inverse",
    "cm_mul",
    "cm_nullspace",
    "cm_rank",
    "identity",
    "is_infinity",
    "laurent_expand",
    "mat_inverse",
    "order_at",
    "point_key",
    "point_str",
    "poly_gcd",
    "qi_roots",
    "squarefree_part",
]
