"""Points of the Riemann sphere: Gaussian rationals plus the point at infinity."""

from __future__ import annotations

from .scalars import GaussianRational, as_scalar


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return "INF"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinity)

    def __hash__(self) -> int:
        return hash("singular_forge.INF")


INF = _Infinity()


def is_infinity(a) -> bool:
    return isinstance(a, _Infinity)


def as_point(a):
    """Coerce user input to a point: a GaussianRational or INF ("inf"/"oo" accepted)."""
    if isinstance(a, _Infinity):
        return a
    if isinstance(a, str) and a.strip().lower() in ("inf", "oo", "infinity"):
        return INF
    return as_scalar(a)


def point_key(a):
    """Sort key: finite points by (re, im), infinity last."""
    if isinstance(a, _Infinity):
        return (1, 0, 0)
    return (0, a.re, a.im)


def point_str(a) -> str:
    return "inf" if isinstance(a, _Infinity) else str(a)


def point_complex(a) -> complex:
    if isinstance(a, _Infinity):
        raise ValueError("infinity has no finite complex value")
    return complex(a)


__all__ = ["INF", "is_infinity", "as_point", "point_key", "point_str", "point_complex", "GaussianRational"]
