"""Gauge transformations, admissible matrices and degree bookkeeping."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.matrix import RatMatrix, SingularMatrixError, cm_is_upper_triangular
from .algebra.points import as_point
from .algebra.ratfunc import order_at
from .algebra.scalars import ZERO, GaussianRational, as_scalar
from .system import LinearSystem

log = logging.getLogger(__name__)

HOLOMORPHIC = "holomorphic"
MEROMORPHIC = "meromorphic"


class GaugeTransform:
    """y' = Gamma(z) y with det Gamma not identically zero."""

    def __init__(self, gamma):
        if not isinstance(gamma, RatMatrix):
            gamma = RatMatrix(gamma)
        if gamma.shape[0] != gamma.shape[1]:
            raise ValueError("gauge matrix must be square")
        det = gamma.det()
        if det.is_zero():
            raise SingularMatrixError("gauge matrix is identically singular")
        self.gamma = gamma
        self.det = det

    @classmethod
    def identity(cls, p: int) -> "GaugeTransform":
        return cls(RatMatrix.identity(p))

    @property
    def p(self) -> int:
        return self.gamma.n

    def compose(self, first: "GaugeTransform") -> "GaugeTransform":
        """self after first: Gamma = Gamma_self * Gamma_first."""
        return GaugeTransform(self.gamma * first.gamma)

    def inverse(self) -> "GaugeTransform":
        return GaugeTransform(self.gamma.inverse())

    def __eq__(self, other) -> bool:
        return isinstance(other, GaugeTransform) and self.gamma == other.gamma

    def __hash__(self) -> int:
        return hash(self.gamma)

    def __repr__(self) -> str:
        return f"GaugeTransform({self.gamma!r})"


def apply_gauge(S: LinearSystem, G: GaugeTransform) -> LinearSystem:
    """B' = Gamma' Gamma^{-1} + Gamma B Gamma^{-1}."""
    if G.p != S.p:
        raise ValueError("gauge and system dimensions differ")
    gi = G.gamma.inverse()
    return LinearSystem(G.gamma.derivative() * gi + G.gamma * S.B * gi)


def classify_gauge(G: GaugeTransform, a) -> str:
    a = as_point(a)
    if G.gamma.order_at(a) >= 0 and order_at(G.det, a) == 0:
        return HOLOMORPHIC
    return MEROMORPHIC


@dataclass(frozen=True)
class SplittingType:
    k: tuple[int, ...]

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        if any(a < b for a, b in zip(k, k[1:])):
            raise ValueError(f"splitting type must be weakly decreasing: {k}")
        object.__setattr__(self, "k", k)

    @property
    def degree(self) -> int:
        return sum(self.k)


@dataclass(frozen=True)
class AdmissibleMatrix:
    """Integer diagonal Lambda with a block partition of (size, ramified) pairs."""

    diag: tuple[int, ...]
    blocks: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        d = tuple(self.diag)
        if any(not isinstance(x, int) or isinstance(x, bool) for x in d):
            raise TypeError("admissible matrices have integer diagonal entries")
        blocks = tuple((int(s), bool(r)) for s, r in self.blocks) or ((len(d), False),)
        if sum(s for s, _ in blocks) != len(d):
            raise ValueError("block partition does not match the dimension")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def zero(cls, p: int, blocks=()) -> "AdmissibleMatrix":
        return cls((0,) * p, tuple(blocks))

    @property
    def trace(self) -> int:
        return sum(self.diag)


def _block_ranges(blocks):
    start = 0
    for size, ramified in blocks:
        yield range(start, start + size), ramified
        start += size


def is_admissible(lam: AdmissibleMatrix, E, partition=None) -> bool:
    """(z-a)^Lambda E (z-a)^-Lambda holomorphic on unramified blocks, Lambda scalar on ramified ones."""
    blocks = tuple((int(s), bool(r)) for s, r in partition) if partition is not None else lam.blocks
    p = len(lam.diag)
    if sum(s for s, _ in blocks) != p or len(E) != p:
        raise ValueError("partition mismatch between Lambda and E")
    if partition is not None and lam.blocks != ((p, False),) and lam.blocks != blocks:
        raise ValueError("partition mismatch between Lambda and E")
    E = [[as_scalar(x) for x in row] for row in E]
    for idx, ramified in _block_ranges(blocks):
        vals = [lam.diag[i] for i in idx]
        if ramified:
            if len(set(vals)) > 1:
                return False
            continue
        for k in idx:
            for l in idx:
                if k != l and E[k][l] and lam.diag[k] < lam.diag[l]:
                    return False
    return True


def _trace(E) -> GaussianRational:
    total = ZERO
    for i, row in enumerate(E):
        total = total + as_scalar(row[i])
    return total


def connection_degree(lams: Sequence[AdmissibleMatrix], Es: Sequence) -> GaussianRational:
    """Sum over points of tr(Lambda_i + E_i)."""
    if len(lams) != len(Es):
        raise ValueError("one (Lambda, E) pair per singular point is required")
    total = ZERO
    for lam, E in zip(lams, Es):
        if not is_admissible(lam, E):
            raise ValueError(f"Lambda = {lam.diag} is not admissible for E")
        total = total + lam.trace + _trace(E)
    return total


def splitting_degree_check(k: SplittingType, deg) -> bool:
    deg = as_scalar(deg)
    if not deg.is_integer():
        log.info("degree %s is not an integer; no splitting type can match", deg)
        return False
    return Fraction(k.degree) == deg.re


def formal_exponents(lam: AdmissibleMatrix, E, partition=None) -> list[GaussianRational]:
    """beta_j = lambda_j + rho_j, pairing Lambda's diagonal with the eigenvalues of triangular E."""
    E = [[as_scalar(x) for x in row] for row in E]
    blocks = tuple(partition) if partition is not None else lam.blocks
    if len(E) != len(lam.diag) or sum(s for s, _ in blocks) != len(E):
        raise ValueError("partition mismatch between Lambda and E")
    if not cm_is_upper_triangular(E):
        raise ValueError("E must be upper triangular")
    return [E[i][i] + lam.diag[i] for i in range(len(E))]
