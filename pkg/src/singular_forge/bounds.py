"""Closed-form bounds on Poincare ranks, splitting types and apparent counts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gauge import SplittingType


class PreconditionError(ValueError):
    pass


def _ceil(x) -> int:
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class BoundInputs:
    p: int
    n: int
    r: tuple = ()
    K: tuple = ()
    M: int = 1
    splitting: SplittingType | None = None
    degree: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "K", tuple(Fraction(x) for x in self.K))
        if self.p < 1:
            raise PreconditionError("p must be positive")

    @property
    def R(self) -> int:
        return sum(self.r)

    @property
    def K_total(self) -> int:
        return sum(_ceil(k) for k in self.K)


def theorem1_value(p: int, n: int, r: Sequence[int]) -> int:
    r = list(r)
    if len(r) != n:
        raise PreconditionError(f"expected {n} ranks, got {len(r)}")
    return r[0] + (p - 1) * (n + sum(r) - 1)


def theorem1_bound(inp: BoundInputs) -> int:
    return theorem1_value(inp.p, inp.n, inp.r)


def remark2_bound(inp: BoundInputs) -> int:
    if len(inp.r) != inp.n:
        raise PreconditionError(f"expected {inp.n} ranks, got {len(inp.r)}")
    if inp.R <= 0:
        raise PreconditionError("requires an irregular singular point (R > 0)")
    return inp.r[0] + (inp.p - 1) * (inp.n + inp.R - 2)


def prop1_check(k: SplittingType, n: int, R: int, M: int) -> bool:
    if M < 1:
        raise PreconditionError("M must be at least 1")
    cap = (n + R) * M - 1
    return all(a - b <= cap for a, b in zip(k.k, k.k[1:]))


def formsO_rank_bound(r1: int, k: SplittingType) -> int:
    return r1 + k.k[0] - k.k[-1]


def theorem2_value(p: int, n: int, K: Sequence) -> int:
    if len(K) != n:
        raise PreconditionError(f"expected {n} Katz ranks, got {len(K)}")
    Ksum = sum(_ceil(k) for k in K)
    return (Ksum + n + 1) * p * (p - 1) // 2 + 1


def theorem2_bound(inp: BoundInputs) -> int:
    return theorem2_value(inp.p, inp.n, inp.K)


def intermediate_apparent_bound(p: int, n: int, R: int) -> int:
    return (R + n + 1) * p * (p - 1) // 2


def corollary1_predicate(r0: int, r: int, p: int) -> bool:
    if p < 1:
        raise PreconditionError("p must be positive")
    return Fraction(r0) <= Fraction(r, p)
