"""Base orbifolds of fibrations: (B, sum (1 - 1/m(b)) b).

A fibration is of general type in Campana's sense when the orbifold
canonical degree ``2 g_B - 2 + sum (1 - 1/m)`` is positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable


class OrbifoldError(ValueError):
    pass


@dataclass(frozen=True)
class OrbifoldBase:
    base_genus: int
    mults: tuple[int, ...] = ()

    def __post_init__(self):
        if self.base_genus < 0:
            raise OrbifoldError("base genus must be nonnegative")
        mults = tuple(sorted(int(m) for m in self.mults))
        if any(m < 2 for m in mults):
            raise OrbifoldError("orbifold multiplicities must be >= 2 (omit points with m = 1)")
        object.__setattr__(self, "mults", mults)

    @classmethod
    def from_fibres(cls, base_genus: int, min_mults: Iterable[int]) -> "OrbifoldBase":
        """Drop the m(b) = 1 entries of a list of fibre minima."""
        return cls(base_genus, tuple(m for m in min_mults if m >= 2))


def delta_degree(base: OrbifoldBase) -> Fraction:
    """deg(K_B + Delta) = 2 g_B - 2 + sum (1 - 1/m)."""
    return Fraction(2 * base.base_genus - 2) + sum((1 - Fraction(1, m) for m in base.mults), Fraction(0))


class Classification(str, Enum):
    GENERAL_TYPE = "GeneralType"
    SPECIAL = "Special"


@dataclass(frozen=True)
class OrbifoldClass:
    classification: Classification
    degree: Fraction
    exception_family: str | None = None

    @property
    def general_type(self) -> bool:
        return self.classification is Classification.GENERAL_TYPE


def exception_family(mults: Iterable[int]) -> str | None:
    """Match a string of multiplicities on P^1 against the special list.

    The special strings are (n), (n,m), (2,2,n), (2,3,k) with k <= 6,
    (2,4,4), (3,3,3) and (2,2,2,2); the empty string (no multiple points)
    is reported as "()".
    """
    m = tuple(sorted(mults))
    if len(m) == 0:
        return "()"
    if len(m) == 1:
        return "(n)"
    if len(m) == 2:
        return "(n,m)"
    if len(m) == 3:
        if m[:2] == (2, 2):
            return "(2,2,n)"
        if m[:2] == (2, 3) and m[2] <= 6:
            return "(2,3,k)"
        if m == (2, 4, 4):
            return "(2,4,4)"
        if m == (3, 3, 3):
            return "(3,3,3)"
        return None
    if m == (2, 2, 2, 2):
        return "(2,2,2,2)"
    return None


def classify(base: OrbifoldBase) -> OrbifoldClass:
    deg = delta_degree(base)
    if deg > 0:
        return OrbifoldClass(Classification.GENERAL_TYPE, deg)
    family = exception_family(base.mults) if base.base_genus == 0 else None
    return OrbifoldClass(Classification.SPECIAL, deg, family)


def cover_genus(base: OrbifoldBase, d: int) -> int:
    """Genus of a degree-d cover ramified with index m_i over each orbifold point.

    Riemann-Hurwitz with uniform profile: 2g' - 2 = d * deg(K_B + Delta).
    """
    if d < 1:
        raise OrbifoldError("degree must be positive")
    for m in base.mults:
        if d % m:
            raise OrbifoldError(f"ramification index {m} does not divide the degree {d}")
    if base.base_genus == 0:
        k = len(base.mults)
        if k == 1 or (k == 2 and base.mults[0] != base.mults[1]):
            raise OrbifoldError(
                f"no cover of P^1 is ramified exactly with profile {base.mults}"
            )
    twice = d * delta_degree(base)
    if twice.denominator != 1 or twice.numerator % 2:
        raise OrbifoldError(f"2g' - 2 = {twice} is not an even integer")
    return 1 + twice.numerator // 2
