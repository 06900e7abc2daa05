"""Numerical invariants of double covers of P^1 x P^1 and their resolutions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import upoly
from .config import CurveConfiguration
from .poly import BiForm, BiPolynomial, chart_change, format_pair, normalize_base_point, parse_mpoly
from .resolution import ResolutionTree, even_divisor_check, step_invariant_delta


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class LedgerEntry:
    label: str
    chi: int
    k2: int


@dataclass(frozen=True)
class SurfaceInvariants:
    chi: int
    k2: int
    ledger: tuple = field(default=(), compare=False)

    @property
    def c2(self) -> int:
        return 12 * self.chi - self.k2

    @property
    def euler_number(self) -> int:
        return self.c2

    def shifted(self, label: str, dchi: int, dk2: int) -> "SurfaceInvariants":
        return SurfaceInvariants(
            self.chi + dchi, self.k2 + dk2, self.ledger + (LedgerEntry(label, dchi, dk2),)
        )

    def to_dict(self) -> dict:
        return {
            "chi": self.chi,
            "K2": self.k2,
            "c2": self.c2,
            "ledger": [{"step": e.label, "chi": e.chi, "K2": e.k2} for e in self.ledger],
        }


def _pair(p, q) -> Fraction:
    """Intersection form on P^1 x P^1: (a, b).(a', b') = a b' + b a'."""
    return p[0] * q[1] + p[1] * q[0]


def smooth_double_cover_invariants(bidegree: Sequence[int]) -> SurfaceInvariants:
    """chi, K^2 of the double cover branched along a smooth curve of class (a, b).

    With L = R/2 and K = (-2, -2): chi = 2 + L.(L + K)/2 and K^2 = 2 (K + L)^2.
    """
    if not even_divisor_check(bidegree):
        raise InvariantError(f"bidegree {tuple(bidegree)} is not divisible by 2")
    a, b = bidegree
    L = (Fraction(a, 2), Fraction(b, 2))
    K = (Fraction(-2), Fraction(-2))
    LK = (L[0] + K[0], L[1] + K[1])
    chi = 2 + _pair(L, LK) / 2
    k2 = 2 * _pair(LK, LK)
    if chi.denominator != 1 or k2.denominator != 1:
        raise InvariantError("non-integral invariants")
    return SurfaceInvariants(int(chi), int(k2), (LedgerEntry(f"smooth cover of class {tuple(bidegree)}", int(chi), int(k2)),))


def euler_number_from_branch(bidegree: Sequence[int]) -> int:
    """e(S) = 2 e(P^1 x P^1) - e(R) with e(R) = -(K + R).R, independent of chi and K^2."""
    a, b = bidegree
    KR = (a - 2, b - 2)
    return 8 + _pair(KR, (a, b))


def resolved_invariants(raw: SurfaceInvariants, trees: Iterable[ResolutionTree], contractions: int = 0,
                        replication: int = 1) -> SurfaceInvariants:
    """Apply the per-step corrections of each blow-up and +1 K^2 per contracted (-1)-curve.

    ``replication`` repeats every correction (used after a base change that
    copies each singular fibre).
    """
    out = raw
    for tree in trees:
        for step in tree.steps:
            dchi, dk2 = step_invariant_delta(step.multiplicity)
            n = tree.copies * replication
            label = f"E{step.exceptional} (m={step.multiplicity})"
            if n > 1:
                label += f" x{n}"
            out = out.shifted(label, dchi * n, dk2 * n)
    total = contractions * replication
    if total:
        out = out.shifted(f"contract {total} (-1)-curve(s)", 0, total)
    return out


def euler_number_from_fibres(base_genus: int, fibre_genus: int, fibres: Iterable[CurveConfiguration]) -> int:
    """e(S) = e(B) e(F) + sum (e(F_b) - e(F)) over the singular fibres.

    Each fibre is a normal-crossing configuration of smooth components, so
    e(F_b) = sum (2 - 2 g(C_i)) - (number of crossing points).
    """
    eb = 2 - 2 * base_genus
    ef = 2 - 2 * fibre_genus
    total = eb * ef
    for cfg in fibres:
        e = sum(2 - 2 * c.pa for c in cfg.components) - sum(cfg.intersections.values())
        total += e - ef
    return total


def generic_fibre_genus(branch: BiPolynomial, direction: str = "base", samples: int = 12) -> int:
    """Genus of the double cover of a general ruling line.

    ``direction="base"`` fixes the base coordinate (fibres of the projection
    to [t:s]); ``"fibre"`` fixes the fibre coordinate instead.  The cover of
    the line is branched at the points where the branch meets it with odd
    multiplicity, and a sample of rational lines is taken to avoid special
    ones.
    """
    if branch.bidegree is None:
        raise InvariantError("the generic fibre genus needs the bidegree of the branch")
    f = chart_change(branch, "xt")
    a, b = f.bidegree
    if direction == "base":
        fixed, full = 1, b
    elif direction == "fibre":
        fixed, full = 0, a
    else:
        raise ValueError("direction must be 'base' or 'fibre'")
    best = None
    for k in range(samples):
        value = Fraction(k + 2) if k % 2 == 0 else Fraction(-(k + 3), 2)
        p = f.restrict(fixed, value)
        if not p:
            continue
        points = sum(len(q) - 1 for q, mult in upoly.factor_rational(p) if mult % 2)
        if (full - upoly.degree(p)) % 2:
            points += 1
        if best is None or points > best:
            best = points
    if best is None:
        raise InvariantError("the branch contains every sampled line")
    if best % 2:
        raise InvariantError(f"odd number {best} of branch points on a general line")
    return max(best // 2 - 1, 0) if best else 0


# ---------------------------------------------------------------------------
# base change


class BaseChangeError(ValueError):
    pass


@dataclass(frozen=True)
class BaseChange:
    degree: int
    bidegree: tuple
    ramification: tuple
    raw: SurfaceInvariants
    resolved: SurfaceInvariants | None
    replication: int

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "bidegree": list(self.bidegree),
            "ramification_points": [format_pair(p) for p in self.ramification],
            "raw": self.raw.to_dict(),
            "resolved": None if self.resolved is None else self.resolved.to_dict(),
        }


def default_ramification(avoid: Iterable) -> tuple:
    avoid = {normalize_base_point(p) for p in avoid}
    chosen = []
    k = 1
    while len(chosen) < 2:
        p = normalize_base_point((k, 1))
        if p not in avoid:
            chosen.append(p)
        k += 1
    return tuple(chosen)


def base_change(bidegree: Sequence[int], n: int, *, trees: Iterable[ResolutionTree] | None = None,
                contractions: int = 0, singular_base_points: Iterable = (),
                ramification: Iterable | None = None) -> BaseChange:
    """Cyclic base change of degree n totally ramified over two base points.

    The two ramification points must carry smooth fibres, so every singular
    fibre is copied n times and the branch class becomes (n a, b).
    """
    if n < 1:
        raise BaseChangeError("base change degree must be >= 1")
    singular = [normalize_base_point(p) for p in singular_base_points]
    if ramification is None:
        ram = default_ramification(singular)
    else:
        ram = tuple(normalize_base_point(p) for p in ramification)
        if len(ram) != 2 or ram[0] == ram[1]:
            raise BaseChangeError("a cyclic cover of P^1 needs two distinct ramification points")
        for p in ram:
            if p in singular:
                raise BaseChangeError(f"ramification point {format_pair(p)} lies under a singular fibre")
    a, b = bidegree
    new = (n * a, b)
    raw = smooth_double_cover_invariants(new)
    resolved = None
    if trees is not None:
        resolved = resolved_invariants(raw, trees, contractions, replication=n)
    return BaseChange(n, new, ram if n > 1 else (), raw, resolved, n)


def pull_back_branch(form: BiForm, t_value: str | BiForm, s_value: str | BiForm) -> BiForm:
    """Substitute t, s by forms in the new base coordinates (also named t, s)."""
    tv = parse_mpoly(t_value) if isinstance(t_value, str) else t_value.poly
    sv = parse_mpoly(s_value) if isinstance(s_value, str) else s_value.poly
    return form.substitute_base(tv, sv)


# ---------------------------------------------------------------------------
# ampleness


@dataclass(frozen=True)
class Ampleness:
    ample: bool
    simply_connected: bool | None
    reason: str

    def to_dict(self) -> dict:
        return {"ample": self.ample, "simply_connected": self.simply_connected, "reason": self.reason}


def ampleness_flag(bidegree: Sequence[int], base_rational: bool = True) -> Ampleness:
    """Ampleness of the half-branch class L = (a/2, b/2) on P^1 x P^1.

    A double cover branched along an ample divisor of a simply connected
    surface is simply connected, which is concluded only for a rational base.
    """
    a, b = bidegree
    ample = a > 0 and b > 0
    if ample and base_rational:
        return Ampleness(True, True, f"(a, b) = ({a}, {b}) has both entries positive")
    if ample:
        return Ampleness(True, None, "ample, but the base is not simply connected")
    return Ampleness(False, None, f"(a, b) = ({a}, {b}) is not ample")
