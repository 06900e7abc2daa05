"""Canonical resolution of double covers of surfaces.

The branch curve is resolved by point blow-ups.  After blowing up a point
of multiplicity ``m`` the new branch is the strict transform plus the
exceptional curve when ``m`` is odd (the total transform minus
``2*floor(m/2)`` times the exceptional curve).  The loop stops when the
branch is smooth.

Each singular point is worked on in local coordinates ``(x, t)`` centred at
the point, ``t`` being the base coordinate, so the fibre through the point
is ``t = 0``.  Alongside the branch the engine carries local equations of
the curves whose configuration we want to follow: the fibre line ``L`` and
every exceptional curve ``E<j>``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import upoly
from .poly import (
    AffinePoint,
    BiPolynomial,
    chart_change,
    format_pair,
    normalize_base_point,
    rational_singular_points,
)
from .qfield import format_number

DEFAULT_MAX_STEPS = 64


class ResolutionError(RuntimeError):
    pass


class NonRationalCenterError(ResolutionError):
    pass


def even_divisor_check(bidegree: Sequence[int]) -> bool:
    """A class (a, b) on P^1 x P^1 is divisible by 2 iff a and b are even."""
    a, b = bidegree
    return a % 2 == 0 and b % 2 == 0


def step_invariant_delta(m: int) -> tuple[int, int]:
    """(delta chi, delta K^2) of one canonical-resolution step at a point of multiplicity m."""
    if m < 2:
        raise ValueError("only points of multiplicity >= 2 are blown up")
    k = m // 2
    return -k * (k - 1) // 2, -2 * (k - 1) ** 2


@dataclass(frozen=True)
class LocalTemplate:
    """A local branch equation at the origin, standing for ``copies`` identical points.

    The local fibre through the origin is ``t = 0``.
    """

    branch: BiPolynomial
    copies: int = 1
    base_point: tuple = (Fraction(0), Fraction(1))

    def __post_init__(self):
        if self.copies < 1:
            raise ValueError("replication count must be >= 1")
        object.__setattr__(self, "branch", self.branch.as_local())
        object.__setattr__(self, "base_point", normalize_base_point(self.base_point))


@dataclass(frozen=True)
class Center:
    root: int
    parent: int | None = None
    chart: str | None = None
    coordinate: object = None
    point: AffinePoint | None = None

    def label(self) -> str:
        if self.parent is None:
            return str(self.point) if self.point is not None else "origin"
        if self.chart == "A":
            return f"E{self.parent}@{format_number(self.coordinate)}"
        return f"E{self.parent}@inf"


@dataclass(frozen=True)
class BlowupStep:
    exceptional: int
    center: Center
    multiplicity: int
    through: tuple[str, ...]
    base_point: tuple
    local_branch: BiPolynomial

    @property
    def parity(self) -> int:
        return self.multiplicity % 2

    @property
    def name(self) -> str:
        return f"E{self.exceptional}"

    @property
    def in_branch(self) -> bool:
        return self.parity == 1

    @property
    def branch_drop(self) -> int:
        return 2 * (self.multiplicity // 2)


@dataclass(frozen=True)
class RootInfo:
    label: str
    base_point: tuple
    fibre_in_branch: bool
    point: AffinePoint | None = None


@dataclass(frozen=True)
class ExceptionalRecord:
    self_int: int
    in_branch: bool
    multiplicity: int


@dataclass(frozen=True)
class ResolutionTree:
    steps: tuple[BlowupStep, ...]
    roots: tuple[RootInfo, ...]
    bidegree: tuple | None = None
    copies: int = 1
    smooth_points: tuple = field(default=(), compare=False)

    def is_empty(self) -> bool:
        return not self.steps

    def multiplicities(self, root: int | None = None) -> list[int]:
        return [s.multiplicity for s in self.steps if root is None or s.center.root == root]

    def step(self, j: int) -> BlowupStep:
        for s in self.steps:
            if s.exceptional == j:
                return s
        raise KeyError(j)

    def exceptional_ledger(self) -> dict[int, ExceptionalRecord]:
        out = {}
        for s in self.steps:
            later = sum(1 for t in self.steps if s.name in t.through)
            out[s.exceptional] = ExceptionalRecord(-1 - later, s.in_branch, s.multiplicity)
        return out

    def base_points(self) -> list[tuple]:
        seen = []
        for r in self.roots:
            if r.base_point not in seen:
                seen.append(r.base_point)
        return seen

    def invariant_delta(self) -> tuple[int, int]:
        """Summed (delta chi, delta K^2) of all steps, counting template copies."""
        dchi = dk2 = 0
        for s in self.steps:
            a, b = step_invariant_delta(s.multiplicity)
            dchi += a
            dk2 += b
        return dchi * self.copies, dk2 * self.copies


# ---------------------------------------------------------------------------
# engine


def _x() -> BiPolynomial:
    return BiPolynomial.fibre_var("local")


def _t() -> BiPolynomial:
    return BiPolynomial.base_var("local")


@dataclass
class _Patch:
    root: int
    center: Center
    branch: BiPolynomial
    curves: dict


def _field(patch: _Patch) -> int | None:
    f = patch.branch.field()
    if f is not None:
        return f
    for g in patch.curves.values():
        f = g.field()
        if f is not None:
            return f
    return None


def _localize(patch: _Patch, u0, v0, center: Center) -> _Patch:
    branch = patch.branch.translate(u0, v0) if (u0, v0) != (0, 0) else patch.branch
    curves = {}
    for name, g in patch.curves.items():
        gg = g.translate(u0, v0) if (u0, v0) != (0, 0) else g
        if gg.evaluate(0, 0) == 0:
            curves[name] = gg
    return _Patch(patch.root, center, branch, curves)


def _blow_up(patch: _Patch, m: int, j: int):
    """Both charts of the blow-up of the origin; yields (chart, strict, branch, curves)."""
    x, t = _x(), _t()
    charts = (("A", x, x * t, 0, x), ("B", x * t, t, 1, t))
    for name, us, vs, idx, exc in charts:
        total = patch.branch.substitute(us, vs)
        strict = total.divide_by_power(idx, m)
        branch = strict * exc if m % 2 else strict
        curves = {}
        for cname, g in patch.curves.items():
            if g.evaluate(0, 0) != 0:
                continue
            if g.order() != 1:
                raise ResolutionError(f"tracked curve {cname} is singular at a center")
            curves[cname] = g.substitute(us, vs).divide_by_power(idx, 1)
        curves[f"E{j}"] = exc
        yield name, strict, branch, curves


def _next_centers(patch: _Patch, m: int, j: int) -> list[_Patch]:
    out = []
    for chart, strict, branch, curves in _blow_up(patch, m, j):
        child = _Patch(patch.root, patch.center, branch, curves)
        if chart == "A":
            h = strict.restrict(0, 0)
            if not h:
                raise ResolutionError("strict transform contains the exceptional curve")
            roots, _field_used, unresolved = upoly.roots_in_field(h, _field(patch))
            if unresolved and (m % 2 == 1 or not upoly.is_squarefree(h)):
                raise NonRationalCenterError(
                    f"blow-up E{j} needs centers outside Q and quadratic fields; "
                    "resolve with a local template instead"
                )
            for w0, _ in roots:
                cand = _localize(child, Fraction(0), w0, Center(patch.root, j, "A", w0))
                if cand.branch.order() >= 2:
                    out.append(cand)
        else:
            if branch.evaluate(0, 0) == 0:
                cand = _localize(child, Fraction(0), Fraction(0), Center(patch.root, j, "B"))
                if cand.branch.order() >= 2:
                    out.append(cand)
    return out


def _root_patches(branch, centers):
    if isinstance(branch, LocalTemplate) or isinstance(centers, LocalTemplate):
        tpl = branch if isinstance(branch, LocalTemplate) else centers
        local = tpl.branch
        info = RootInfo("template", tpl.base_point, _divisible_by_t(local))
        return [(info, local)], tpl.copies, None
    if centers == "auto" or centers is None:
        locus = rational_singular_points(branch)
        if not locus.complete:
            raise NonRationalCenterError(
                "the branch may have singular points with non-rational coordinates; "
                "pass explicit centers or a local template"
            )
        points = list(locus.points)
    else:
        points = [
            p if isinstance(p, AffinePoint) else AffinePoint(branch.chart, tuple(p))
            for p in centers
        ]
        points.sort(key=AffinePoint.sort_key)
    roots = []
    for p in points:
        if p.chart != branch.chart:
            if branch.bidegree is None:
                p = p.in_chart(branch.chart)
                fc = branch
            else:
                fc = chart_change(branch, p.chart)
        else:
            fc = branch
        local = fc.translate(*p.coords).as_local()
        roots.append((RootInfo(str(p), p.base_point, _divisible_by_t(local), p), local))
    return roots, 1, branch.bidegree


def _divisible_by_t(f: BiPolynomial) -> bool:
    return not f.is_zero() and all(j >= 1 for _, j in f.terms)


def canonical_resolve(branch, centers="auto", *, max_steps: int = DEFAULT_MAX_STEPS) -> ResolutionTree:
    """Resolve the branch singularities and record every blow-up.

    ``centers`` is ``"auto"`` (all rational singular points, which must be
    all singular points), an explicit list of points, or a
    :class:`LocalTemplate` (``branch`` may then be omitted or be the
    template itself).
    """
    roots, copies, bidegree = _root_patches(branch, centers)
    infos = [info for info, _ in roots]
    steps: list[BlowupStep] = []
    smooth = []
    # points are resolved one at a time; infinitely near centers breadth first
    for r, (info, local) in enumerate(roots):
        queue: deque[_Patch] = deque([_Patch(r, Center(r, point=info.point), local, {"L": _t()})])
        while queue:
            patch = queue.popleft()
            m = patch.branch.order()
            if m < 2:
                smooth.append((patch.center, patch.branch))
                continue
            if len(steps) >= max_steps:
                raise ResolutionError(f"iteration cap of {max_steps} blow-ups exceeded")
            j = len(steps) + 1
            through = tuple(sorted(n for n, g in patch.curves.items() if g.evaluate(0, 0) == 0))
            steps.append(BlowupStep(j, patch.center, m, through, info.base_point, patch.branch))
            queue.extend(_next_centers(patch, m, j))
    return ResolutionTree(tuple(steps), tuple(infos), bidegree, copies, tuple(smooth))


def describe_step(step: BlowupStep) -> str:
    return (
        f"E{step.exceptional}: center {step.center.label()} over {format_pair(step.base_point)}, "
        f"m={step.multiplicity}, parity={step.parity}"
    )
