"""Fibre configurations through a canonical resolution and its double cover.

Downstairs, the fibre over a base point is the line ``L`` plus the
exceptional curves over it.  Classes are written in the basis ``F`` (fibre),
``G`` (a section ``x = const``) and ``e_j`` (total transforms of the
exceptional curves), with ``F.G = 1``, ``F^2 = G^2 = 0``, ``e_i.e_j = -delta``.
Strict transforms:

    L   = F   - sum(e_j : center on L)
    E_k = e_k - sum(e_j : center on E_k)
    R   = b G + a F - sum(2 floor(m_j / 2) e_j)

Upstairs each component either lies in the branch locus (pullback is twice
a curve isomorphic to it), is a double cover branched in ``r = C.R`` points,
or splits into two disjoint copies when ``r = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .config import (
    Component,
    ConfigurationError,
    CurveConfiguration,
    FibrePredicates,
    contract_minus_one,
    fibre_genus,
    fibre_predicates,
)
from .poly import format_pair, normalize_base_point
from .resolution import BlowupStep, ResolutionTree


class FibreError(ValueError):
    pass


@dataclass(frozen=True)
class CurveClass:
    """Coefficients of F, G and the e_j (keyed by component-style names)."""

    f: int = 0
    g: int = 0
    e: tuple = ()  # sorted (name, coefficient) pairs

    def coeffs(self) -> dict:
        return dict(self.e)

    def dot(self, other: "CurveClass") -> int:
        mine, theirs = self.coeffs(), other.coeffs()
        total = self.f * other.g + self.g * other.f
        for k, v in mine.items():
            total -= v * theirs.get(k, 0)
        return total

    def __str__(self):
        parts = []
        if self.f:
            parts.append(f"{self.f}F")
        if self.g:
            parts.append(f"{self.g}G")
        for k, v in self.e:
            if v:
                parts.append(f"{v}e{k[1:]}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _curve_class(f: int, g: int, e: dict) -> CurveClass:
    return CurveClass(f, g, tuple(sorted((k, v) for k, v in e.items() if v)))


@dataclass(frozen=True)
class _Blowup:
    """One blow-up over the tracked fibre, with names already made unique."""

    name: str
    multiplicity: int
    through: tuple


@dataclass(frozen=True)
class FibreSnapshot:
    after: str | None
    configuration: CurveConfiguration


@dataclass(frozen=True)
class FibreTrace:
    base_point: tuple
    blowups: tuple
    fibre_in_branch: bool
    snapshots: tuple
    classes: dict
    branch_class: CurveClass
    in_branch: dict

    @property
    def downstairs(self) -> CurveConfiguration:
        return self.snapshots[-1].configuration


def _collect_blowups(trees: Sequence[ResolutionTree], base_point) -> list[_Blowup]:
    out = []
    for tree in trees:
        steps = [s for s in tree.steps if s.base_point == base_point]
        for c in range(tree.copies):
            suffix = f"#{c + 1}" if tree.copies > 1 else ""

            def rename(n: str) -> str:
                return n if n == "L" else n + suffix

            for s in steps:
                out.append(_Blowup(rename(s.name), s.multiplicity, tuple(rename(n) for n in s.through)))
    return out


def _fibre_multiplicities(blowups: Sequence[_Blowup]) -> dict:
    mult = {"L": 1}
    for b in blowups:
        mult[b.name] = sum(mult[n] for n in b.through)
    return mult


def _classes(blowups: Sequence[_Blowup]) -> dict:
    classes = {"L": (1, 0, {})}
    for b in blowups:
        classes[b.name] = (0, 0, {b.name: 1})
    for b in blowups:
        for n in b.through:
            f, g, e = classes[n]
            e = dict(e)
            e[b.name] = e.get(b.name, 0) - 1
            classes[n] = (f, g, e)
    return {n: _curve_class(*v) for n, v in classes.items()}


def _combinatorial_meet(blowups: Sequence[_Blowup], i: str, j: str) -> int:
    """Intersection of two distinct tracked curves by following centers.

    Tracked curves are smooth and cross transversally, so an exceptional
    curve meets every curve through its center once, until a later center
    sits on both.
    """
    order = {b.name: k for k, b in enumerate(blowups)}
    order["L"] = -1
    if order[i] > order[j]:
        i, j = j, i
    if j == "L":
        return 0
    born = blowups[order[j]]
    if i not in born.through:
        return 0
    for later in blowups[order[j] + 1:]:
        if i in later.through and j in later.through:
            return 0
    return 1


def _configuration(names: Sequence[str], mult: dict, classes: dict) -> CurveConfiguration:
    comps = tuple(Component(n, mult[n], 0, classes[n].dot(classes[n])) for n in names)
    inter = {}
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            v = classes[names[a]].dot(classes[names[b]])
            if v < 0:
                raise FibreError(f"negative intersection between {names[a]} and {names[b]}")
            if v:
                inter[(names[a], names[b])] = v
    return CurveConfiguration(comps, inter)


def track_fibre(trees: ResolutionTree | Sequence[ResolutionTree], base_point, *,
                fibre_degree: int | None = None, base_degree: int = 0,
                fibre_in_branch: bool | None = None) -> FibreTrace:
    """Follow the fibre over ``base_point`` through every blow-up above it.

    ``fibre_degree`` is the degree ``b`` of the branch in the fibre variable
    (taken from the trees when they know their bidegree).
    """
    if isinstance(trees, ResolutionTree):
        trees = [trees]
    trees = list(trees)
    bp = normalize_base_point(base_point)
    blowups = _collect_blowups(trees, bp)
    if fibre_degree is None:
        for t in trees:
            if t.bidegree is not None:
                fibre_degree = t.bidegree[1]
                base_degree = t.bidegree[0]
                break
    if fibre_degree is None:
        raise FibreError("the fibre degree of the branch is needed to compute ramification")
    if fibre_in_branch is None:
        flags = {r.fibre_in_branch for t in trees for r in t.roots if r.base_point == bp}
        if len(flags) > 1:
            raise FibreError("inconsistent fibre membership across singular points")
        # with no singular point of the branch above it, a fibre in the branch
        # would be a connected component of it, impossible unless b = 0
        fibre_in_branch = flags.pop() if flags else False

    mult = _fibre_multiplicities(blowups)
    in_branch = {"L": fibre_in_branch}
    for b in blowups:
        in_branch[b.name] = b.multiplicity % 2 == 1

    snapshots = []
    names = ["L"]
    snapshots.append(FibreSnapshot(None, _configuration(names, mult, _classes([]))))
    for k, b in enumerate(blowups):
        names.append(b.name)
        snapshots.append(FibreSnapshot(b.name, _configuration(names, mult, _classes(blowups[: k + 1]))))
    classes = _classes(blowups)
    drop = {b.name: -2 * (b.multiplicity // 2) for b in blowups}
    branch_class = _curve_class(base_degree, fibre_degree, drop)
    return FibreTrace(bp, tuple(blowups), fibre_in_branch, tuple(snapshots), classes, branch_class, in_branch)


def combinatorial_intersections(trace: FibreTrace) -> dict:
    """The same intersection numbers as the class pairing, by a second route."""
    names = trace.downstairs.ids
    out = {}
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            v = _combinatorial_meet(trace.blowups, names[a], names[b])
            if v:
                out[tuple(sorted((names[a], names[b])))] = v
    return out


# ---------------------------------------------------------------------------
# the double cover


@dataclass(frozen=True)
class LiftedCurve:
    source: str
    kind: str  # "branch", "cover" or "split"
    ramification: int


@dataclass(frozen=True)
class LiftedFibre:
    configuration: CurveConfiguration
    lifts: tuple


def ramification(trace: FibreTrace, name: str) -> int:
    """Number of branch points on a component outside the branch locus."""
    return trace.classes[name].dot(trace.branch_class)


def lift_to_double_cover(trace: FibreTrace) -> LiftedFibre:
    down = trace.downstairs
    comps: list[Component] = []
    lifts = []
    images: dict[str, list[str]] = {}
    weight: dict[str, int] = {}
    for c in down.components:
        if trace.in_branch[c.id]:
            if c.self_int % 2:
                raise FibreError(f"branch component {c.id} has odd self-intersection {c.self_int}")
            new = f"{c.id}'"
            comps.append(Component(new, 2 * c.mult, c.pa, c.self_int // 2))
            images[c.id] = [new]
            weight[c.id] = 2
            lifts.append(LiftedCurve(c.id, "branch", 0))
            continue
        r = ramification(trace, c.id)
        if r < 0 or r % 2:
            raise FibreError(f"component {c.id} meets the branch in {r} points")
        if r > 0:
            new = f"{c.id}'"
            comps.append(Component(new, c.mult, 2 * c.pa - 1 + r // 2, 2 * c.self_int))
            images[c.id] = [new]
            weight[c.id] = 1
            lifts.append(LiftedCurve(c.id, "cover", r))
        else:
            if c.pa:
                raise FibreError(f"unramified cover of the non-rational component {c.id}")
            pair = [f"{c.id}'a", f"{c.id}'b"]
            comps.extend(Component(n, c.mult, 0, c.self_int) for n in pair)
            images[c.id] = pair
            weight[c.id] = 2
            lifts.append(LiftedCurve(c.id, "split", 0))

    # consistent labelling of split copies: 2-colour each connected piece
    split = [c.id for c in down.components if len(images[c.id]) == 2]
    side: dict[str, int] = {}
    for start in split:
        if start in side:
            continue
        side[start] = 0
        stack = [start]
        seen_edges = set()
        while stack:
            cur = stack.pop()
            for nb in down.neighbours(cur):
                if nb not in split:
                    continue
                edge = tuple(sorted((cur, nb)))
                if nb in side:
                    if edge not in seen_edges:
                        raise FibreError("split components form a cycle; labelling is ambiguous")
                    continue
                seen_edges.add(edge)
                side[nb] = side[cur]
                stack.append(nb)

    inter = {}
    ids = down.ids
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            i, j = ids[a], ids[b]
            v = down.meet(i, j)
            if not v:
                continue
            if len(images[i]) == 2 and len(images[j]) == 2:
                for k in (0, 1):
                    inter[(images[i][k], images[j][k])] = v
                continue
            share = Fraction(2 * v, weight[i] * weight[j])
            if share.denominator != 1:
                raise FibreError(f"non-integral upstairs intersection between {i} and {j}")
            for ii in images[i]:
                for jj in images[j]:
                    inter[(ii, jj)] = int(share)
    cfg = CurveConfiguration(tuple(comps), inter)
    for c in cfg.components:
        if cfg.fibre_dot(c.id) != 0:
            raise FibreError(f"lifted fibre fails F.C = 0 on {c.id}")
    return LiftedFibre(cfg, tuple(lifts))


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class FibreReport:
    base_point: tuple
    trace: FibreTrace
    lifted: LiftedFibre
    contracted: CurveConfiguration
    contractions: int
    genus: int
    predicates: FibrePredicates
    multiplicities: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "base_point": format_pair(self.base_point),
            "downstairs": self.trace.downstairs.to_dict(),
            "upstairs": self.lifted.configuration.to_dict(),
            "contracted": self.contracted.to_dict(),
            "contractions": self.contractions,
            "genus": self.genus,
            "predicates": self.predicates.to_dict(),
            "blowup_multiplicities": list(self.multiplicities),
            "classes": {k: str(v) for k, v in sorted(self.trace.classes.items())},
            "lifts": [
                {"component": l.source, "kind": l.kind, "branch_points": l.ramification}
                for l in self.lifted.lifts
            ],
        }


def assemble_fibre_report(trace: FibreTrace) -> FibreReport:
    lifted = lift_to_double_cover(trace)
    contracted, count = contract_minus_one(lifted.configuration)
    genus = fibre_genus(contracted)
    if genus != fibre_genus(lifted.configuration):
        raise ConfigurationError("contraction changed the fibre genus")
    return FibreReport(
        trace.base_point, trace, lifted, contracted, count, genus,
        fibre_predicates(contracted), tuple(b.multiplicity for b in trace.blowups),
    )


def fibre_report(trees, base_point, **kwargs) -> FibreReport:
    return assemble_fibre_report(track_fibre(trees, base_point, **kwargs))
