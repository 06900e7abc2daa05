"""End-to-end runs on the preset branch curves.

Stages: evenness, singular points, resolution, fibre tracking (with lift and
contraction), invariants, base change, orbifold classification, ampleness.
Results that disagree with published values are collected as paper notes;
limits of the engine (points it cannot reach) are collected separately.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field

from .config import multiple_fibre_constraints, winters_check
from .fibre import FibreReport, fibre_report
from .invariants import (
    ampleness_flag,
    base_change,
    generic_fibre_genus,
    resolved_invariants,
    smooth_double_cover_invariants,
)
from .orbifold import OrbifoldBase, classify
from .poly import fibre_singular_points, format_pair, normalize_base_point, rational_singular_points
from .presets import Preset, get_preset
from .report import SCHEMA_VERSION
from .resolution import NonRationalCenterError, ResolutionTree, canonical_resolve, even_divisor_check

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_PAPER_DISCREPANCY = 3


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str, exit_code: int = EXIT_PRECONDITION):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.message = message
        self.exit_code = exit_code


@contextmanager
def _stage(name: str):
    try:
        yield
    except PipelineError:
        raise
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        raise PipelineError(name, str(exc)) from exc


@dataclass(frozen=True)
class PresetRun:
    preset: str
    alpha: object = 1
    h: int = 2
    base_change: int = 1
    template_mode: bool = False
    corrected_type3: bool = False
    ramification: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "preset": self.preset,
            "alpha": str(self.alpha),
            "h": self.h,
            "base_change": self.base_change,
            "template_mode": self.template_mode,
            "corrected_type3": self.corrected_type3,
            "ramification": None if self.ramification is None else [str(p) for p in self.ramification],
        }


@dataclass
class PipelineResult:
    report: dict
    exit_code: int
    preset: Preset | None = None
    trees: list = field(default_factory=list)
    fibres: list = field(default_factory=list)
    locus: object = None


def _note(code: str, message: str) -> dict:
    return {"code": code, "message": message}


def _tree_dict(tree: ResolutionTree) -> dict:
    ledger = tree.exceptional_ledger()
    return {
        "base_points": [format_pair(bp) for bp in tree.base_points()],
        "roots": [r.label for r in tree.roots],
        "copies": tree.copies,
        "multiplicities": tree.multiplicities(),
        "steps": [
            {
                "exceptional": s.name,
                "center": s.center.label(),
                "multiplicity": s.multiplicity,
                "parity": s.parity,
                "through": list(s.through),
                "self_int": ledger[s.exceptional].self_int,
                "in_branch": s.in_branch,
                "local_branch": str(s.local_branch),
            }
            for s in tree.steps
        ],
    }


def _resolve(run: PresetRun, preset: Preset, f, locus, engine_notes: list):
    """Trees, tracked base points and whether every singular point was resolved."""
    if run.template_mode:
        if not preset.templates:
            raise PipelineError("resolution", f"preset {preset.name} has no local templates; run without template mode")
        trees = [canonical_resolve(t) for t in preset.templates]
        tracked = []
        for t in preset.templates:
            if t.base_point not in tracked:
                tracked.append(t.base_point)
        if not preset.templates_cover_all:
            engine_notes.append(_note(
                "templates-partial",
                "the local templates cover the tracked fibres only; global invariants are not computed",
            ))
        return trees, tracked, preset.templates_cover_all
    trees, tracked = [], []
    for bp in locus.base_points():
        fl = fibre_singular_points(f, bp, quadratic=True)
        if not fl.complete:
            engine_notes.append(_note(
                "fibre-untracked",
                f"singular points over {format_pair(bp)} need more than one quadratic field; fibre not tracked",
            ))
            continue
        try:
            trees.append(canonical_resolve(f, list(fl.points)))
        except NonRationalCenterError as exc:
            engine_notes.append(_note("fibre-untracked", f"over {format_pair(bp)}: {exc}"))
            continue
        tracked.append(bp)
    complete = locus.complete and len(tracked) == len(locus.base_points())
    if not locus.complete:
        engine_notes.append(_note(
            "locus-incomplete",
            "some singular points of the branch have non-rational coordinates; "
            "resolved invariants are not computed",
        ))
    return trees, tracked, complete


def run_pipeline(run: PresetRun) -> PipelineResult:
    if run.base_change < 1:
        raise PipelineError("base_change", "base change degree must be >= 1")
    with _stage("preset"):
        preset = get_preset(run.preset, alpha=run.alpha, h=run.h, corrected=run.corrected_type3)
    paper_notes: list = []
    engine_notes: list = []
    stages: dict = {}
    report = {
        "schema": SCHEMA_VERSION,
        "preset": preset.name,
        "run": run.to_dict(),
        "branch": str(preset.form),
        "stages": stages,
        "paper_notes": paper_notes,
        "engine_notes": engine_notes,
    }
    result = PipelineResult(report, EXIT_OK, preset)

    # evenness ---------------------------------------------------------------
    bideg = preset.bidegree
    even = even_divisor_check(bideg)
    stages["evenness"] = {"bidegree": list(bideg), "even": even}
    claimed = preset.claimed_bidegree
    if claimed is not None and tuple(claimed) != tuple(bideg):
        if even_divisor_check(claimed) and not even:
            paper_notes.append(_note(
                "parity",
                f"the branch has bidegree {tuple(bideg)}, not the published {tuple(claimed)}; "
                "it is not divisible by 2 so no double cover is branched along it",
            ))
        else:
            paper_notes.append(_note(
                "bidegree", f"the branch has bidegree {tuple(bideg)}, not the published {tuple(claimed)}"
            ))
    if not even:
        if paper_notes:
            report["stopped_after"] = "evenness"
            result.exit_code = EXIT_PAPER_DISCREPANCY
            return result
        raise PipelineError(
            "evenness",
            f"even_divisor_check failed: bidegree {tuple(bideg)} has an odd entry, "
            "so the branch class is not divisible by 2",
        )

    f = preset.branch()
    # singular points ----------------------------------------------------------
    with _stage("singular_points"):
        locus = rational_singular_points(f)
    result.locus = locus
    stages["singular_points"] = {
        "points": [str(p) for p in locus.points],
        "base_points": [format_pair(bp) for bp in locus.base_points()],
        "complete": locus.complete,
    }
    if preset.claimed_singular_fibres is not None and locus.complete:
        claimed_bps = {normalize_base_point(p) for p in preset.claimed_singular_fibres}
        found = set(locus.base_points())
        if claimed_bps != found:
            paper_notes.append(_note(
                "singular-fibres",
                "fibres containing branch singularities lie over "
                + ", ".join(format_pair(p) for p in locus.base_points())
                + "; published: "
                + ", ".join(format_pair(p) for p in sorted(claimed_bps)),
            ))

    with _stage("generic_genus"):
        generic = generic_fibre_genus(f)
    stages["generic_genus"] = {"genus": generic, "claimed": preset.claimed_genus}
    if preset.claimed_genus is not None and preset.claimed_genus != generic:
        paper_notes.append(_note(
            "genus-claim",
            f"published fibre genus {preset.claimed_genus}; the generic fibre is branched in "
            f"{2 * generic + 2} points and has genus {generic}",
        ))

    # resolution -----------------------------------------------------------------
    with _stage("resolution"):
        trees, tracked, complete = _resolve(run, preset, f, locus, engine_notes)
    result.trees = trees
    stages["resolution"] = {"template_mode": run.template_mode, "trees": [_tree_dict(t) for t in trees]}

    # fibres ---------------------------------------------------------------------
    a, b = bideg
    reports: list[FibreReport] = []
    fibre_dicts = []
    constraints = multiple_fibre_constraints(generic)
    with _stage("fibres"):
        for bp in tracked:
            over = [t for t in trees if bp in t.base_points()]
            rep = fibre_report(over, bp, fibre_degree=b, base_degree=a)
            reports.append(rep)
            d = rep.to_dict()
            d["winters"] = winters_check(rep.contracted).passed
            d["generic_genus"] = generic
            d["genus_matches_generic"] = rep.genus == generic
            d["multiplicity_admissible"] = constraints.admits(rep.predicates.gcd)
            fibre_dicts.append(d)
            if rep.genus != generic:
                engine_notes.append(_note(
                    "cross-oracle",
                    f"fibre over {format_pair(bp)} has genus {rep.genus}, generic fibre genus is {generic}",
                ))
    result.fibres = reports
    stages["fibres"] = fibre_dicts

    # invariants -------------------------------------------------------------------
    contractions = sum(r.contractions for r in reports)
    with _stage("invariants"):
        raw = smooth_double_cover_invariants(bideg)
        resolved = resolved_invariants(raw, trees, contractions) if complete else None
    minimal = None
    if resolved is not None:
        minimal = all(
            not (c.pa == 0 and c.self_int == -1) for r in reports for c in r.contracted.components
        )
    stages["invariants"] = {
        "raw": raw.to_dict(),
        "resolved": None if resolved is None else resolved.to_dict(),
        "contractions": contractions,
        "minimal": minimal,
    }

    # base change ------------------------------------------------------------------
    n = run.base_change
    with _stage("base_change"):
        bc = base_change(
            bideg, n,
            trees=trees if complete else None,
            contractions=contractions,
            singular_base_points=locus.base_points(),
            ramification=run.ramification,
        )
    stages["base_change"] = bc.to_dict()

    # orbifold -----------------------------------------------------------------------
    mults = [r.predicates.min for r in reports if r.predicates.min >= 2] * n
    with _stage("orbifold"):
        orb = classify(OrbifoldBase.from_fibres(0, mults))
    stages["orbifold"] = {
        "base_genus": 0,
        "multiplicities": sorted(mults),
        "degree": orb.degree,
        "classification": orb.classification,
        "exception_family": orb.exception_family,
    }
    if len(tracked) != len(locus.base_points()) or not locus.complete:
        engine_notes.append(_note(
            "orbifold-partial", "the orbifold string uses the tracked fibres only",
        ))

    # ampleness ------------------------------------------------------------------------
    amp = ampleness_flag(bc.bidegree)
    stages["ampleness"] = amp.to_dict()

    final = bc.resolved
    report["summary"] = {
        "bidegree": list(bc.bidegree),
        "fibre_genus": generic,
        "c_fibres": sum(1 for r in reports if r.predicates.is_c_fibre) * n,
        "multiple_fibres": sum(1 for r in reports if r.predicates.is_multiple) * n,
        "chi": None if final is None else final.chi,
        "K2": None if final is None else final.k2,
        "c2": None if final is None else final.c2,
        "raw": {"chi": bc.raw.chi, "K2": bc.raw.k2, "c2": bc.raw.c2},
        "minimal": minimal,
        "ample": amp.ample,
        "simply_connected": amp.simply_connected,
        "classification": orb.classification,
        "exception_family": orb.exception_family,
    }
    if paper_notes:
        result.exit_code = EXIT_PAPER_DISCREPANCY
    return result
