"""Command-line front end: ``fibsurf <subcommand> ...``.

JSON goes to stdout; a short text summary goes to stderr unless --quiet.
Exit codes: 0 success, 2 failed precondition, 3 computation succeeded but
disagrees with a published value (see "paper_notes").
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .config import (
    ConfigurationError,
    CurveConfiguration,
    contract_minus_one,
    derive_self_intersections,
    fibre_genus,
    fibre_predicates,
    multiple_fibre_constraints,
    winters_check,
)
from .fibre import fibre_report
from .orbifold import OrbifoldBase, OrbifoldError, classify
from .pipeline import (
    EXIT_OK,
    EXIT_PAPER_DISCREPANCY,
    EXIT_PRECONDITION,
    PipelineError,
    PresetRun,
    run_pipeline,
)
from .poly import BiForm, PolySyntaxError, normalize_base_point, parse_mpoly, parse_poly
from .report import SCHEMA_VERSION, emit_dot, emit_json
from .resolution import LocalTemplate, ResolutionError, canonical_resolve
from .search import SearchSpace, enumerate_configurations, two_component_search


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_PRECONDITION):
        super().__init__(message)
        self.code = code


def _ints(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise CliError(f"expected comma-separated integers, got {text!r}") from exc


def _say(args, text: str) -> None:
    if not args.quiet:
        print(text, file=sys.stderr)


def _load_config(path: str) -> CurveConfiguration:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise CliError(f"cannot read configuration: {exc}") from exc
    try:
        return CurveConfiguration.from_json(text)
    except (json.JSONDecodeError, ConfigurationError) as exc:
        raise CliError(f"invalid configuration: {exc}") from exc


def _doc(payload: dict) -> dict:
    payload = dict(payload)
    payload.setdefault("schema", SCHEMA_VERSION)
    return payload


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> tuple[dict | str, int]:
    try:
        base = OrbifoldBase(args.base_genus, tuple(_ints(args.mults)))
    except OrbifoldError as exc:
        raise CliError(str(exc)) from exc
    cls = classify(base)
    out = {"degree": cls.degree, "classification": cls.classification}
    if cls.exception_family is not None:
        out["exception_family"] = cls.exception_family
    _say(args, f"deg(K_B + Delta) = {cls.degree}: {cls.classification.value}")
    return _doc(out), EXIT_OK


def cmd_winters(args):
    cfg = _load_config(args.config)
    res = winters_check(cfg)
    out = {
        "passed": res.passed,
        "witnesses": {
            cid: {"sum": total, "mult": m, "divides": ok}
            for cid, (total, m, ok) in res.witnesses.items()
        },
    }
    if res.passed:
        out["configuration"] = derive_self_intersections(cfg).to_dict()
    _say(args, f"Winters condition {'passes' if res.passed else 'fails'}")
    return _doc(out), EXIT_OK if res.passed else EXIT_PRECONDITION


def cmd_genus(args):
    if args.config is None:
        if args.genus is None:
            raise CliError("give --config FILE or --genus G")
        mfc = multiple_fibre_constraints(args.genus)
        out = {"genus": args.genus, "all_multiplicities_admissible": mfc.all_admissible}
        if not mfc.all_admissible:
            out["admissible"] = {str(n): g for n, g in mfc.as_dict().items()}
        return _doc(out), EXIT_OK
    cfg = _load_config(args.config)
    try:
        cfg = derive_self_intersections(cfg)
        contractions = 0
        if args.contract:
            cfg, contractions = contract_minus_one(cfg)
        g = fibre_genus(cfg)
    except ConfigurationError as exc:
        raise CliError(str(exc)) from exc
    if args.emit_dot:
        return emit_dot(cfg), EXIT_OK
    out = {
        "genus": g,
        "predicates": fibre_predicates(cfg).to_dict(),
        "winters": winters_check(cfg).passed,
        "contractions": contractions,
        "configuration": cfg.to_dict(),
    }
    _say(args, f"genus {g}")
    return _doc(out), EXIT_OK


def _parse_point(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(f"--point expects 'a,b', got {text!r}")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except ValueError as exc:
        raise CliError(f"bad coordinate in {text!r}") from exc


def cmd_resolve(args):
    try:
        if args.template:
            branch = LocalTemplate(parse_poly(args.template, "local"), args.copies)
            tree = canonical_resolve(branch, max_steps=args.max_steps)
        else:
            if not args.branch:
                raise CliError("give --branch EXPR or --template EXPR")
            mp = parse_mpoly(args.branch)
            if mp.used_variables() & {"z", "s"}:
                f = BiForm(mp).dehomogenize(args.chart)
            elif args.point:
                f = parse_poly(args.branch, args.chart)
            else:
                raise CliError("an affine branch needs --point; give a bihomogeneous branch for automatic centers")
            centers = [_parse_point(p) for p in args.point] if args.point else "auto"
            tree = canonical_resolve(f, centers, max_steps=args.max_steps)
    except PolySyntaxError as exc:
        raise CliError(f"syntax error at position {exc.position}: {exc}") from exc
    except (ResolutionError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    if args.emit_dot:
        return emit_dot(tree), EXIT_OK
    from .pipeline import _tree_dict

    dchi, dk2 = tree.invariant_delta()
    out = {"tree": _tree_dict(tree), "delta": {"chi": dchi, "K2": dk2}}
    _say(args, f"{len(tree.steps)} blow-ups, multiplicities {tree.multiplicities()}")
    return _doc(out), EXIT_OK


def _preset_run(args) -> PresetRun:
    ram = None
    if getattr(args, "ramification", None):
        ram = tuple(args.ramification)
    return PresetRun(
        preset=args.preset,
        alpha=args.alpha,
        h=args.h,
        base_change=getattr(args, "base_change", 1),
        template_mode=getattr(args, "template_mode", False),
        corrected_type3=args.corrected_type3,
        ramification=ram,
    )


def _run(args):
    try:
        return run_pipeline(_preset_run(args))
    except PipelineError as exc:
        raise CliError(f"stage {exc.stage}: {exc.message}", exc.exit_code) from exc


def cmd_track(args):
    result = _run(args)
    report = result.report
    try:
        bp = normalize_base_point(args.point)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from exc
    if "stages" not in report or "fibres" not in report["stages"]:
        return _doc({"paper_notes": report["paper_notes"], "stopped_after": report.get("stopped_after")}), result.exit_code
    rep = next((r for r in result.fibres if r.base_point == bp), None)
    if rep is None:
        singular = set(result.locus.base_points()) if result.locus is not None else set()
        if bp in singular:
            raise CliError(f"the fibre over {args.point} could not be resolved by the engine")
        a, b = result.preset.bidegree
        rep = fibre_report([], bp, fibre_degree=b, base_degree=a)
    if args.emit_dot and not args.emit_json:
        return emit_dot(rep.contracted), result.exit_code
    out = {
        "preset": report["preset"],
        "fibre": rep.to_dict(),
        "winters": winters_check(rep.contracted).passed,
        "paper_notes": report["paper_notes"],
        "engine_notes": report["engine_notes"],
    }
    if args.emit_dot:
        out["dot"] = emit_dot(rep.contracted)
    p = rep.predicates
    _say(args, f"fibre over {args.point}: genus {rep.genus}, gcd {p.gcd}, min {p.min}, C-fibre {p.is_c_fibre}")
    return _doc(out), result.exit_code


def cmd_invariants(args):
    result = _run(args)
    report = result.report
    if "summary" not in report:
        return _doc({"paper_notes": report["paper_notes"], "stopped_after": report.get("stopped_after")}), result.exit_code
    s = report["summary"]
    out = {k: s[k] for k in ("chi", "K2", "c2", "minimal", "ample", "simply_connected", "classification")}
    out["raw"] = s["raw"]
    out["exception_family"] = s["exception_family"]
    out["paper_notes"] = report["paper_notes"]
    out["engine_notes"] = report["engine_notes"]
    _say(args, f"chi={s['chi']} K2={s['K2']} c2={s['c2']} ({s['classification'].value})")
    return _doc(out), result.exit_code


def cmd_search(args):
    if args.two_component:
        rows = two_component_search(args.max_mult, args.max_int)
        if args.csv:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["m1", "m2", "k", "genus"])
            for e in rows:
                w.writerow(e.as_tuple())
            return buf.getvalue(), EXIT_OK
        return _doc({"entries": [list(e.as_tuple()) for e in rows]}), EXIT_OK
    space = SearchSpace(
        args.components, args.max_mult, args.max_int, args.max_pa, args.max_genus,
        no_minus_one=args.no_minus_one,
    )
    found = list(enumerate_configurations(space))
    _say(args, f"{len(found)} configurations")
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["mults", "matrix", "genus", "flags"])
        for f in found:
            w.writerow([
                " ".join(map(str, f.mults)),
                " ".join(str(v) for row in f.matrix for v in row),
                f.genus,
                " ".join(f.flags),
            ])
        return buf.getvalue(), EXIT_OK
    out = {
        "configurations": [
            {"mults": list(f.mults), "pa": [g for _, g in f.labels], "matrix": [list(r) for r in f.matrix],
             "genus": f.genus, "flags": list(f.flags)}
            for f in found
        ]
    }
    return _doc(out), EXIT_OK


def cmd_pipeline(args):
    result = _run(args)
    report = result.report
    if args.emit_dot:
        parts = [emit_dot(r.contracted, f"fibre {r.to_dict()['base_point']}") for r in result.fibres]
        return "".join(parts), result.exit_code
    s = report.get("summary")
    if s is not None:
        _say(args, f"{report['preset']}: fibre genus {s['fibre_genus']}, {s['c_fibres']} C-fibres, "
                   f"chi={s['chi']} K2={s['K2']} c2={s['c2']}, {s['classification'].value}")
    for note in report["paper_notes"]:
        _say(args, f"paper note [{note['code']}]: {note['message']}")
    return report, result.exit_code


# ---------------------------------------------------------------------------
# parser


def _add_preset_args(p, base_change: bool = True):
    p.add_argument("--preset", required=True, help="type1|type2|type3|type4|even:n")
    p.add_argument("--alpha", default="1", help="type1 parameter (default 1)")
    p.add_argument("--h", type=int, default=2, help="type4 parameter (default 2)")
    p.add_argument("--corrected-type3", action="store_true", help="multiply type3 by (t + s)")
    p.add_argument("--template-mode", action="store_true", help="resolve from the preset's local templates")
    if base_change:
        p.add_argument("--base-change", type=int, default=1, help="cyclic base change degree")
        p.add_argument("--ramification", nargs=2, metavar="T:S", help="ramification points of the base change")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibsurf", description=__doc__.splitlines()[0])
    parser.add_argument("--quiet", action="store_true", help="JSON only, no stderr summary")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="JSON only, no stderr summary")
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("classify", help="orbifold classification of (P^1 or genus-g base, mults)")
    p.add_argument("--base-genus", type=int, default=0)
    p.add_argument("--mults", default="")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("winters", help="Winters admissibility of a configuration file")
    p.add_argument("--config", required=True, help="JSON configuration file, or - for stdin")
    p.set_defaults(func=cmd_winters)

    p = sub.add_parser("genus", help="fibre genus of a configuration, or admissible multiple fibres")
    p.add_argument("--config", help="JSON configuration file, or - for stdin")
    p.add_argument("--genus", type=int, help="list admissible multiple-fibre multiplicities for this genus")
    p.add_argument("--contract", action="store_true", help="contract (-1)-curves first")
    p.add_argument("--emit-dot", action="store_true")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("resolve", help="canonical resolution of a branch curve")
    p.add_argument("--branch", help="bihomogeneous form in x,z,t,s, or a chart polynomial together with --point")
    p.add_argument("--chart", default="xt", choices=["xt", "xs", "zt", "zs"])
    p.add_argument("--point", action="append", help="center 'a,b' in chart coordinates (repeatable)")
    p.add_argument("--template", help="local branch in x (fibre) and t (base) at the origin")
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--emit-dot", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("track", help="fibre over a base point of a preset")
    _add_preset_args(p, base_change=False)
    p.add_argument("--point", default="0:1", help="base point t:s (default 0:1)")
    p.add_argument("--emit-dot", action="store_true")
    p.add_argument("--emit-json", action="store_true")
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("invariants", help="chi, K^2, c2 and classification of a preset")
    _add_preset_args(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("search", help="enumerate admissible C-fibre configurations")
    p.add_argument("--components", type=int, default=2)
    p.add_argument("--max-mult", type=int, default=3)
    p.add_argument("--max-int", type=int, default=1)
    p.add_argument("--max-genus", type=int)
    p.add_argument("--max-pa", type=int, default=0)
    p.add_argument("--no-minus-one", action="store_true", help="drop configurations with (-1)-curves")
    p.add_argument("--two-component", action="store_true",
                   help="two-component table (m1, m2, k, genus) with m <= --max-mult, k <= --max-int")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("pipeline", help="full run on a preset")
    _add_preset_args(p)
    p.add_argument("--emit-dot", action="store_true", help="DOT of every tracked fibre instead of JSON")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except CliError as exc:
        print(emit_json({"error": str(exc)}), file=sys.stdout)
        if not args.quiet:
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        print(emit_json(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
