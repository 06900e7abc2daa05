"""JSON and Graphviz emission for configurations, resolution trees and reports."""
from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction

from .config import CurveConfiguration
from .qfield import QuadraticNumber, format_number
from .resolution import ResolutionTree

SCHEMA_VERSION = "fibsurf-report/1"


def jsonable(value):
    """Exact, JSON-ready copy: Fractions become ints or "p/q" strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, QuadraticNumber):
        return format_number(value)
    if isinstance(value, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit_json(report: dict, *, indent: int | None = 2) -> str:
    doc = dict(jsonable(report))
    doc.setdefault("schema", SCHEMA_VERSION)
    return json.dumps(doc, sort_keys=True, indent=indent)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def config_to_dot(cfg: CurveConfiguration, name: str = "fibre") -> str:
    lines = [f"graph {_quote(name)} {{"]
    for c in cfg.components:
        label = f"{c.id}\\nm={c.mult} pa={c.pa}"
        if c.self_int is not None:
            label += f" C2={c.self_int}"
        lines.append(f"  {_quote(c.id)} [label={_quote(label)}];")
    for (i, j), v in sorted(cfg.intersections.items()):
        attr = f" [label={_quote(str(v))}]" if v > 1 else ""
        lines.append(f"  {_quote(i)} -- {_quote(j)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(tree: ResolutionTree, name: str = "resolution") -> str:
    """One node per blow-up; an edge runs from the step whose exceptional curve carries the next center."""
    ledger = tree.exceptional_ledger()
    lines = [f"digraph {_quote(name)} {{"]
    for s in tree.steps:
        label = (
            f"{s.name}\\ncenter {s.center.label()}\\nm={s.multiplicity} parity={s.parity} "
            f"E2={ledger[s.exceptional].self_int}"
        )
        lines.append(f"  {_quote(s.name)} [label={_quote(label)}];")
    for s in tree.steps:
        if s.center.parent is not None:
            lines.append(f"  {_quote(f'E{s.center.parent}')} -> {_quote(s.name)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(obj, name: str | None = None) -> str:
    if isinstance(obj, CurveConfiguration):
        return config_to_dot(obj, name or "fibre")
    if isinstance(obj, ResolutionTree):
        return tree_to_dot(obj, name or "resolution")
    raise TypeError(f"no DOT rendering for {type(obj).__name__}")
