import pytest

from fibsurf.config import fibre_genus, winters_check
from fibsurf.fibre import (
    FibreError,
    assemble_fibre_report,
    combinatorial_intersections,
    fibre_report,
    lift_to_double_cover,
    ramification,
    track_fibre,
)
from fibsurf.poly import parse_poly
from fibsurf.presets import type1
from fibsurf.resolution import LocalTemplate, canonical_resolve


@pytest.fixture(scope="module")
def type1_tree():
    return canonical_resolve(type1().branch())


@pytest.fixture(scope="module")
def trace(type1_tree):
    return track_fibre(type1_tree, (0, 1))


def test_downstairs_configuration(trace):
    down = trace.downstairs
    assert [(c.id, c.mult, c.self_int) for c in down.components] == [
        ("L", 1, -4), ("E1", 1, -2), ("E2", 2, -2), ("E3", 3, -4), ("E4", 4, -1), ("E5", 3, -1), ("E6", 3, -1),
    ]
    assert combinatorial_intersections(trace) == dict(down.intersections)


def test_classes_and_branch(trace):
    assert str(trace.classes["L"]) == "1F - 1e1 - 1e2 - 1e3 - 1e4"
    assert str(trace.branch_class) == "4F + 6G - 2e1 - 4e2 - 2e3 - 2e4 - 2e5 - 2e6"
    assert [n for n, b in trace.in_branch.items() if b] == ["L", "E1", "E3"]
    assert ramification(trace, "E2") == 2


def test_lift(trace):
    lifted = lift_to_double_cover(trace)
    kinds = {l.source: l.kind for l in lifted.lifts}
    assert kinds == {"L": "branch", "E1": "branch", "E2": "cover", "E3": "branch",
                     "E4": "cover", "E5": "cover", "E6": "cover"}
    cfg = lifted.configuration
    assert cfg.component("E1'").self_int == -1
    assert cfg.component("E3'").mult == 6
    assert fibre_genus(cfg) == 2


def test_report_after_contraction(type1_tree):
    rep = fibre_report(type1_tree, (0, 1))
    assert rep.contractions == 1
    assert rep.genus == 2
    assert sorted(c.mult for c in rep.contracted.components) == [2, 2, 3, 3, 4, 6]
    assert rep.predicates.is_c_fibre and rep.predicates.min == 2
    assert winters_check(rep.contracted).passed


def _shape(cfg):
    """Configuration data that does not depend on component names."""
    label = {c.id: (c.mult, c.pa, c.self_int) for c in cfg.components}
    edges = sorted(tuple(sorted((label[i], label[j]))) + (v,) for (i, j), v in cfg.intersections.items())
    return sorted(label.values()), edges


def test_symmetric_fibre_at_infinity(type1_tree):
    a = fibre_report(type1_tree, (0, 1)).contracted
    b = fibre_report(type1_tree, (1, 0)).contracted
    assert _shape(a) == _shape(b)


def test_smooth_fibre_is_trivial(type1_tree):
    rep = fibre_report(type1_tree, (3, 1))
    assert [(c.id, c.pa, c.self_int) for c in rep.contracted.components] == [("L'", 2, 0)]


def test_tacnode_splits_the_exceptional_curve():
    tree = canonical_resolve(LocalTemplate(parse_poly("x^2 - t^4", "local")))
    rep = assemble_fibre_report(track_fibre(tree, (0, 1), fibre_degree=6))
    assert [l.kind for l in rep.lifted.lifts] == ["cover", "split", "cover"]
    assert {"E1'a", "E1'b"} <= set(rep.contracted.ids)
    assert rep.genus == 2


def test_template_copies_are_renamed():
    tree = canonical_resolve(LocalTemplate(parse_poly("t*(x^3 + t^2)", "local"), 2))
    trace = track_fibre(tree, (0, 1), fibre_degree=6)
    names = trace.downstairs.ids
    assert "E1#1" in names and "E1#2" in names


def test_missing_degree_is_an_error():
    tree = canonical_resolve(LocalTemplate(parse_poly("x^2 - t^4", "local")))
    with pytest.raises(FibreError):
        track_fibre(tree, (0, 1))
