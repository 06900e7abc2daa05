import json

import pytest
from hypothesis import given, settings

from fibsurf.config import (
    Component,
    ConfigurationError,
    CurveConfiguration,
    configuration,
    contract_component,
    contract_minus_one,
    derive_self_intersections,
    fibre_genus,
    fibre_predicates,
    multiple_fibre_constraints,
    winters_check,
)
from strategies import blown_up_fibres, strip_self_intersections


def test_two_component_c_fibre():
    cfg = derive_self_intersections(configuration([2, 3], {(0, 1): 6}))
    assert [c.self_int for c in cfg.components] == [-9, -4]
    assert fibre_genus(cfg) == 11


def test_adjunction_by_hand():
    # 2g - 2 = sum m (2 pa - 2 - C^2): 2*(-2+9) + 3*(-2+4) = 20
    cfg = configuration([2, 3], {(0, 1): 6})
    assert 2 * fibre_genus(cfg) - 2 == 20


def test_winters_failure_is_reported():
    cfg = configuration([2, 3], {(0, 1): 1})
    res = winters_check(cfg)
    assert not res.passed
    assert res.witnesses["0"] == (3, 2, False)
    with pytest.raises(ConfigurationError):
        derive_self_intersections(cfg)


def test_supplied_self_intersection_must_agree():
    cfg = CurveConfiguration((Component("A", 2, 0, -8), Component("B", 3, 0, -4)), {("A", "B"): 6})
    with pytest.raises(ConfigurationError):
        derive_self_intersections(cfg)


def test_asymmetric_or_unknown_entries_rejected():
    with pytest.raises(ConfigurationError):
        CurveConfiguration((Component("A", 1),), {("A", "B"): 1})
    with pytest.raises(ConfigurationError):
        CurveConfiguration((Component("A", 1), Component("B", 1)), {("A", "B"): 1, ("B", "A"): 2})
    with pytest.raises(ConfigurationError):
        Component("A", 0)


def test_json_round_trip():
    cfg = derive_self_intersections(configuration([2, 2, 2, 3, 3], {(i, j): 1 for i in range(5) for j in range(i + 1, 5)}))
    again = CurveConfiguration.from_json(cfg.to_json())
    assert again == cfg
    assert json.loads(cfg.to_json())["components"][0]["self_int"] == -5


def test_predicates():
    p = fibre_predicates(configuration([2, 4], {(0, 1): 1}))
    assert p.gcd == 2 and p.is_multiple and not p.is_c_fibre
    p = fibre_predicates(configuration([2, 3], {}))
    assert not p.connected and not p.is_valid_fibration_fibre


def test_multiple_fibre_constraints():
    assert multiple_fibre_constraints(2).multiplicities == (1,)
    mfc = multiple_fibre_constraints(7)
    assert mfc.multiplicities == (1, 2, 3, 6)
    assert mfc.quotient_genus(3) == 3
    assert not mfc.admits(4)
    assert multiple_fibre_constraints(1).admits(17)
    with pytest.raises(ConfigurationError):
        mfc.quotient_genus(4)


def test_contraction_of_a_single_blowup():
    # blow up a point on a smooth genus-2 fibre, then contract back
    cfg = CurveConfiguration((Component("L", 1, 2, -1), Component("E", 1, 0, -1)), {("L", "E"): 1})
    out, n = contract_minus_one(cfg)
    assert n == 1
    assert out == CurveConfiguration((Component("L", 1, 2, 0),), {})


def test_contracting_a_non_minus_one_curve_fails():
    cfg = derive_self_intersections(configuration([2, 3], {(0, 1): 6}))
    with pytest.raises(ConfigurationError):
        contract_component(cfg, "0")


@settings(max_examples=200, deadline=None)
@given(blown_up_fibres())
def test_genus_is_preserved_by_blowups(cfg):
    assert fibre_genus(cfg) == fibre_genus(derive_self_intersections(strip_self_intersections(cfg)))
    first = next(c for c in cfg.components if c.id == "L")
    assert fibre_genus(cfg) == first.pa
