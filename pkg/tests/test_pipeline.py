import pytest

from conftest import cached_run
from fibsurf.orbifold import Classification
from fibsurf.pipeline import EXIT_OK, EXIT_PAPER_DISCREPANCY, PipelineError, PresetRun, run_pipeline
from fibsurf.presets import PresetError, even_branch, get_preset


def codes(notes):
    return {n["code"] for n in notes}


def test_type1_default():
    r = cached_run("type1")
    assert r.exit_code == EXIT_OK
    s = r.report["summary"]
    assert (s["chi"], s["K2"], s["c2"]) == (1, -2, 14)
    assert s["c_fibres"] == 2 and s["multiple_fibres"] == 0
    assert s["minimal"] is True
    assert s["classification"] is Classification.SPECIAL
    assert r.report["paper_notes"] == [] and r.report["engine_notes"] == []


def test_type1_base_change_three_is_general_type():
    s = cached_run("type1", base_change=3).report["summary"]
    assert s["classification"] is Classification.GENERAL_TYPE
    assert s["c_fibres"] == 6
    assert s["ample"] and s["simply_connected"]


def test_type1_base_change_two_is_special():
    r = cached_run("type1", base_change=2).report
    assert r["stages"]["orbifold"]["exception_family"] == "(2,2,2,2)"


def test_template_mode_agrees():
    a = cached_run("type1").report["summary"]
    b = cached_run("type1", template_mode=True).report["summary"]
    assert a == b


def test_type1_alpha():
    s = run_pipeline(PresetRun("type1", alpha="3")).report["summary"]
    assert (s["chi"], s["K2"]) == (1, -2)
    with pytest.raises(PipelineError) as info:
        run_pipeline(PresetRun("type1", alpha=2))
    assert info.value.stage == "preset"


def test_type2_reports_the_extra_fibre():
    r = cached_run("type2")
    assert r.exit_code == EXIT_PAPER_DISCREPANCY
    assert codes(r.report["paper_notes"]) == {"singular-fibres"}
    assert "[-1:1]" in r.report["paper_notes"][0]["message"]
    s = r.report["summary"]
    assert (s["chi"], s["K2"]) == (1, -2)


def test_type3_stops_at_evenness():
    r = cached_run("type3")
    assert r.exit_code == EXIT_PAPER_DISCREPANCY
    assert r.report["stopped_after"] == "evenness"
    assert codes(r.report["paper_notes"]) == {"parity"}
    assert "summary" not in r.report


def test_corrected_type3():
    r = run_pipeline(PresetRun("type3", corrected_type3=True))
    assert r.report["stages"]["evenness"]["bidegree"] == [8, 6]
    assert codes(r.report["paper_notes"]) == {"bidegree"}
    assert all(f["genus"] == 2 for f in r.report["stages"]["fibres"])


def test_type4():
    r = cached_run("type4")
    assert r.exit_code == EXIT_OK
    s = r.report["summary"]
    assert (s["chi"], s["K2"]) == (2, 0)
    with pytest.raises(PipelineError, match="even_divisor_check"):
        run_pipeline(PresetRun("type4", h=3))


def test_even_family():
    r = cached_run("even:2")
    assert "locus-incomplete" in codes(r.report["engine_notes"])
    assert r.report["summary"]["chi"] is None
    assert r.report["stages"]["generic_genus"]["genus"] == 2
    r4 = cached_run("even:4", template_mode=True)
    assert r4.report["stages"]["generic_genus"]["genus"] == 5
    assert codes(r4.report["paper_notes"]) == {"genus-claim"}
    assert r4.fibres[0].genus == 5


def test_bad_inputs():
    with pytest.raises(PipelineError):
        run_pipeline(PresetRun("nope"))
    with pytest.raises(PipelineError):
        run_pipeline(PresetRun("type1", base_change=0))
    with pytest.raises(PipelineError):
        run_pipeline(PresetRun("type2", template_mode=True))
    with pytest.raises(PresetError):
        get_preset("even:3")


def test_even_branch_bidegree():
    assert even_branch(2).bidegree == (6, 6)
    assert even_branch(4).bidegree == (10, 12)
