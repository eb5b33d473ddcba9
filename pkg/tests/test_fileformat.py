import json

import pytest
from conftest import ROOT

from floppy.arf import LinkError
from floppy.curve import delta, nonsingular_curve
from floppy.diagram import swap_sides
from floppy.fileformat import (
    FormatError,
    curve_from_dict,
    diagram_from_dict,
    diagram_to_dict,
    load_json,
    rewrite_from_dict,
    rewrite_to_dict,
    run_derivation,
)
from floppy.scheme import SchemeError
from floppy.surgery import SurgeryError
from floppy.templates import cross_wall, join_ovals


def test_diagram_round_trip(case2):
    d = case2.final.diagram
    assert diagram_from_dict(json.loads(json.dumps(diagram_to_dict(d)))) == d


def test_rewrite_round_trip(nest8):
    for rw in (join_ovals(nest8, "c5", "c6", "figure_eight"), cross_wall(nest8, "c5", "a4", "c2")):
        assert rewrite_from_dict(json.loads(json.dumps(rewrite_to_dict(rw)))) == rw


def test_missing_sides_are_filled_canonically(nest8):
    obj = diagram_to_dict(swap_sides(nest8.diagram))
    for f in obj["faces"]:
        f["side"] = None
    assert diagram_from_dict(obj) == nest8.diagram


def test_partial_sides_rejected(nest8):
    obj = diagram_to_dict(nest8.diagram)
    obj["faces"][0]["side"] = None
    with pytest.raises(FormatError):
        diagram_from_dict(obj)


def test_supplied_globals_become_assumptions():
    F = curve_from_dict(load_json(ROOT / "data" / "diagrams" / "quartic_figure_eight.json"))
    assert delta(F) == -2
    assert F.dividing == "no"
    assert "dividing=no (supplied)" in F.assumptions


def test_chi_or_delta_required(nest8):
    obj = {"degree": 8, **diagram_to_dict(nest8.diagram), "global": {}}
    with pytest.raises(FormatError):
        curve_from_dict(obj)
    obj["global"] = {"chi_F": nest8.chi_F}
    assert curve_from_dict(obj).chi_F == nest8.chi_F
    obj["global"] = {"chi": 1}
    with pytest.raises(FormatError):
        curve_from_dict(obj)


def test_load_json_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{ not json")
    with pytest.raises(FormatError, match="line 1"):
        load_json(p)
    with pytest.raises(FormatError):
        load_json(tmp_path / "missing.json")
    p.write_text("[1, 2]")
    with pytest.raises(FormatError):
        load_json(p)


def test_derivation_records_each_move(case1):
    assert len(case1.steps) == 9
    notes = [a for a in case1.final.assumptions if "membrane" in a]
    assert len(notes) == 9
    assert case1.base.complex_orientation


def test_derivation_errors():
    with pytest.raises(FormatError):
        run_derivation({})
    with pytest.raises(SchemeError):
        run_derivation({"base": {"scheme": "1<", "degree": 4}})
    with pytest.raises(FormatError):
        run_derivation({"base": {"scheme": "1", "degree": 2}, "moves": [{"op": "twirl"}]})
    with pytest.raises(SurgeryError, match="move 1"):
        run_derivation({"base": {"scheme": "1", "degree": 2},
                        "moves": [{"op": "resolve_crossing", "vertex": "v9", "choice": "A"}]})
    with pytest.raises(FormatError):
        run_derivation({"base": {"scheme": "2", "degree": 4}, "orientation": {"reversed": ["c9"]}})
    with pytest.raises(FormatError):
        # h=4 and no dividing status: a complex orientation cannot be supplied
        run_derivation({"base": {"scheme": "2", "degree": 4}, "orientation": {"reversed": []}})
    with pytest.raises(LinkError):
        run_derivation({"base": {"scheme": "1", "degree": 2}, "link": {"q": "nope", "gamma": 0}})


def test_diagram_file_base(write_json, nest8):
    p = write_json("base.json", {"degree": 8, **diagram_to_dict(nest8.diagram), "global": {"delta": 0}})
    der = run_derivation({"base": {"diagram_file": p.name},
                          "moves": [{"op": "oval_to_isolated", "constituent": "c22"}]}, p.parent)
    assert der.final.iota == 1
    assert delta(der.final) == 0


def test_simple_moves_replay():
    der = run_derivation({"base": {"scheme": "3", "degree": 4},
                          "moves": [{"op": "oval_to_isolated", "constituent": "c3"},
                                    {"op": "isolated_to_oval", "point": "p1"}]})
    assert der.final.ell == 3
    assert delta(der.final) == delta(nonsingular_curve("3", 4))
