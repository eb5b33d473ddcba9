import json

from conftest import DERIVATIONS, ROOT

from floppy.cli import main


def run(capsys, *args):
    code = main(["check", *args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_conic_text_report(capsys):
    code, out, _ = run(capsys, "--scheme", "1", "--degree", "2")
    assert code == 0
    assert "overall: not_prohibited" in out
    assert "dividing=yes (forced by h=0)" in out


def test_prohibited_exit_code(capsys):
    code, out, _ = run(capsys, "--scheme", "11", "--degree", "6")
    assert code == 2
    assert "petrovskii_minus  lhs=0 rhs=-1" in out


def test_inputs_keep_command_line_order(capsys):
    code, out, _ = run(capsys, "--scheme", "5+1<5>", "--diagram",
                       str(ROOT / "data" / "diagrams" / "quartic_figure_eight.json"), "--scheme", "11",
                       "--degree", "6", "--json")
    data = json.loads(out)
    assert [d["input"].split()[0] for d in data] == ["scheme", "diagram", "scheme"]
    assert [d["overall"] for d in data] == ["not_prohibited", "not_prohibited", "prohibited"]
    assert code == 2


def test_derivations_exit_two_with_assume_ok(capsys):
    for name, arf, req in (("case1", "2", "6"), ("case2", "4", "0")):
        code, out, _ = run(capsys, "--derivation", str(DERIVATIONS / f"{name}.fcd"), "--assume-ok", "--json")
        assert code == 2
        rep = json.loads(out)
        assert rep["overall"] == "prohibited_under_assumptions"
        c = next(c for c in rep["checks"] if c["id"] == "arf_congruence")
        assert (c["status"], c["lhs"], c["rhs"]) == ("fail", arf, req)
        code, _, _ = run(capsys, "--derivation", str(DERIVATIONS / f"{name}.fcd"))
        assert code == 0


def test_shared_link_overrides(capsys, write_json):
    link = write_json("link.json", {"q": "q_minus_eighth", "gamma": 0, "proper": True,
                                    "surface": {"e": 0, "lambda": 0, "brown": 0}})
    code, out, _ = run(capsys, "--derivation", str(DERIVATIONS / "case2.fcd"), "--link", str(link), "--json")
    c = next(c for c in json.loads(out)["checks"] if c["id"] == "arf_congruence")
    assert c["status"] == "pass"


def test_errors_exit_one(capsys, write_json):
    code, _, err = run(capsys, "--scheme", "1<", "--degree", "4")
    assert code == 1 and "byte 2" in err
    code, _, err = run(capsys, "--scheme", "1")
    assert code == 1 and "--degree" in err
    bad = write_json("bad.json", {"degree": 2, "faces": []})
    code, _, err = run(capsys, "--diagram", str(bad))
    assert code == 1


def test_invalid_data_exit_one(capsys, write_json):
    from floppy.curve import nonsingular_curve
    from floppy.fileformat import diagram_to_dict
    F = nonsingular_curve("1", 2)
    doc = {"degree": 2, **diagram_to_dict(F.diagram), "global": {"chi_F": F.chi_F + 1}}
    code, out, _ = run(capsys, "--diagram", str(write_json("odd.json", doc)))
    assert code == 1
    assert "invalid_candidate_data" in out


def test_dot_output(capsys, tmp_path):
    dot = tmp_path / "out.dot"
    run(capsys, "--scheme", "1<1>", "--degree", "4", "--dot", str(dot))
    assert dot.read_text().startswith("graph faces")
