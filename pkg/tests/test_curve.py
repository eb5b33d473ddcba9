from floppy.curve import (
    chi_from_delta,
    delta,
    harnack_h,
    nonsingular_curve,
    validate_curve,
)


def test_nonsingular_defaults():
    F = nonsingular_curve("1<2+1<18>>", 8)
    assert F.chi_F == 24 - 64
    assert delta(F) == 0
    assert harnack_h(F) == 0
    assert F.ell == 22
    assert F.k == 4
    assert validate_curve(F) == []


def test_harnack_counts():
    assert harnack_h(nonsingular_curve("5", 4)) == -2
    assert harnack_h(nonsingular_curve("4", 4)) == 0
    assert harnack_h(nonsingular_curve("1", 2)) == 0
    assert harnack_h(nonsingular_curve("", 2)) == 2


def test_chi_from_delta_solves_the_defect():
    F = nonsingular_curve("3", 6)
    for target in (-6, -2, 0, 4):
        chi = chi_from_delta(F.diagram, 6, target, 1, 0)
        assert delta(F.replace(chi_F=chi, nu_plus=1)) == target


def test_structural_problems():
    F = nonsingular_curve("1", 2)
    assert any("epsilon" in p for p in validate_curve(F.replace(epsilon=2)))
    assert any("exceeds" in p for p in validate_curve(F.replace(c=2, strongly_irreducible=False,
                                                                 two_irreducible=False)))
    assert any("dividing" in p for p in validate_curve(F.replace(dividing="maybe")))
    assert any("odd" in p for p in validate_curve(F.replace(chi_F=F.chi_F + 1)))
    assert any("non-dividing" in p for p in validate_curve(F.replace(dividing="no", complex_orientation=True)))


def test_summary_keys():
    s = nonsingular_curve("1", 2).summary()
    assert s["delta"] == 0 and s["h"] == 0 and s["O_plus"] == 0
