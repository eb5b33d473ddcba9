import pytest

from floppy.curve import delta, harnack_h, nonsingular_curve
from floppy.diagram import Flop, validate_diagram
from floppy.surgery import (
    ArcRewriteSpec,
    FaceUpdate,
    NewArc,
    NonorientableSurgeryError,
    SurgeryError,
    ambient_surgery,
    isolated_to_oval,
    oval_to_isolated,
    resolve_conjugate_pair,
    resolve_crossing,
)
from floppy.templates import cross_wall, join_ovals


def invariants(F):
    return (delta(F), harnack_h(F), F.ell, F.d_plus, F.d_minus, F.chi_F)


def test_simple_join_keeps_defect(nest8):
    G = ambient_surgery(nest8, "simple", join_ovals(nest8, "c5", "c6"))
    assert delta(G) == 0
    assert G.ell == 21
    assert G.r_plus == 1 and G.r_minus == 0
    assert G.chi_F == nest8.chi_F + 1


def test_crossing_surgery_lowers_defect(nest8):
    G = ambient_surgery(nest8, "crossing", cross_wall(nest8, "c5", "a4", "c2"))
    assert delta(G) == -2
    assert G.r_plus == 2
    assert G.ell == 21
    assert validate_diagram(G.diagram).ok


def test_figure_eight_surgery(nest8):
    G = ambient_surgery(nest8, "figure_eight", join_ovals(nest8, "c5", "c6", "figure_eight"))
    assert delta(G) == -2
    assert G.r_minus == 1
    assert G.dividing == "no"
    assert harnack_h(G) == 4


def test_figure_eight_must_add_a_negative_crossing(nest8):
    with pytest.raises(SurgeryError):
        ambient_surgery(nest8, "figure_eight", join_ovals(nest8, "c5", "c6", "simple"))


def test_unknown_kind_rejected(nest8):
    with pytest.raises(SurgeryError):
        ambient_surgery(nest8, "twist", join_ovals(nest8, "c5", "c6"))


def test_contradictory_thickness_is_nonorientable(nest8):
    rw = join_ovals(nest8, "c5", "c6")
    # an odd flop count on one lobe forces the thickness to flip around it
    bad = ArcRewriteSpec(**{**rw.__dict__, "add_arcs": (
        NewArc(rw.add_arcs[0].id, rw.add_arcs[0].ends, None, (Flop("f5"),)),
        rw.add_arcs[1],
    )})
    with pytest.raises(SurgeryError):
        ambient_surgery(nest8, "simple", bad)


def test_thickness_conflict_at_a_crossing(nest8):
    rw = join_ovals(nest8, "c5", "c6")
    # fixed, clashing thickness on the two halves of one branch
    x, y = rw.add_arcs
    v = rw.add_vertices[0]
    split = ArcRewriteSpec(**{**rw.__dict__, "add_arcs": (
        NewArc(x.id, x.ends, True, (Flop("f5"), Flop("f5"))), NewArc(y.id, y.ends, True, (Flop("f6"),)),
    )})
    assert v.id
    with pytest.raises(NonorientableSurgeryError):
        ambient_surgery(nest8, "simple", split)


def test_rewrite_must_name_existing_pieces(nest8):
    with pytest.raises(SurgeryError):
        ambient_surgery(nest8, "simple", ArcRewriteSpec(remove_arcs=("zz",)))
    with pytest.raises(SurgeryError):
        ambient_surgery(nest8, "simple", ArcRewriteSpec(update_faces={"zz": FaceUpdate(euler=0)}))


def test_resolving_a_join_restores_the_ovals(nest8):
    G = ambient_surgery(nest8, "simple", join_ovals(nest8, "c5", "c6"))
    v = G.diagram.vertices[0].id
    back = resolve_crossing(G, v, "A")
    other = resolve_crossing(G, v, "B")
    for H in (back, other):
        assert delta(H) == delta(G)
        assert H.r_plus == 0
        assert H.chi_F == G.chi_F - 1
        assert validate_diagram(H.diagram).ok
    # one smoothing splits the figure eight back into two ovals, the other keeps one curve
    assert {back.ell, other.ell} == {21, 22}


def test_negative_crossing_cannot_be_resolved(nest8):
    G = ambient_surgery(nest8, "figure_eight", join_ovals(nest8, "c5", "c6", "figure_eight"))
    with pytest.raises(SurgeryError):
        resolve_crossing(G, G.diagram.vertices[0].id, "A")


def test_compatible_resolution_keeps_dividing():
    F = nonsingular_curve("2", 4)
    # declare dividing with a complex orientation that makes the join extend
    cons = F.diagram.constituents
    rev = (cons[0], type(cons[1])(cons[1].id, ((cons[1].arcs[0][0], False),)))
    F = F.replace(diagram=F.diagram.replace(constituents=rev), dividing="yes", complex_orientation=True)
    G = ambient_surgery(F, "simple", join_ovals(F, "c1", "c2"))
    assert G.dividing == "yes"
    v = G.diagram.vertices[0].id
    results = {resolve_crossing(G, v, c).dividing for c in ("A", "B")}
    assert results == {"yes", "no"}


def test_isolated_point_round_trip():
    F = nonsingular_curve("3", 4)
    G = oval_to_isolated(F, "c2")
    assert G.iota == 1 and G.d_plus == 1 and G.ell == 2
    assert delta(G) == delta(F)
    p = G.diagram.isolated[0].id
    H = isolated_to_oval(G, p)
    assert invariants(H) == invariants(F)


def test_oval_with_children_cannot_shrink(nest8):
    with pytest.raises(SurgeryError):
        oval_to_isolated(nest8, "c1")


def test_conjugate_pairs():
    F = nonsingular_curve("1", 4).replace(nu_plus=1, nu_minus=1, chi_F=nonsingular_curve("1", 4).chi_F + 4)
    d0 = delta(F)
    assert delta(resolve_conjugate_pair(F, "+")) == d0
    assert delta(resolve_conjugate_pair(F, "-")) == d0 - 4
    with pytest.raises(SurgeryError):
        resolve_conjugate_pair(resolve_conjugate_pair(F, "+"), "+")


def test_orientation_carried_through_joins(case1):
    F = case1.final
    assert F.dividing == "yes" and F.complex_orientation
    assert invariants(F) == (0, 0, 13, 9, 0, -31)


def test_orientation_through_wall_crossings(case2):
    F = case2.final
    assert F.dividing == "yes"
    assert invariants(F) == (-4, 0, 12, 12, 0, -32)
    assert F.O("+") == 4


def test_wrong_orientation_breaks_dividing(nest8):
    F = nest8.replace(dividing="yes", complex_orientation=True)
    G = ambient_surgery(F, "simple", join_ovals(F, "c5", "c6"))
    assert G.dividing == "no"
