"""Ready-made local pictures for the common ambient surgeries.

These build :class:`ArcRewriteSpec` values for flopless empty ovals, so
derivations and tests do not have to spell out every arc and corner.
"""

from __future__ import annotations

from .curve import FloppyCurve
from .diagram import CurveDiagram, Face, Flop, Vertex
from .surgery import ArcRewriteSpec, FaceUpdate, NewArc, SurgeryError, _fresh


def empty_oval(d: CurveDiagram, cid: str) -> tuple[str, Face, str]:
    """(arc id, inner disk face, outer face id) of a flopless empty oval."""
    con = d.constituent.get(cid)
    if con is None or len(con.arcs) != 1:
        raise SurgeryError(f"{cid!r} is not a crossing-free constituent")
    aid = con.arcs[0][0]
    arc = d.arc[aid]
    if not arc.closed or arc.flops:
        raise SurgeryError(f"constituent {cid} is not a flopless closed curve")
    if con.one_sided:
        raise SurgeryError(f"constituent {cid} is one-sided")
    fs = d.arc_faces[aid]
    disks = [d.face[f] for f in fs if d.face[f].euler == 1 and d.face[f].orientable and d.face[f].boundary == (aid,)]
    if not disks:
        raise SurgeryError(f"constituent {cid} does not bound an empty disk")
    disk = disks[0]
    outer = next(f for f in fs if f != disk.id)
    return aid, disk, outer


def join_ovals(F: FloppyCurve, c1: str, c2: str, kind: str = "simple") -> ArcRewriteSpec:
    """Join two empty ovals lying in the same face into a figure eight.

    ``simple`` gives a positive crossing and no flops.  ``figure_eight``
    puts one flop on each lobe, pointing into the lobe, and makes the
    crossing negative.
    """
    if kind not in ("simple", "figure_eight"):
        raise SurgeryError(f"join_ovals builds simple or figure_eight surgeries, not {kind!r}")
    d = F.diagram
    x, Lx, R1 = empty_oval(d, c1)
    y, Ly, R2 = empty_oval(d, c2)
    if R1 != R2:
        raise SurgeryError(f"ovals {c1} and {c2} do not lie in the same face")
    R = d.face[R1]
    v = _fresh("v", d.vertex)
    used = set(d.arc)
    nx = _fresh("a", used)
    ny = _fresh("a", used | {nx})
    if kind == "simple":
        ax = NewArc(nx, (v, v), True)
        ay = NewArc(ny, (v, v), True)
    else:
        ax = NewArc(nx, (v, v), True, (Flop(Lx.id),))
        ay = NewArc(ny, (v, v), False, (Flop(Ly.id),))
    vertex = Vertex(v, ((ny, 0), (nx, 0), (nx, 1), (ny, 1)), (R.id, Lx.id, R.id, Ly.id))
    # An oval's forward direction is the boundary orientation of its disk.
    # The figure eight runs around one lobe that way and around the other
    # the opposite way, so an orientation extends iff the ovals disagree.
    return ArcRewriteSpec(
        remove_arcs=(x, y),
        add_vertices=(vertex,),
        add_arcs=(ax, ay),
        update_faces={
            R.id: FaceUpdate(euler=R.euler + 1, add_boundary=(nx, ny)),
            Lx.id: FaceUpdate(add_boundary=(nx,)),
            Ly.id: FaceUpdate(add_boundary=(ny,)),
        },
        origin={nx: (x, True), ny: (y, False)},
    )


def cross_wall(F: FloppyCurve, inner: str, wall_arc: str, outer: str) -> ArcRewriteSpec:
    """Join an empty oval on one side of ``wall_arc`` to one on the other side.

    The band between them cuts the wall at two new positive crossings.  The
    joined curve carries two flops on its outer half, both pointing into
    the disk it bounds there; this shifts the flop balance by two, as the
    defect drops by two.  The joined curve bounds the union of the two old
    disks, so a complex orientation extends iff both ovals run along their
    disk boundaries the same way.
    """
    d = F.diagram
    e, De, f_in = empty_oval(d, inner)
    o, Do, f_out = empty_oval(d, outer)
    A = d.arc.get(wall_arc)
    if A is None:
        raise SurgeryError(f"no arc {wall_arc!r}")
    if A.flops:
        raise SurgeryError(f"wall arc {wall_arc} carries flops")
    if sorted(d.arc_faces[wall_arc]) != sorted([f_in, f_out]):
        raise SurgeryError(f"ovals {inner} and {outer} are not on the two sides of arc {wall_arc}")
    used_v = set(d.vertex)
    v1 = _fresh("v", used_v)
    v2 = _fresh("v", used_v | {v1})
    used = set(d.arc)
    names = []
    for _ in range(5):
        names.append(_fresh("a", used))
        used.add(names[-1])
    p, q, wa, wb, w1 = names
    Fi, Fo = d.face[f_in], d.face[f_out]
    corners = (De.id, Do.id, f_out, f_in)
    arcs = [
        NewArc(p, (v1, v2), True),
        NewArc(q, (v2, v1), True, (Flop(Do.id), Flop(Do.id))),
        NewArc(wa, (v1, v2), A.thick),
    ]
    remove_v: tuple[str, ...] = ()
    add_v = []
    if A.closed:
        arcs.append(NewArc(wb, (v2, v1), A.thick))
        first = wb
        wall_pieces = (wa, wb)
    else:
        u1, u2 = A.ends
        arcs.append(NewArc(w1, (u1, v1), A.thick))
        arcs.append(NewArc(wb, (v2, u2), A.thick))
        first = w1
        wall_pieces = (w1, wa, wb)
        remap = {(wall_arc, 0): (w1, 0), (wall_arc, 1): (wb, 1)}
        for u in dict.fromkeys((u1, u2)):
            vx = d.vertex[u]
            add_v.append(Vertex(u, tuple(remap.get(tuple(x), tuple(x)) for x in vx.ends), vx.corners, vx.crosses_w))
        remove_v = tuple(dict.fromkeys((u1, u2)))
    add_v.append(Vertex(v1, ((p, 0), (wa, 0), (q, 1), (first, 1)), corners))
    add_v.append(Vertex(v2, ((p, 1), (wa, 1), (q, 0), (wb, 0)), corners))
    outside_wall = tuple(x for x in wall_pieces if x != wa)
    return ArcRewriteSpec(
        remove_vertices=remove_v,
        remove_arcs=(e, o, wall_arc),
        add_vertices=tuple(add_v),
        add_arcs=tuple(arcs),
        update_faces={
            De.id: FaceUpdate(add_boundary=(p, wa)),
            Do.id: FaceUpdate(add_boundary=(q, wa)),
            f_in: FaceUpdate(euler=Fi.euler + 1, add_boundary=(p, *outside_wall)),
            f_out: FaceUpdate(euler=Fo.euler + 1, add_boundary=(q, *outside_wall)),
        },
        origin={p: (e, True), q: (o, True), **{x: (wall_arc, True) for x in wall_pieces}},
    )
