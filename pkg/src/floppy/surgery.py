"""Moves on floppy curves as diagram rewrites with exact invariant updates.

Every move returns a new :class:`FloppyCurve`, re-validates the diagram
and raises :class:`SurgeryError` when the result is not a valid curve.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .curve import FloppyCurve, delta, parity_problems
from .diagram import (
    SIDES,
    Arc,
    Constituent,
    CurveDiagram,
    Face,
    Flop,
    IsolatedPoint,
    Vertex,
    WSpec,
    arc_orientation,
    opposite,
    trace_constituents,
    validate_diagram,
)


class SurgeryError(ValueError):
    pass


class NonorientableSurgeryError(SurgeryError):
    """The rewrite admits no consistent thickness: the new surface is nonorientable."""


DELTA_CHANGE = {"simple": 0, "crossing": -2, "figure_eight": -2}


def _fresh(prefix: str, used: Iterable[str]) -> str:
    used = set(used)
    i = 1
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


def _rename_faces(d: CurveDiagram, mapping: Mapping[str, str]) -> CurveDiagram:
    if not mapping:
        return d
    r = lambda f: mapping.get(f, f)
    verts = tuple(dataclasses.replace(v, corners=tuple(r(c) for c in v.corners)) for v in d.vertices)
    arcs = tuple(dataclasses.replace(a, flops=tuple(Flop(r(fl.direction)) for fl in a.flops)) for a in d.arcs)
    iso = tuple(dataclasses.replace(p, face=r(p.face)) for p in d.isolated)
    w = WSpec(None if d.w.face is None else r(d.w.face))
    return d.replace(vertices=verts, arcs=arcs, isolated=iso, w=w)


def _dedupe(seq: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(seq))


def _check(d: CurveDiagram, what: str) -> None:
    rep = validate_diagram(d)
    if not rep.ok:
        raise SurgeryError(f"{what} produced an invalid diagram: " + "; ".join(rep.violations))


def _finish(F: FloppyCurve, what: str) -> FloppyCurve:
    _check(F.diagram, what)
    probs = parity_problems(F)
    if probs:
        raise SurgeryError(f"{what} violates parity constraints: " + "; ".join(probs))
    return F


def _assign_constituents(d: CurveDiagram, old: CurveDiagram, loose: Sequence[str],
                         keep: Sequence[Constituent], prefer: Mapping[str, bool],
                         one_sided_hint: Iterable[str] | None,
                         origin: Mapping[str, tuple[str, bool]] | None = None) -> tuple[tuple[Constituent, ...], bool]:
    """Retrace the constituents through ``loose`` arcs.

    Returns the full constituent tuple and whether every preferred arc
    direction is respected (i.e. the old orientation extends).
    """
    order = [a for a in loose if a in prefer] + [a for a in loose if a not in prefer]
    cycles = trace_constituents(d, prefer, order)
    old_of = {a: c for c in old.constituents for a, _ in c.arcs}
    for new, (src, _) in (origin or {}).items():
        if src in old_of:
            old_of.setdefault(new, old_of[src])
    used = {c.id for c in keep}
    hint = set(one_sided_hint) if one_sided_hint is not None else None
    out = list(keep)
    consistent = True
    for cyc in cycles:
        for a, fwd in cyc:
            if a in prefer and prefer[a] != fwd:
                consistent = False
        sources = []
        for a, _ in cyc:
            c = old_of.get(a)
            if c is not None and c not in sources:
                sources.append(c)
        if hint is not None:
            one = any(a in hint for a, _ in cyc)
        else:
            one = sum(c.one_sided for c in sources) % 2 == 1
        cid = next((c.id for c in sources if c.id not in used), None) or _fresh("c", used | {c.id for c in old.constituents})
        used.add(cid)
        out.append(Constituent(cid, cyc, one))
    return tuple(out), consistent


# ----------------------------------------------------------------------------
# double points


def _end_direction(prefer: Mapping[str, bool], end: tuple[str, int]) -> bool:
    """True if the oriented curve leaves the crossing through this arc end."""
    fwd = prefer[end[0]]
    return (end[1] == 0) == fwd


def resolve_crossing(F: FloppyCurve, v: str, choice: str, merged_orientable: bool | None = None,
                     one_sided: Iterable[str] | None = None) -> FloppyCurve:
    """Smooth the crossing ``v``.

    Choice ``A`` joins arc ends (0,1) and (2,3) so the quadrants 1 and 3
    merge through the former crossing; choice ``B`` joins (1,2) and (3,0)
    and merges quadrants 0 and 2.  ``merged_orientable`` decides the
    orientability of a face merged with itself when this is not forced;
    ``one_sided`` lists arcs whose new constituents are one-sided when a
    constituent splits.
    """
    d = F.diagram
    if v not in d.vertex:
        raise SurgeryError(f"no crossing {v!r}")
    vx = d.vertex[v]
    thick = [d.arc[a].thick_at(e) for a, e in vx.ends]
    if thick[0] != thick[1]:
        raise SurgeryError(f"crossing {v} has branches of different thickness (negative double point); "
                           "no resolution rule is available")
    if choice not in ("A", "B"):
        raise SurgeryError(f"choice must be 'A' or 'B', got {choice!r}")
    joins = [(0, 1), (2, 3)] if choice == "A" else [(1, 2), (3, 0)]
    q1, q2 = (1, 3) if choice == "A" else (0, 2)

    old_orient = arc_orientation(d)
    compatible = all(_end_direction(old_orient, vx.ends[i]) != _end_direction(old_orient, vx.ends[j])
                     for i, j in joins)

    arcs = {a.id: a for a in d.arcs}
    ends = {u.id: list(u.ends) for u in d.vertices}
    # orientation of each current arc relative to the old constituent direction
    agree = {a: {fwd} for a, fwd in old_orient.items()}
    absorbed: dict[str, str] = {}

    for i, j in joins:
        (x, ex), (y, ey) = ends[v][i], ends[v][j]
        ends[v][i] = ends[v][j] = None
        if x == y:
            ax = arcs[x]
            arcs[x] = Arc(x, None, ax.thick, ax.flops)
            continue
        ax, ay = arcs[x], arcs[y]
        remap = {}
        if ex == 0:  # reorient x so it ends at the join
            ax = ax.reversed()
            remap[(x, 1)] = (x, 0)
            agree[x] = {not s for s in agree[x]}
        if ey == 1:  # reorient y so it starts at the join
            ay = ay.reversed()
            remap[(y, 0)] = (x, 1)
            agree_y = {not s for s in agree[y]}
        else:
            remap[(y, 1)] = (x, 1)
            agree_y = set(agree[y])
        arcs[x] = Arc(x, (ax.ends[0], ay.ends[1]), ax.thick, ax.flops + ay.flops)
        agree[x] |= agree_y
        del arcs[y]
        del agree[y]
        absorbed[y] = x
        for vid, lst in ends.items():
            ends[vid] = [None if e is None else remap.get(tuple(e), tuple(e)) for e in lst]

    # faces: merge the two quadrants that meet through v
    fa, fb = vx.corners[q1], vx.corners[q2]
    faces = {f.id: f for f in d.faces}
    A, B = faces[fa], faces[fb]
    rename = {}
    if fa != fb:
        merged = Face(fa, A.euler + B.euler - 1, A.orientable and B.orientable,
                      A.boundary + B.boundary, A.side)
        del faces[fb]
        rename[fb] = fa
    else:
        if not A.orientable:
            orient = False
        elif any(not f.orientable for f in d.faces):
            orient = True
        elif merged_orientable is None:
            raise SurgeryError(f"face {fa} is merged with itself at {v}; pass merged_orientable")
        else:
            orient = merged_orientable
        merged = Face(fa, A.euler - 1, orient, A.boundary, A.side)
    faces[fa] = merged
    new_faces = []
    for f in d.faces:
        if f.id not in faces:
            continue
        g = faces[f.id]
        b = _dedupe(_resolve(absorbed, a) for a in g.boundary)
        new_faces.append(dataclasses.replace(g, boundary=b))

    new_arcs = []
    for a in d.arcs:
        if a.id in arcs:
            new_arcs.append(arcs[a.id])
    verts = tuple(dataclasses.replace(u, ends=tuple(ends[u.id])) for u in d.vertices if u.id != v)
    nd = d.replace(vertices=verts, arcs=tuple(new_arcs), faces=tuple(new_faces))
    nd = _rename_faces(nd, rename)

    touched = {c.id for c in d.constituents for a, _ in c.arcs if a in {e[0] for e in vx.ends}}
    keep = [c for c in d.constituents if c.id not in touched]
    loose = [a.id for a in new_arcs if a.id not in {x for c in keep for x, _ in c.arcs}]
    prefer = {a: next(iter(s)) for a, s in agree.items() if a in arcs and len(s) == 1}
    cons, _ = _assign_constituents(nd, d, loose, keep, prefer, one_sided)
    nd = nd.replace(constituents=cons)

    dividing = F.dividing
    if F.complex_orientation and F.dividing == "yes":
        dividing = "yes" if compatible else "no"
        orient_ok = compatible
    else:
        dividing = "no" if F.dividing == "no" else "unknown"
        orient_ok = False
    if dividing == "yes":
        cons = tuple(_orient_by(c, prefer) for c in cons)
        nd = nd.replace(constituents=cons)
    NF = F.replace(diagram=nd, chi_F=F.chi_F - 1, dividing=dividing,
                   complex_orientation=orient_ok and dividing == "yes")
    assert delta(NF) == delta(F)
    return _finish(NF, f"resolving crossing {v}")


def _resolve(absorbed: Mapping[str, str], a: str) -> str:
    while a in absorbed:
        a = absorbed[a]
    return a


def _orient_by(c: Constituent, prefer: Mapping[str, bool]) -> Constituent:
    """Reverse a traced constituent if it runs against the preferred directions."""
    votes = [prefer[a] == fwd for a, fwd in c.arcs if a in prefer]
    if votes and not votes[0]:
        return dataclasses.replace(c, arcs=tuple((a, not f) for a, f in reversed(c.arcs)))
    return c


def resolve_conjugate_pair(F: FloppyCurve, sign: str) -> FloppyCurve:
    if sign not in SIDES:
        raise SurgeryError(f"sign must be '+' or '-', got {sign!r}")
    if sign == "+":
        if F.nu_plus < 1:
            raise SurgeryError("no positive conjugate pair to resolve")
        return F.replace(nu_plus=F.nu_plus - 1, chi_F=F.chi_F - 2)
    if F.nu_minus < 1:
        raise SurgeryError("no negative conjugate pair to resolve")
    return F.replace(nu_minus=F.nu_minus - 1, chi_F=F.chi_F - 2)


# ----------------------------------------------------------------------------
# isolated points and small ovals


def isolated_to_oval(F: FloppyCurve, p: str) -> FloppyCurve:
    d = F.diagram
    pt = next((q for q in d.isolated if q.id == p), None)
    if pt is None:
        raise SurgeryError(f"no isolated point {p!r}")
    host = d.face[pt.face]
    aid = _fresh("a", d.arc)
    cid = _fresh("c", d.constituent)
    fid = _fresh("f", d.face)
    forward = pt.arrow != -1
    side = None if host.side is None else opposite(host.side)
    faces = tuple(dataclasses.replace(f, euler=f.euler - 1, boundary=f.boundary + (aid,)) if f.id == host.id else f
                  for f in d.faces) + (Face(fid, 1, True, (aid,), side),)
    nd = d.replace(
        arcs=d.arcs + (Arc(aid, None, True),),
        constituents=d.constituents + (Constituent(cid, ((aid, forward),)),),
        faces=faces,
        isolated=tuple(q for q in d.isolated if q.id != p),
    )
    orient = F.complex_orientation and pt.arrow is not None
    NF = F.replace(diagram=nd, chi_F=F.chi_F - 1, complex_orientation=orient)
    return _finish(NF, f"replacing isolated point {p} by an oval")


def oval_to_isolated(F: FloppyCurve, C: str) -> FloppyCurve:
    d = F.diagram
    con = d.constituent.get(C)
    if con is None:
        raise SurgeryError(f"no constituent {C!r}")
    if len(con.arcs) != 1 or not d.arc[con.arcs[0][0]].closed:
        raise SurgeryError(f"constituent {C} has crossings")
    aid, fwd = con.arcs[0]
    if d.arc[aid].flops:
        raise SurgeryError(f"constituent {C} carries flops")
    inner = [d.face[f] for f in d.arc_faces[aid]
             if d.face[f].euler == 1 and d.face[f].orientable and d.face[f].boundary == (aid,)
             and f not in {q.face for q in d.isolated} and f != d.w.face]
    if not inner:
        raise SurgeryError(f"constituent {C} does not bound an empty disk")
    disk = inner[0]
    host_id = next(f for f in d.arc_faces[aid] if f != disk.id)
    faces = tuple(
        dataclasses.replace(f, euler=f.euler + 1, boundary=tuple(a for a in f.boundary if a != aid))
        if f.id == host_id else f
        for f in d.faces if f.id != disk.id
    )
    pid = _fresh("p", (q.id for q in d.isolated))
    nd = d.replace(
        arcs=tuple(a for a in d.arcs if a.id != aid),
        constituents=tuple(c for c in d.constituents if c.id != C),
        faces=faces,
        isolated=d.isolated + (IsolatedPoint(pid, host_id, 1 if fwd else -1),),
    )
    NF = F.replace(diagram=nd, chi_F=F.chi_F + 1)
    return _finish(NF, f"shrinking oval {C} to an isolated point")


# ----------------------------------------------------------------------------
# ambient surgery


@dataclass(frozen=True)
class FaceUpdate:
    euler: int | None = None
    orientable: bool | None = None
    side: str | None = None
    add_boundary: tuple[str, ...] = ()


@dataclass(frozen=True)
class NewArc:
    """An arc added by a rewrite; ``thick=None`` lets propagation decide."""

    id: str
    ends: tuple[str, str] | None
    thick: bool | None
    flops: tuple[Flop, ...] = ()


@dataclass(frozen=True)
class ArcRewriteSpec:
    """The local picture of a surgery, made explicit.

    Removed arcs disappear from every face boundary automatically;
    ``origin`` maps a new arc to ``(old arc, same_direction)`` so that a
    complex orientation can be carried across the move.
    """

    remove_vertices: tuple[str, ...] = ()
    remove_arcs: tuple[str, ...] = ()
    remove_faces: tuple[str, ...] = ()
    remove_isolated: tuple[str, ...] = ()
    add_vertices: tuple[Vertex, ...] = ()
    add_arcs: tuple[NewArc, ...] = ()
    add_faces: tuple[Face, ...] = ()
    add_isolated: tuple[IsolatedPoint, ...] = ()
    update_faces: Mapping[str, FaceUpdate] = field(default_factory=dict)
    rename_faces: Mapping[str, str] = field(default_factory=dict)
    origin: Mapping[str, tuple[str, bool]] = field(default_factory=dict)
    one_sided: tuple[str, ...] | None = None
    assumptions: tuple[str, ...] = ()
    globals: Mapping[str, object] = field(default_factory=dict)


def propagate_thickness(d: CurveDiagram, arcs: Mapping[str, NewArc | Arc]) -> dict[str, bool]:
    """Fill in unknown start thicknesses so thickness is continuous at crossings.

    Raises :class:`NonorientableSurgeryError` on a contradiction.
    """
    known: dict[str, bool] = {a.id: a.thick for a in arcs.values() if a.thick is not None}
    nflops = {a.id: len(a.flops) for a in arcs.values()}

    def at(a: str, e: int, start: bool) -> bool:
        return start if e == 0 else start ^ (nflops[a] % 2 == 1)

    def start_from(a: str, e: int, value: bool) -> bool:
        return value if e == 0 else value ^ (nflops[a] % 2 == 1)

    for a in arcs.values():
        if a.ends is None and nflops[a.id] % 2:
            raise NonorientableSurgeryError(f"closed arc {a.id} carries an odd number of flops")
    links: dict[str, list] = {a: [] for a in arcs}
    for v in d.vertices:
        for s in (0, 1):
            e1, e2 = v.ends[s], v.ends[s + 2]
            for a_id, _ in (e1, e2):
                if a_id not in links:
                    raise SurgeryError(f"crossing {v.id} references unknown arc {a_id!r}")
            links[e1[0]].append((e1[1], e2))
            links[e2[0]].append((e2[1], e1))
    order = sorted(arcs, key=lambda a: (a not in known, list(arcs).index(a)))
    for seed in order:
        if seed not in known:
            known[seed] = True
        queue = deque([seed])
        while queue:
            a = queue.popleft()
            for e, (b, f) in links[a]:
                t = at(a, e, known[a])
                want = start_from(b, f, t)
                if b not in known:
                    known[b] = want
                    queue.append(b)
                elif known[b] != want:
                    raise NonorientableSurgeryError(
                        f"thickness cannot be chosen consistently along arcs {a} and {b}")
    return known


def ambient_surgery(F: FloppyCurve, kind: str, rewrite: ArcRewriteSpec) -> FloppyCurve:
    if kind not in DELTA_CHANGE:
        raise SurgeryError(f"unknown surgery kind {kind!r}")
    d = F.diagram
    rw = rewrite
    for name, ids, pool in (("crossing", rw.remove_vertices, d.vertex), ("arc", rw.remove_arcs, d.arc),
                            ("face", rw.remove_faces, d.face),
                            ("isolated point", rw.remove_isolated, {p.id for p in d.isolated})):
        for x in ids:
            if x not in pool:
                raise SurgeryError(f"rewrite removes unknown {name} {x!r}")
    gone_arcs = set(rw.remove_arcs)
    gone_faces = set(rw.remove_faces)

    old_orient = arc_orientation(d)
    prefer = {a: f for a, f in old_orient.items() if a not in gone_arcs}
    for new, (src, same) in rw.origin.items():
        if src in old_orient:
            prefer[new] = old_orient[src] == same

    work = {a.id: a for a in d.arcs if a.id not in gone_arcs}
    for a in rw.add_arcs:
        if a.id in work:
            raise SurgeryError(f"rewrite adds arc {a.id!r}, which already exists")
        work[a.id] = a
    verts = tuple(v for v in d.vertices if v.id not in set(rw.remove_vertices)) + tuple(rw.add_vertices)

    faces = []
    for f in d.faces:
        if f.id in gone_faces:
            continue
        b = tuple(a for a in f.boundary if a not in gone_arcs)
        u = rw.update_faces.get(f.id)
        if u is not None:
            f = Face(f.id, f.euler if u.euler is None else u.euler,
                     f.orientable if u.orientable is None else u.orientable,
                     b + tuple(u.add_boundary), f.side if u.side is None else u.side)
        else:
            f = dataclasses.replace(f, boundary=b)
        faces.append(f)
    for x in rw.update_faces:
        if x not in d.face or x in gone_faces:
            raise SurgeryError(f"rewrite updates unknown face {x!r}")
    faces.extend(rw.add_faces)

    provisional = [Arc(a.id, a.ends, bool(a.thick), tuple(a.flops)) for a in work.values()]
    probe = d.replace(vertices=verts, arcs=tuple(provisional))
    thick = propagate_thickness(probe, work)
    arcs = tuple(Arc(a.id, a.ends, thick[a.id], tuple(a.flops)) for a in work.values())

    iso = tuple(p for p in d.isolated if p.id not in set(rw.remove_isolated)) + tuple(rw.add_isolated)
    nd = CurveDiagram(verts, arcs, (), tuple(faces), iso, d.w)
    nd = _rename_faces(nd, rw.rename_faces)
    if rw.rename_faces:
        nd = nd.replace(faces=tuple(dataclasses.replace(f, id=rw.rename_faces.get(f.id, f.id)) for f in nd.faces))
    nd = _fill_sides(nd)

    touched = {c.id for c in d.constituents for a, _ in c.arcs if a in gone_arcs}
    keep = [c for c in d.constituents if c.id not in touched]
    kept_arcs = {a for c in keep for a, _ in c.arcs}
    loose = [a.id for a in arcs if a.id not in kept_arcs]
    cons, extends = _assign_constituents(nd, d, loose, keep, prefer, rw.one_sided, rw.origin)
    nd = nd.replace(constituents=cons)

    if F.dividing == "no":
        dividing = "no"
    elif kind == "figure_eight":
        dividing = "no"
    elif F.dividing == "yes" and F.complex_orientation:
        dividing = "yes" if extends else "no"
    else:
        dividing = "unknown"
    if dividing == "yes":
        nd = nd.replace(constituents=tuple(_orient_by(c, prefer) for c in nd.constituents))

    g = dict(rw.globals)
    NF = F.replace(diagram=nd, dividing=g.pop("dividing", dividing),
                   complex_orientation=dividing == "yes",
                   assumptions=F.assumptions + tuple(rw.assumptions))
    if g:
        unknown = set(g) - {"n", "c", "epsilon", "strongly_irreducible", "two_irreducible", "nu_plus", "nu_minus"}
        if unknown:
            raise SurgeryError(f"rewrite overrides unknown globals {sorted(unknown)}")
        NF = NF.replace(**g)
    if kind == "figure_eight":
        if NF.r_minus != F.r_minus + 1:
            raise SurgeryError("a figure-eight surgery must create exactly one negative crossing")
    target = delta(F) + DELTA_CHANGE[kind]
    NF = NF.replace(chi_F=target + NF.d_plus - NF.d_minus - NF.m ** 2 + 3 * NF.m)
    assert delta(NF) == target
    return _finish(NF, f"{kind} surgery")


def _fill_sides(d: CurveDiagram) -> CurveDiagram:
    """Give unlabeled faces the side forced by alternation with labeled neighbors."""
    if all(f.side in SIDES for f in d.faces):
        return d
    side = {f.id: f.side for f in d.faces if f.side in SIDES}
    adj: dict[str, set[str]] = {f.id: set() for f in d.faces}
    for a, fs in d.arc_faces.items():
        if len(fs) == 2 and fs[0] in adj and fs[1] in adj:
            adj[fs[0]].add(fs[1])
            adj[fs[1]].add(fs[0])
    queue = deque(side)
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if g not in side:
                side[g] = opposite(side[f])
                queue.append(g)
    return d.replace(faces=tuple(dataclasses.replace(f, side=side.get(f.id)) for f in d.faces))
