"""Decorated cell complexes on the real projective plane.

A :class:`CurveDiagram` records the real part of a floppy curve up to
isotopy: crossings, arcs carrying thickness and flop marks, the
constituent circles they form, and the faces of the complement with
their declared Euler characteristic, orientability and side label.

Crossings carry the local picture.  ``Vertex.ends`` lists the four arc
ends meeting at the crossing in cyclic order, so ends 0/2 and 1/3 are
the two branches, and ``Vertex.corners[i]`` is the face occupying the
quadrant between ``ends[i]`` and ``ends[i + 1]``.  Corner simplicity,
shared corner points and crossing signs are all derived from this.
"""

from __future__ import annotations

import dataclasses
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

PLUS = "+"
MINUS = "-"
SIDES = (PLUS, MINUS)


def opposite(side: str) -> str:
    return MINUS if side == PLUS else PLUS


class DiagramError(ValueError):
    """Raised when a diagram cannot support the requested computation."""


class ColoringError(DiagramError):
    pass


@dataclass(frozen=True)
class Flop:
    """A flop mark; ``direction`` is the id of the face it points into."""

    direction: str


@dataclass(frozen=True)
class Arc:
    """An arc of the curve.

    ``ends`` holds the start and end vertex ids, or ``None`` for a closed
    loop without crossings.  ``thick`` is the thickness at the start; it
    flips at every flop along the arc.
    """

    id: str
    ends: tuple[str, str] | None
    thick: bool
    flops: tuple[Flop, ...] = ()

    @property
    def closed(self) -> bool:
        return self.ends is None

    def thick_at(self, end: int) -> bool:
        if end == 0:
            return self.thick
        return self.thick ^ (len(self.flops) % 2 == 1)

    def reversed(self) -> "Arc":
        ends = None if self.ends is None else (self.ends[1], self.ends[0])
        return Arc(self.id, ends, self.thick_at(1), tuple(reversed(self.flops)))


ArcEnd = tuple[str, int]


@dataclass(frozen=True)
class Vertex:
    id: str
    ends: tuple[ArcEnd, ArcEnd, ArcEnd, ArcEnd]
    corners: tuple[str, str, str, str]
    # Per side: does the non-simple corner / shared point at this vertex cross w.
    crosses_w: Mapping[str, bool | None] = field(default_factory=lambda: {PLUS: None, MINUS: None})

    def branch_partner(self, slot: int) -> int:
        return (slot + 2) % 4


@dataclass(frozen=True)
class Constituent:
    """An immersed circle, as a cyclic sequence of ``(arc id, forward)``."""

    id: str
    arcs: tuple[tuple[str, bool], ...]
    one_sided: bool = False


@dataclass(frozen=True)
class Face:
    id: str
    euler: int
    orientable: bool
    boundary: tuple[str, ...]
    side: str | None = None


@dataclass(frozen=True)
class IsolatedPoint:
    id: str
    face: str
    # Orientation an oval replacing this point would carry (+1/-1), if known.
    arrow: int | None = None


@dataclass(frozen=True)
class WSpec:
    """Where the orientation-reversing reference curve w lives.

    ``face`` is the home face when w lies in the complement; ``None``
    means w runs along the curve and only the per-vertex flags matter.
    """

    face: str | None = None


@dataclass(frozen=True)
class CurveDiagram:
    vertices: tuple[Vertex, ...] = ()
    arcs: tuple[Arc, ...] = ()
    constituents: tuple[Constituent, ...] = ()
    faces: tuple[Face, ...] = ()
    isolated: tuple[IsolatedPoint, ...] = ()
    w: WSpec = WSpec()

    @cached_property
    def vertex(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def arc(self) -> dict[str, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def face(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def constituent(self) -> dict[str, Constituent]:
        return {c.id: c for c in self.constituents}

    @cached_property
    def arc_faces(self) -> dict[str, list[str]]:
        """Faces on either side of each arc (one entry per incidence)."""
        out: dict[str, list[str]] = defaultdict(list)
        for f in self.faces:
            for a in f.boundary:
                out[a].append(f.id)
        return dict(out)

    @cached_property
    def end_slot(self) -> dict[ArcEnd, tuple[str, int]]:
        out = {}
        for v in self.vertices:
            for i, e in enumerate(v.ends):
                out[(e[0], int(e[1]))] = (v.id, i)
        return out

    @property
    def colored(self) -> bool:
        return all(f.side in SIDES for f in self.faces)

    def side_of(self, face_id: str) -> str:
        side = self.face[face_id].side
        if side not in SIDES:
            raise ColoringError(f"face {face_id!r} has no side label")
        return side

    def replace(self, **changes) -> "CurveDiagram":
        return dataclasses.replace(self, **changes)

    def euler_of_curve(self) -> int:
        """Euler characteristic of the curve itself (closed loops count 0)."""
        return len(self.vertices) - sum(1 for a in self.arcs if not a.closed)

    def flop_count(self) -> int:
        return sum(len(a.flops) for a in self.arcs)


def empty_diagram() -> CurveDiagram:
    return CurveDiagram(faces=(Face("f0", 1, False, (), MINUS),), w=WSpec("f0"))


# ----------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)

    def __bool__(self) -> bool:
        return self.ok


def _traverse_ends(arc_id: str, forward: bool) -> tuple[ArcEnd, ArcEnd]:
    """(entry end, exit end) of an arc traversed in the given direction."""
    if forward:
        return (arc_id, 0), (arc_id, 1)
    return (arc_id, 1), (arc_id, 0)


def thickness_violations(d: CurveDiagram) -> list[str]:
    """Thickness must be continuous along every branch through a crossing."""
    out = []
    for v in d.vertices:
        for s in (0, 1):
            e1, e2 = v.ends[s], v.ends[s + 2]
            a1, a2 = d.arc.get(e1[0]), d.arc.get(e2[0])
            if a1 is None or a2 is None:
                continue
            if a1.thick_at(e1[1]) != a2.thick_at(e2[1]):
                out.append(f"thickness jumps through crossing {v.id} along branch {e1[0]}/{e2[0]}")
    for a in d.arcs:
        if a.closed and len(a.flops) % 2:
            out.append(f"closed arc {a.id} has an odd number of flops")
    return out


def validate_diagram(d: CurveDiagram) -> ValidationReport:
    rep = ValidationReport()
    for kind, items in (("vertex", d.vertices), ("arc", d.arcs), ("constituent", d.constituents),
                        ("face", d.faces), ("isolated point", d.isolated)):
        dup = [k for k, n in Counter(x.id for x in items).items() if n > 1]
        for k in dup:
            rep.add(f"duplicate {kind} id {k!r}")
    if not d.faces:
        rep.add("diagram has no faces")
        return rep

    # crossings: four ends, each arc end used exactly once
    seen_ends: Counter = Counter()
    for v in d.vertices:
        if len(v.ends) != 4 or len(v.corners) != 4:
            rep.add(f"crossing {v.id} must have exactly 4 arc ends and 4 corners")
            continue
        for a_id, e in v.ends:
            a = d.arc.get(a_id)
            if a is None:
                rep.add(f"crossing {v.id} references unknown arc {a_id!r}")
                continue
            if a.closed or a.ends[int(e)] != v.id:
                rep.add(f"arc {a_id} end {e} does not sit at crossing {v.id}")
            seen_ends[(a_id, int(e))] += 1
    for a in d.arcs:
        if a.closed:
            continue
        for e in (0, 1):
            if a.ends[e] not in d.vertex:
                rep.add(f"arc {a.id} ends at unknown crossing {a.ends[e]!r}")
            elif seen_ends[(a.id, e)] != 1:
                rep.add(f"arc {a.id} end {e} appears {seen_ends[(a.id, e)]} times among crossing ends")

    # faces on both sides of every arc, with alternating labels
    af = d.arc_faces
    for a in d.arcs:
        fs = af.get(a.id, [])
        if len(fs) != 2:
            rep.add(f"arc {a.id} borders {len(fs)} face incidences, expected 2")
            continue
        if fs[0] == fs[1]:
            rep.add(f"arc {a.id} has the same face {fs[0]} on both sides")
        s0, s1 = d.face[fs[0]].side, d.face[fs[1]].side
        if s0 in SIDES and s1 in SIDES and s0 == s1:
            rep.add(f"side labels do not alternate across arc {a.id}")
        for fl in a.flops:
            if fl.direction not in fs:
                rep.add(f"flop on arc {a.id} points into {fl.direction!r}, which does not border it")
    for f in d.faces:
        for a in f.boundary:
            if a not in d.arc:
                rep.add(f"face {f.id} boundary names unknown arc {a!r}")
        if f.side is not None and f.side not in SIDES:
            rep.add(f"face {f.id} has bad side label {f.side!r}")
        if f.orientable and f.euler > 1:
            rep.add(f"orientable face {f.id} has Euler characteristic {f.euler} > 1")
        # only the whole plane (no boundary at all) reaches 1
        top = 1 if not f.boundary else 0
        if not f.orientable and f.euler > top:
            rep.add(f"non-orientable face {f.id} has Euler characteristic {f.euler} > {top}")
    if sum(1 for f in d.faces if not f.orientable) > 1:
        rep.add("more than one non-orientable face (two one-sided loops would meet)")

    # corners agree with the arcs and alternate sides
    for v in d.vertices:
        if len(v.ends) != 4 or len(v.corners) != 4:
            continue
        for i, fid in enumerate(v.corners):
            f = d.face.get(fid)
            if f is None:
                rep.add(f"crossing {v.id} corner {i} names unknown face {fid!r}")
                continue
            for a_id, _ in (v.ends[i], v.ends[(i + 1) % 4]):
                if a_id not in f.boundary:
                    rep.add(f"corner {i} of crossing {v.id} lies in face {fid}, which does not border arc {a_id}")
            nxt = d.face.get(v.corners[(i + 1) % 4])
            if nxt is not None and f.side in SIDES and f.side == nxt.side:
                rep.add(f"corner sides do not alternate around crossing {v.id}")

    # constituents partition the arcs and follow the branches
    used = Counter(a for c in d.constituents for a, _ in c.arcs)
    for a in d.arcs:
        if used[a.id] != 1:
            rep.add(f"arc {a.id} belongs to {used[a.id]} constituents")
    for c in d.constituents:
        if not c.arcs:
            rep.add(f"constituent {c.id} is empty")
            continue
        if any(a not in d.arc for a, _ in c.arcs):
            rep.add(f"constituent {c.id} names an unknown arc")
            continue
        if len(c.arcs) == 1 and d.arc[c.arcs[0][0]].closed:
            pass
        else:
            for i, (a_id, fwd) in enumerate(c.arcs):
                if d.arc[a_id].closed:
                    rep.add(f"closed arc {a_id} cannot share constituent {c.id} with other arcs")
                    break
                _, exit_end = _traverse_ends(a_id, fwd)
                nxt_id, nxt_fwd = c.arcs[(i + 1) % len(c.arcs)]
                entry, _ = _traverse_ends(nxt_id, nxt_fwd)
                s1, s2 = d.end_slot.get(exit_end), d.end_slot.get(entry)
                if s1 is None or s2 is None or s1[0] != s2[0] or (s1[1] - s2[1]) % 4 != 2:
                    rep.add(f"constituent {c.id} does not pass straight from {a_id} to {nxt_id}")
        flops = sum(len(d.arc[a].flops) for a, _ in c.arcs)
        if flops % 2:
            rep.add(f"constituent {c.id} carries an odd number of flops ({flops})")

    for msg in thickness_violations(d):
        rep.add(msg)

    n_one = sum(1 for c in d.constituents if c.one_sided)
    if n_one % 2:
        rep.add(f"{n_one} one-sided constituents: the curve is not null-homologous mod 2")

    for p in d.isolated:
        if p.face not in d.face:
            rep.add(f"isolated point {p.id} lies in unknown face {p.face!r}")
    if d.w.face is not None and d.w.face not in d.face:
        rep.add(f"w lies in unknown face {d.w.face!r}")
    if d.w.face is not None and d.face.get(d.w.face) is not None and d.face[d.w.face].orientable:
        rep.add(f"w must be orientation reversing but its home face {d.w.face} is orientable")
    if d.w.face is None and any(not f.orientable for f in d.faces):
        rep.add("complement is non-orientable, so w must lie in a face")

    total = d.euler_of_curve() + sum(f.euler for f in d.faces)
    if total != 1:
        rep.add(f"generalized Euler identity fails: V - E + sum(chi) = {total}, expected 1")
    return rep


# ----------------------------------------------------------------------------
# coloring


def face_adjacency(d: CurveDiagram) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {f.id: set() for f in d.faces}
    for a, fs in d.arc_faces.items():
        if len(fs) == 2:
            adj[fs[0]].add(fs[1])
            adj[fs[1]].add(fs[0])
    return adj


def canonical_anchor(d: CurveDiagram) -> str | None:
    """A face known to lie on the canonical minus side, if one exists.

    The home face of w, or any non-orientable face, contains an
    orientation-reversing loop missing the curve, so the curve is
    null-homologous in the complement of any of its points.
    """
    if d.w.face is not None:
        return d.w.face
    for f in d.faces:
        if not f.orientable:
            return f.id
    return None


def color_canonical(d: CurveDiagram) -> CurveDiagram:
    if any(c.one_sided for c in d.constituents):
        raise ColoringError("canonical coloring needs every constituent null-homologous")
    anchor = canonical_anchor(d)
    if anchor is None:
        raise ColoringError("complement is orientable and w lies on the curve: no canonical anchor")
    adj = face_adjacency(d)
    for a, fs in d.arc_faces.items():
        if len(fs) == 2 and fs[0] == fs[1]:
            raise ColoringError(f"arc {a} has face {fs[0]} on both sides; complement is not two-colorable")
    side = {anchor: MINUS}
    queue = deque([anchor])
    while queue:
        f = queue.popleft()
        for g in sorted(adj[f]):
            want = opposite(side[f])
            if g not in side:
                side[g] = want
                queue.append(g)
            elif side[g] != want:
                raise ColoringError("complement is not two-colorable: curve is not null-homologous mod 2")
    missing = [f.id for f in d.faces if f.id not in side]
    if missing:
        raise ColoringError(f"faces {missing} are not reachable from the anchor face")
    faces = tuple(dataclasses.replace(f, side=side[f.id]) for f in d.faces)
    return d.replace(faces=faces)


def coloring_is_canonical(d: CurveDiagram) -> bool | None:
    """True/False if the labels match/oppose the canonical ones; None if undecidable."""
    try:
        can = color_canonical(d)
    except ColoringError:
        return None
    same = all(d.face[f.id].side == f.side for f in can.faces)
    flipped = all(d.face[f.id].side == opposite(f.side) for f in can.faces)
    if same:
        return True
    if flipped:
        return False
    return None


def swap_sides(d: CurveDiagram) -> CurveDiagram:
    faces = tuple(dataclasses.replace(f, side=opposite(f.side)) for f in d.faces)
    cw = {v.id: {PLUS: v.crosses_w.get(MINUS), MINUS: v.crosses_w.get(PLUS)} for v in d.vertices}
    verts = tuple(dataclasses.replace(v, crosses_w=cw[v.id]) for v in d.vertices)
    return d.replace(faces=faces, vertices=verts)


# ----------------------------------------------------------------------------
# region data


@dataclass(frozen=True)
class RegionProfile:
    face: str
    chi: int
    s: int
    p: int
    n_cross: int
    iota: int
    O: int
    relevant: bool
    side: str
    orientable: bool


def _crosses(d: CurveDiagram, v: Vertex, side: str) -> bool | None:
    # w inside a face never meets a crossing
    if d.w.face is not None:
        return False
    return v.crosses_w.get(side)


def corner_data(d: CurveDiagram):
    """Per-face corner tallies and the shared corner table.

    Returns ``(simple, nonsimple, shared)`` where ``nonsimple[f]`` is a
    list of crossing flags (True/False/None) and ``shared[(R, R')]`` lists
    the flags of corner points shared by distinct same-side faces.
    """
    simple: Counter = Counter()
    nonsimple: dict[str, list] = defaultdict(list)
    shared: dict[tuple[str, str], list] = defaultdict(list)
    for v in d.vertices:
        for i in (0, 1):
            f1, f2 = v.corners[i], v.corners[i + 2]
            side = d.side_of(f1)
            flag = _crosses(d, v, side)
            if f1 == f2:
                nonsimple[f1].append(flag)
            else:
                simple[f1] += 1
                simple[f2] += 1
                shared[(f1, f2)].append(flag)
                shared[(f2, f1)].append(flag)
    return simple, nonsimple, shared


def flop_balance(d: CurveDiagram) -> dict[str, int]:
    """O(R): flops on the boundary of R pointing out minus those pointing in."""
    out: Counter = Counter()
    af = d.arc_faces
    for a in d.arcs:
        fs = af.get(a.id, [])
        for fl in a.flops:
            for f in fs:
                out[f] += -1 if fl.direction == f else 1
    return {f.id: out[f.id] for f in d.faces}


def region_profiles(d: CurveDiagram, k: int) -> list[RegionProfile]:
    if not d.colored:
        raise ColoringError("region profiles need a colored diagram")
    simple, nonsimple, _ = corner_data(d)
    iota = Counter(p.face for p in d.isolated)
    O = flop_balance(d)
    out = []
    for f in d.faces:
        relevant = f.orientable or k % 2 == 1
        flags = nonsimple.get(f.id, [])
        n_cross = sum(1 for x in flags if x)
        if k % 2 == 1:
            p = len(flags)
        else:
            if relevant and any(x is None for x in flags):
                raise DiagramError(f"k is even and face {f.id} has non-simple corners without w flags")
            p = sum(1 for x in flags if not x)
        out.append(RegionProfile(f.id, f.euler, simple[f.id], p, n_cross, iota[f.id], O[f.id],
                                 relevant, f.side, f.orientable))
    return out


def shared_corners(d: CurveDiagram) -> dict[tuple[str, str], tuple[int | None, int | None]]:
    """(R, R') -> (shared points not crossing w, shared points crossing w).

    Counts are ``None`` when some flag is unknown; only matters for k even.
    """
    _, _, shared = corner_data(d)
    out = {}
    for key, flags in shared.items():
        if any(x is None for x in flags):
            out[key] = (len(flags), None)
        else:
            cross = sum(1 for x in flags if x)
            out[key] = (len(flags) - cross, cross)
    return out


def chi_side(d: CurveDiagram, side: str) -> int:
    """Euler characteristic of the closed set B^side.

    Closed faces of one side cover the whole curve (every arc borders both
    sides), and isolated points lying on the opposite side are adjoined.
    """
    if not d.colored:
        raise ColoringError("chi_side needs a colored diagram")
    chi = sum(f.euler for f in d.faces if f.side == side) + d.euler_of_curve()
    chi += sum(1 for p in d.isolated if d.face[p.face].side == opposite(side))
    return chi


def flop_total(d: CurveDiagram, side: str) -> int:
    """O^side: flops pointing out of B^side minus those pointing in."""
    O = flop_balance(d)
    return sum(O[f.id] for f in d.faces if f.side == side)


def crossing_signs(d: CurveDiagram) -> tuple[int, int]:
    """(r_plus, r_minus): a crossing is positive iff both branches share thickness."""
    rp = rm = 0
    for v in d.vertices:
        t = []
        for s in (0, 1):
            a_id, e = v.ends[s]
            t.append(d.arc[a_id].thick_at(e))
        if t[0] == t[1]:
            rp += 1
        else:
            rm += 1
    return rp, rm


def isolated_by_side(d: CurveDiagram) -> tuple[int, int]:
    ip = sum(1 for p in d.isolated if d.face[p.face].side == PLUS)
    return ip, len(d.isolated) - ip


# ----------------------------------------------------------------------------
# constituent tracing


def trace_constituents(d: CurveDiagram, prefer: Mapping[str, bool] | None = None,
                       order: Iterable[str] | None = None) -> list[tuple[tuple[str, bool], ...]]:
    """Trace the immersed circles formed by the arcs.

    ``prefer`` maps arc ids to a preferred traversal direction; a cycle is
    started from the first arc (in ``order``) that carries a preference.
    """
    prefer = prefer or {}
    order = list(order) if order is not None else [a.id for a in d.arcs]
    done: set[str] = set()
    cycles = []
    for start in order:
        if start in done:
            continue
        a = d.arc[start]
        if a.closed:
            done.add(start)
            cycles.append(((start, prefer.get(start, True)),))
            continue
        fwd = prefer.get(start, True)
        cyc = []
        cur, cur_fwd = start, fwd
        while True:
            cyc.append((cur, cur_fwd))
            done.add(cur)
            exit_end = (cur, 1) if cur_fwd else (cur, 0)
            vid, slot = d.end_slot[exit_end]
            nxt_id, nxt_e = d.vertex[vid].ends[(slot + 2) % 4]
            nxt_fwd = nxt_e == 0
            if nxt_id == start and nxt_fwd == fwd:
                break
            if nxt_id in done and (nxt_id, nxt_fwd) in cyc:
                break
            cur, cur_fwd = nxt_id, nxt_fwd
        cycles.append(tuple(cyc))
    return cycles


def arc_orientation(d: CurveDiagram) -> dict[str, bool]:
    """Arc id -> whether its own direction agrees with its constituent's."""
    return {a: fwd for c in d.constituents for a, fwd in c.arcs}


def dump(d: CurveDiagram) -> str:
    """Short human-readable listing, for debugging."""
    lines = []
    for f in d.faces:
        lines.append(f"face {f.id}: chi={f.euler} {'or' if f.orientable else 'non-or'} side={f.side} "
                     f"boundary={list(f.boundary)}")
    for v in d.vertices:
        lines.append(f"crossing {v.id}: ends={list(v.ends)} corners={list(v.corners)}")
    for c in d.constituents:
        arcs = " ".join(a if f else "~" + a for a, f in c.arcs)
        lines.append(f"constituent {c.id}{' (one-sided)' if c.one_sided else ''}: {arcs}")
    for p in d.isolated:
        lines.append(f"isolated {p.id} in {p.face}")
    return "\n".join(lines)


def to_dot(d: CurveDiagram) -> str:
    """Face adjacency graph in graphviz syntax (debug aid)."""
    lines = ["graph faces {"]
    for f in d.faces:
        lines.append(f'  "{f.id}" [label="{f.id}\\nchi={f.euler} {f.side or "?"}"];')
    for a, fs in sorted(d.arc_faces.items()):
        if len(fs) == 2:
            lines.append(f'  "{fs[0]}" -- "{fs[1]}" [label="{a}"];')
    lines.append("}")
    return "\n".join(lines)
