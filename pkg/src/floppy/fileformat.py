"""Reading and writing diagram files and derivation scripts (JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .arf import LinkError, LinkInstance, link_from_dict
from .curve import FloppyCurve, chi_from_delta, nonsingular_curve
from .diagram import (
    SIDES,
    Arc,
    ColoringError,
    Constituent,
    CurveDiagram,
    Face,
    Flop,
    IsolatedPoint,
    Vertex,
    WSpec,
    color_canonical,
)
from .scheme import SchemeError
from .surgery import (
    ArcRewriteSpec,
    FaceUpdate,
    NewArc,
    SurgeryError,
    ambient_surgery,
    isolated_to_oval,
    oval_to_isolated,
    resolve_conjugate_pair,
    resolve_crossing,
)

GLOBAL_KEYS = ("nu_plus", "nu_minus", "n", "c", "epsilon", "dividing", "strongly_irreducible",
               "two_irreducible", "complex_orientation")


class FormatError(ValueError):
    """Malformed input file."""


def _side(x):
    if x is None:
        return None
    x = {"−": "-"}.get(x, x)
    if x not in SIDES:
        raise FormatError(f"side must be '+' or '-', got {x!r}")
    return x


def _arc_ref(s: str) -> tuple[str, bool]:
    return (s[1:], False) if s.startswith("~") else (s, True)


def _end(x) -> tuple[str, int]:
    if not isinstance(x, (list, tuple)) or len(x) != 2 or x[1] not in (0, 1):
        raise FormatError(f"arc end must be [arc_id, 0|1], got {x!r}")
    return (str(x[0]), int(x[1]))


def _crosses(obj) -> dict:
    raw = obj or {}
    return {"+": raw.get("+"), "-": raw.get("-", raw.get("−"))}


def vertex_from_dict(v: dict) -> Vertex:
    return Vertex(str(v["id"]), tuple(_end(e) for e in v["ends"]), tuple(str(c) for c in v["corners"]),
                  _crosses(v.get("crosses_w")))


def arc_from_dict(a: dict, allow_unknown: bool = False):
    ends = a.get("ends")
    ends = None if ends is None else (str(ends[0]), str(ends[1]))
    flops = tuple(Flop(str(f)) for f in a.get("flops", []))
    thick = a.get("thick", None if allow_unknown else True)
    if allow_unknown:
        return NewArc(str(a["id"]), ends, thick, flops)
    return Arc(str(a["id"]), ends, bool(thick), flops)


def face_from_dict(f: dict) -> Face:
    return Face(str(f["id"]), int(f["euler"]), bool(f["orientable"]), tuple(str(a) for a in f.get("boundary", [])),
                _side(f.get("side")))


def isolated_from_dict(p: dict) -> IsolatedPoint:
    return IsolatedPoint(str(p["id"]), str(p["face"]), p.get("arrow"))


def diagram_from_dict(obj: dict) -> CurveDiagram:
    try:
        w = obj.get("w", "on-curve")
        if isinstance(w, dict):
            w = WSpec(w.get("face"))
        elif w == "on-curve" or w is None:
            w = WSpec(None)
        else:
            w = WSpec(str(w))
        d = CurveDiagram(
            vertices=tuple(vertex_from_dict(v) for v in obj.get("vertices", [])),
            arcs=tuple(arc_from_dict(a) for a in obj.get("arcs", [])),
            constituents=tuple(
                Constituent(str(c["id"]), tuple(_arc_ref(a) for a in c["arcs"]), bool(c.get("one_sided", False)))
                for c in obj.get("constituents", [])),
            faces=tuple(face_from_dict(f) for f in obj.get("faces", [])),
            isolated=tuple(isolated_from_dict(p) for p in obj.get("isolated", [])),
            w=w,
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed diagram: {exc!r}") from exc
    if not d.colored:
        if any(f.side is not None for f in d.faces):
            raise FormatError("either label every face with a side or none of them")
        try:
            d = color_canonical(d)
        except ColoringError as exc:
            raise FormatError(f"cannot color the diagram: {exc}") from exc
    return d


def diagram_to_dict(d: CurveDiagram) -> dict:
    def vx(v: Vertex) -> dict:
        out = {"id": v.id, "ends": [list(e) for e in v.ends], "corners": list(v.corners)}
        flags = {k: x for k, x in v.crosses_w.items() if x is not None}
        if flags:
            out["crosses_w"] = flags
        return out

    return {
        "vertices": [vx(v) for v in d.vertices],
        "arcs": [{"id": a.id, "ends": None if a.ends is None else list(a.ends), "thick": a.thick,
                  "flops": [f.direction for f in a.flops]} for a in d.arcs],
        "constituents": [{"id": c.id, "arcs": [a if f else "~" + a for a, f in c.arcs], "one_sided": c.one_sided}
                         for c in d.constituents],
        "faces": [{"id": f.id, "euler": f.euler, "orientable": f.orientable, "side": f.side,
                   "boundary": list(f.boundary)} for f in d.faces],
        "isolated": [{"id": p.id, "face": p.face, **({"arrow": p.arrow} if p.arrow is not None else {})}
                     for p in d.isolated],
        "w": {"face": d.w.face} if d.w.face is not None else "on-curve",
    }


def curve_from_dict(obj: dict) -> FloppyCurve:
    """A curve from a diagram document; supplied globals become assumptions."""
    if "degree" not in obj:
        raise FormatError("diagram file needs a 'degree'")
    d = diagram_from_dict(obj)
    m = int(obj["degree"])
    g = dict(obj.get("global", {}))
    unknown = set(g) - set(GLOBAL_KEYS) - {"chi_F", "delta"}
    if unknown:
        raise FormatError(f"unknown global keys {sorted(unknown)}")
    kw = {k: g[k] for k in GLOBAL_KEYS if k in g}
    if "chi_F" in g:
        chi = int(g["chi_F"])
    elif "delta" in g:
        chi = chi_from_delta(d, m, int(g["delta"]), int(g.get("nu_plus", 0)), int(g.get("nu_minus", 0)))
    else:
        raise FormatError("global block needs 'chi_F' or 'delta'")
    assumptions = [f"{k}={_show(g[k])} (supplied)" for k in GLOBAL_KEYS if k in g and k != "complex_orientation"]
    assumptions += [str(a) for a in obj.get("assumptions", [])]
    return FloppyCurve(d, m, chi, assumptions=tuple(assumptions), **kw)


def _show(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


# ----------------------------------------------------------------------------
# derivation scripts


def rewrite_from_dict(obj: dict) -> ArcRewriteSpec:
    rem = obj.get("remove", {})
    add = obj.get("add", {})
    try:
        return ArcRewriteSpec(
            remove_vertices=tuple(rem.get("vertices", [])),
            remove_arcs=tuple(rem.get("arcs", [])),
            remove_faces=tuple(rem.get("faces", [])),
            remove_isolated=tuple(rem.get("isolated", [])),
            add_vertices=tuple(vertex_from_dict(v) for v in add.get("vertices", [])),
            add_arcs=tuple(arc_from_dict(a, allow_unknown=True) for a in add.get("arcs", [])),
            add_faces=tuple(face_from_dict(f) for f in add.get("faces", [])),
            add_isolated=tuple(isolated_from_dict(p) for p in add.get("isolated", [])),
            update_faces={k: FaceUpdate(u.get("euler"), u.get("orientable"), _side(u.get("side")),
                                        tuple(u.get("add_boundary", [])))
                          for k, u in obj.get("update_faces", {}).items()},
            rename_faces=dict(obj.get("rename_faces", {})),
            origin={k: (str(v[0]), bool(v[1])) for k, v in obj.get("origin", {}).items()},
            one_sided=None if obj.get("one_sided") is None else tuple(obj["one_sided"]),
            assumptions=tuple(obj.get("assumptions", [])),
            globals=dict(obj.get("globals", {})),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed rewrite: {exc!r}") from exc


def rewrite_to_dict(rw: ArcRewriteSpec) -> dict:
    def arc(a: NewArc) -> dict:
        return {"id": a.id, "ends": None if a.ends is None else list(a.ends), "thick": a.thick,
                "flops": [f.direction for f in a.flops]}

    out: dict[str, Any] = {}
    rem = {k: list(v) for k, v in (("vertices", rw.remove_vertices), ("arcs", rw.remove_arcs),
                                   ("faces", rw.remove_faces), ("isolated", rw.remove_isolated)) if v}
    if rem:
        out["remove"] = rem
    add = {}
    if rw.add_vertices:
        add["vertices"] = diagram_to_dict(CurveDiagram(vertices=rw.add_vertices))["vertices"]
    if rw.add_arcs:
        add["arcs"] = [arc(a) for a in rw.add_arcs]
    if rw.add_faces:
        add["faces"] = diagram_to_dict(CurveDiagram(faces=rw.add_faces))["faces"]
    if rw.add_isolated:
        add["isolated"] = diagram_to_dict(CurveDiagram(isolated=rw.add_isolated))["isolated"]
    if add:
        out["add"] = add
    if rw.update_faces:
        out["update_faces"] = {
            k: {key: val for key, val in (("euler", u.euler), ("orientable", u.orientable), ("side", u.side),
                                          ("add_boundary", list(u.add_boundary))) if val not in (None, [])}
            for k, u in rw.update_faces.items()}
    if rw.rename_faces:
        out["rename_faces"] = dict(rw.rename_faces)
    if rw.origin:
        out["origin"] = {k: [src, same] for k, (src, same) in rw.origin.items()}
    if rw.one_sided is not None:
        out["one_sided"] = list(rw.one_sided)
    if rw.assumptions:
        out["assumptions"] = list(rw.assumptions)
    if rw.globals:
        out["globals"] = dict(rw.globals)
    return out


@dataclass
class Derivation:
    base: FloppyCurve
    final: FloppyCurve
    link: LinkInstance | None
    steps: list[str]


def _base_curve(obj: dict, where: Path | None) -> FloppyCurve:
    base = obj.get("base")
    if not isinstance(base, dict):
        raise FormatError("derivation needs a 'base' object")
    if "scheme" in base:
        F = nonsingular_curve(base["scheme"], int(base["degree"]))
    elif "diagram" in base:
        F = curve_from_dict(base["diagram"])
    elif "diagram_file" in base:
        path = Path(base["diagram_file"])
        if where is not None and not path.is_absolute():
            path = where / path
        F = curve_from_dict(load_json(path))
    else:
        raise FormatError("base needs 'scheme' and 'degree', 'diagram', or 'diagram_file'")
    g = dict(obj.get("globals", {}))
    unknown = set(g) - set(GLOBAL_KEYS)
    if unknown:
        raise FormatError(f"unknown global keys {sorted(unknown)}")
    if g:
        F = F.replace(**g)
    orient = obj.get("orientation")
    if orient is not None:
        rev = set(orient.get("reversed", []))
        missing = rev - set(F.diagram.constituent)
        if missing:
            raise FormatError(f"orientation names unknown constituents {sorted(missing)}")
        cons = tuple(Constituent(c.id, tuple((a, not f) for a, f in reversed(c.arcs)), c.one_sided)
                     if c.id in rev else c for c in F.diagram.constituents)
        from .curve import (
            harnack_h,  # local: only needed to fill in the forced dividing status
        )
        dividing = F.dividing
        if dividing == "unknown" and harnack_h(F) == 0:
            dividing = "yes"
        if dividing != "yes":
            raise FormatError("a complex orientation needs a dividing base curve")
        F = F.replace(diagram=F.diagram.replace(constituents=cons), dividing=dividing, complex_orientation=True)
    assumptions = tuple(str(a) for a in obj.get("assumptions", []))
    return F.replace(assumptions=F.assumptions + assumptions)


def apply_move(F: FloppyCurve, mv: dict, index: int) -> tuple[FloppyCurve, str]:
    op = mv.get("op")
    if op == "resolve_crossing":
        G = resolve_crossing(F, mv["vertex"], mv["choice"], mv.get("merged_orientable"), mv.get("one_sided"))
        return G, f"resolved crossing {mv['vertex']} ({mv['choice']})"
    if op == "resolve_conjugate_pair":
        return resolve_conjugate_pair(F, _side(mv["sign"])), f"resolved a conjugate pair ({mv['sign']})"
    if op == "isolated_to_oval":
        return isolated_to_oval(F, mv["point"]), f"isolated point {mv['point']} -> oval"
    if op == "oval_to_isolated":
        return oval_to_isolated(F, mv["constituent"]), f"oval {mv['constituent']} -> isolated point"
    if op == "ambient_surgery":
        kind = mv["kind"]
        G = ambient_surgery(F, kind, rewrite_from_dict(mv))
        note = f"move {index}: membrane for the {kind} surgery is admissible"
        return G.replace(assumptions=G.assumptions + (note,)), f"{kind} surgery"
    raise FormatError(f"unknown move op {op!r}")


def run_derivation(obj: dict, where: Path | None = None) -> Derivation:
    F0 = _base_curve(obj, where)
    F = F0
    steps = []
    for i, mv in enumerate(obj.get("moves", []), 1):
        try:
            F, what = apply_move(F, mv, i)
        except (KeyError, TypeError) as exc:
            raise FormatError(f"move {i} is malformed: {exc!r}") from exc
        except SurgeryError as exc:
            raise SurgeryError(f"move {i}: {exc}") from exc
        steps.append(what)
    link = None
    if "link" in obj:
        link = link_from_dict(obj["link"])
    return Derivation(F0, F, link, steps)


def load_json(path: Path | str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: top level must be an object")
    return obj


INPUT_ERRORS = (FormatError, SchemeError, SurgeryError, LinkError)
