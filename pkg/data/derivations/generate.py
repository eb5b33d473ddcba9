"""Regenerate case1.fcd and case2.fcd from the surgery templates.

Run from anywhere:  python3 data/derivations/generate.py
"""

from __future__ import annotations

import json
from pathlib import Path

from floppy.fileformat import apply_move, rewrite_to_dict, run_derivation
from floppy.templates import cross_wall, join_ovals

HERE = Path(__file__).resolve().parent
SCHEME, DEGREE = "1<2+1<18>>", 8
EVEN = [f"c{i}" for i in range(5, 23)]

ORIENTATION_NOTE = ("complex orientation of the base deduced from orientation alternation along a pencil "
                    "and the complex orientation formula")


def _surgery(F, kind, rw, moves):
    mv = {"op": "ambient_surgery", "kind": kind, **rewrite_to_dict(rw)}
    F, _ = apply_move(F, mv, len(moves) + 1)
    moves.append(mv)
    return F


def _base(reversed_: list[str]) -> dict:
    return {
        "base": {"scheme": SCHEME, "degree": DEGREE},
        "orientation": {"reversed": reversed_},
        "assumptions": [ORIENTATION_NOTE],
    }


def case1() -> dict:
    doc = _base(EVEN[1::2])
    F = run_derivation(doc).final
    moves: list[dict] = []
    for a, b in zip(EVEN[::2], EVEN[1::2]):
        F = _surgery(F, "simple", join_ovals(F, a, b), moves)
    doc["moves"] = moves
    doc["link"] = {"q": "q_three_eighths", "gamma": 2, "classes": [], "proper": True,
                   "surface": {"e": -4, "lambda": -3, "brown": 1}}
    return doc


def case2() -> dict:
    doc = _base(EVEN[3::2])
    F = run_derivation(doc).final
    moves: list[dict] = []
    F = _surgery(F, "crossing", cross_wall(F, "c5", "a4", "c2"), moves)
    # The wall is now split; cross the piece still bordering both faces.
    wall = next(a for a in F.diagram.constituent["c4"].arcs
                if sorted(F.diagram.arc_faces[a[0]]) == ["f1", "f4"])[0]
    F = _surgery(F, "crossing", cross_wall(F, "c6", wall, "c3"), moves)
    for a, b in zip(EVEN[2::2], EVEN[3::2]):
        F = _surgery(F, "simple", join_ovals(F, a, b), moves)
    doc["moves"] = moves
    doc["link"] = {"q": "q_minus_eighth", "gamma": 0, "classes": [], "proper": True,
                   "surface": {"e": 0, "lambda": -3, "brown": 1}}
    return doc


def main() -> None:
    for name, build in (("case1", case1), ("case2", case2)):
        path = HERE / f"{name}.fcd"
        path.write_text(json.dumps(build(), indent=1) + "\n", encoding="utf-8")
        print("wrote", path)


if __name__ == "__main__":
    main()
