"""Replay the two octic derivations and show where the link congruence breaks.

Both start from the M-curve of degree 8 with scheme 1<2+1<18>>.  The first
joins the 18 inner ovals in pairs by simple surgeries; the second first
joins two ovals across the wall of the nest, twice, then pairs up the rest.

    python3 demos/octic_derivations.py
"""

from pathlib import Path

from floppy import verdict
from floppy.curve import delta, harnack_h
from floppy.fileformat import load_json, run_derivation

HERE = Path(__file__).resolve().parent
DERIVATIONS = HERE.parent / "data" / "derivations"


def main():
    for name in ("case1", "case2"):
        der = run_derivation(load_json(DERIVATIONS / f"{name}.fcd"), DERIVATIONS)
        F = der.final
        print(f"== {name}: {len(der.steps)} moves")
        print(f"   defect {delta(der.base)} -> {delta(F)}, h {harnack_h(der.base)} -> {harnack_h(F)}, "
              f"constituents {der.base.ell} -> {F.ell}, d+ {F.d_plus}, dividing {F.dividing}")
        rep = verdict(F, der.link)
        c = rep.check("arf_congruence")
        print(f"   Arf from the spanning surface: {c.lhs}; value required by the congruence: {c.rhs}")
        print(f"   verdict: {rep.overall}")
        for a in rep.under[:2]:
            print(f"     assuming {a}")
        if len(rep.under) > 2:
            print(f"     ... and {len(rep.under) - 2} more assumptions")


if __name__ == "__main__":
    main()
