"""Walk through the sextic schemes with eleven ovals and a few smaller ones.

A ``not_prohibited`` line only means none of the implemented checks
fires.  ``1<10>``, for instance, is ruled out by a congruence that is
not among them.

    python3 demos/degree_six_catalog.py
"""

from floppy import nonsingular_curve, verdict
from floppy.engine import FAIL

SCHEMES = ["11", "9+1<1>", "5+1<5>", "1+1<9>", "1<10>", "10", "1<1<1>>"]


def main():
    for s in SCHEMES:
        rep = verdict(nonsingular_curve(s, 6))
        fails = [c for c in rep.checks if c.status == FAIL]
        why = ", ".join(f"{c.id} ({c.lhs} > {c.rhs})" if c.lhs is not None else c.id for c in fails)
        print(f"{s:>10}  h={rep.summary['h']:<3} {rep.overall:<30} {why}")


if __name__ == "__main__":
    main()
