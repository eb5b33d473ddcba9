"""Floppy curves: a diagram together with the global invariants of the surface."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property

from .diagram import (
    MINUS,
    PLUS,
    CurveDiagram,
    crossing_signs,
    flop_total,
    isolated_by_side,
)
from .scheme import SchemeExpr, expand_scheme, parse_scheme

DIVIDING_VALUES = ("yes", "no", "unknown")


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class FloppyCurve:
    """A floppy curve of degree ``m``.

    ``complex_orientation`` is ``True`` when the constituent directions of
    the diagram are a complex orientation of a dividing curve.
    ``assumptions`` lists hypotheses the data rests on; they are echoed
    into every verdict.
    """

    diagram: CurveDiagram
    m: int
    chi_F: int
    nu_plus: int = 0
    nu_minus: int = 0
    n: int = 1
    c: int = 1
    epsilon: int = 0
    dividing: str = "unknown"
    strongly_irreducible: bool = True
    two_irreducible: bool = True
    complex_orientation: bool = False
    assumptions: tuple[str, ...] = field(default=())

    def replace(self, **changes) -> "FloppyCurve":
        return dataclasses.replace(self, **changes)

    @property
    def k(self) -> int:
        return self.m // 2

    @cached_property
    def _signs(self) -> tuple[int, int]:
        return crossing_signs(self.diagram)

    @property
    def r_plus(self) -> int:
        return self._signs[0]

    @property
    def r_minus(self) -> int:
        return self._signs[1]

    @property
    def r(self) -> int:
        return self.r_plus + self.r_minus

    @cached_property
    def _iota(self) -> tuple[int, int]:
        return isolated_by_side(self.diagram)

    @property
    def iota_plus(self) -> int:
        return self._iota[0]

    @property
    def iota_minus(self) -> int:
        return self._iota[1]

    @property
    def iota(self) -> int:
        return len(self.diagram.isolated)

    @property
    def nu(self) -> int:
        return self.nu_plus + self.nu_minus

    @property
    def d_plus(self) -> int:
        return 2 * self.nu_plus + self.iota + self.r_plus

    @property
    def d_minus(self) -> int:
        return 2 * self.nu_minus + self.r_minus

    @property
    def d(self) -> int:
        return 2 * self.nu + self.iota + self.r

    @property
    def ell(self) -> int:
        return len(self.diagram.constituents)

    def O(self, side: str) -> int:
        return flop_total(self.diagram, side)

    def summary(self) -> dict:
        return {
            "degree": self.m,
            "chi_F": self.chi_F,
            "delta": delta(self),
            "h": harnack_h(self),
            "ell": self.ell,
            "d_plus": self.d_plus,
            "d_minus": self.d_minus,
            "r_plus": self.r_plus,
            "r_minus": self.r_minus,
            "iota_plus": self.iota_plus,
            "iota_minus": self.iota_minus,
            "nu_plus": self.nu_plus,
            "nu_minus": self.nu_minus,
            "n": self.n,
            "c": self.c,
            "epsilon": self.epsilon,
            "dividing": self.dividing,
            "strongly_irreducible": self.strongly_irreducible,
            "two_irreducible": self.two_irreducible,
            "O_plus": self.O(PLUS) if self.diagram.colored else None,
        }


def delta(F: FloppyCurve) -> int:
    return F.chi_F - F.d_plus + F.d_minus + F.m ** 2 - 3 * F.m


def harnack_h(F: FloppyCurve) -> int:
    return 4 * F.c - F.chi_F - 2 * F.ell - F.d


def chi_from_delta(diagram: CurveDiagram, m: int, target_delta: int, nu_plus: int = 0, nu_minus: int = 0) -> int:
    """The chi_F giving the stated defect, by solving the defect formula."""
    probe = FloppyCurve(diagram, m, 0, nu_plus, nu_minus)
    return target_delta + probe.d_plus - probe.d_minus - m ** 2 + 3 * m


def nonsingular_curve(scheme: SchemeExpr | str, degree: int) -> FloppyCurve:
    """A nonsingular curve of the given scheme; dividing status left unknown."""
    if isinstance(scheme, str):
        scheme = parse_scheme(scheme)
    d = expand_scheme(scheme, degree)
    return FloppyCurve(d, degree, 3 * degree - degree ** 2, n=1, c=1, epsilon=0,
                       strongly_irreducible=True, two_irreducible=True)


def validate_curve(F: FloppyCurve) -> list[str]:
    """Consistency problems among the global fields (empty list when fine)."""
    return structural_problems(F) + parity_problems(F)


def structural_problems(F: FloppyCurve) -> list[str]:
    out = []
    if F.m <= 0 or F.m % 2:
        out.append(f"degree must be even and positive, got {F.m}")
    if F.nu_plus < 0 or F.nu_minus < 0:
        out.append("conjugate pair counts must be nonnegative")
    if F.n < 1 or F.c < 1:
        out.append("component counts must be positive")
    if F.c > F.n:
        out.append(f"c={F.c} exceeds n={F.n}")
    if F.epsilon not in (0, 1):
        out.append(f"epsilon must be 0 or 1, got {F.epsilon}")
    if F.dividing not in DIVIDING_VALUES:
        out.append(f"dividing must be one of {DIVIDING_VALUES}, got {F.dividing!r}")
    if F.strongly_irreducible and not F.two_irreducible:
        out.append("strongly irreducible curves are two-irreducible")
    if F.strongly_irreducible and F.n != 1:
        out.append("strongly irreducible curves have n=1")
    if F.two_irreducible and not F.strongly_irreducible and (F.n != 2 or F.epsilon != 1):
        out.append("two-irreducible but not strongly irreducible requires two odd-degree components (n=2, epsilon=1)")
    if F.complex_orientation and F.dividing == "no":
        out.append("a complex orientation is supplied for a curve declared non-dividing")
    return out


def parity_problems(F: FloppyCurve) -> list[str]:
    out = []
    D = delta(F)
    if D % 2:
        out.append(f"defect {D} is odd")
    if (F.chi_F - F.d) % 2:
        out.append(f"chi_F={F.chi_F} and d={F.d} have different parity")
    if F.diagram.colored:
        for side in (PLUS, MINUS):
            O = F.O(side)
            if O % 2:
                out.append(f"O{side}={O} is odd")
            elif (D - O) % 4:
                out.append(f"defect {D} is not congruent to O{side}={O} mod 4")
    return out
