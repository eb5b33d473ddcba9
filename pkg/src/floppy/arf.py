"""Links in the unit tangent bundle of the projective plane.

First homology is Z/4 generated by the class g of the lift of an oriented
line.  The linking form is l(ag, bg) = -ab/4 mod 1, and the two quadratic
refinements used here send g to -1/8 and 3/8 respectively.  Arf values
live in Q/8Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .diagram import CurveDiagram

Q_MINUS_EIGHTH = "q_minus_eighth"
Q_THREE_EIGHTHS = "q_three_eighths"
QFORM_VALUE = {Q_MINUS_EIGHTH: Fraction(-1, 8), Q_THREE_EIGHTHS: Fraction(3, 8)}


class LinkError(ValueError):
    pass


def mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def mod8(x: Fraction) -> Fraction:
    return Fraction(x) - 8 * (Fraction(x) // 8)


@dataclass(frozen=True)
class H1Class:
    coeff: int

    def __post_init__(self):
        object.__setattr__(self, "coeff", self.coeff % 4)

    def __add__(self, other: "H1Class") -> "H1Class":
        return H1Class(self.coeff + other.coeff)

    def __mul__(self, n: int) -> "H1Class":
        return H1Class(self.coeff * n)

    __rmul__ = __mul__


G = H1Class(1)


def linking_form(x: H1Class, y: H1Class) -> Fraction:
    return mod1(Fraction(-x.coeff * y.coeff, 4))


@dataclass(frozen=True)
class QForm:
    tag: str

    def __post_init__(self):
        if self.tag not in QFORM_VALUE:
            raise LinkError(f"unknown quadratic refinement {self.tag!r}")

    def __call__(self, x: H1Class) -> Fraction:
        return mod1(x.coeff ** 2 * QFORM_VALUE[self.tag])


@dataclass(frozen=True)
class SurfaceData:
    """Spanning-surface data: Euler number, the linking sum, Brown invariant."""

    e: Fraction
    lam: Fraction
    brown: int = 0


@dataclass(frozen=True)
class LinkInstance:
    classes: tuple[H1Class, ...]
    lk: tuple[tuple[Fraction, ...], ...]
    gamma: H1Class
    q: QForm
    surface: SurfaceData | None = None
    # asserted properness when components are not listed
    proper: bool | None = None


def lplus_class(d: CurveDiagram) -> H1Class:
    """Homology class of the lifted link of a crossing-free curve."""
    if d.vertices:
        raise LinkError("resolve every crossing before computing the lifted class")
    one = [c for c in d.constituents if c.one_sided]
    if len(one) > 1:
        raise LinkError("at most one one-sided constituent is allowed")
    a = 2 * d.flop_count()
    for c in d.constituents:
        if not c.one_sided:
            a += 2
        else:
            arc = d.arc[c.arcs[0][0]]
            a += 1 if arc.thick else -1
    return H1Class(a)


def lk_sum(L: LinkInstance, i: int) -> Fraction:
    return sum((L.lk[i][j] for j in range(len(L.classes)) if j != i), Fraction(0))


def validate_link(L: LinkInstance) -> list[str]:
    out = []
    n = len(L.classes)
    if len(L.lk) != n or any(len(r) != n for r in L.lk):
        out.append("linking matrix size does not match the component count")
        return out
    for i in range(n):
        for j in range(i + 1, n):
            if L.lk[i][j] != L.lk[j][i]:
                out.append(f"linking numbers of components {i} and {j} are not symmetric")
            elif mod1(L.lk[i][j]) != linking_form(L.classes[i], L.classes[j]):
                out.append(f"linking number of components {i} and {j} disagrees with the linking form")
    return out


def is_proper(L: LinkInstance) -> bool:
    if not L.classes:
        if L.proper is not None:
            return L.proper
        if L.gamma.coeff * 2 % 4:
            raise LinkError("empty link has class 0, which is not twice gamma")
        return True
    total = H1Class(sum(c.coeff for c in L.classes))
    if total != L.gamma * 2:
        raise LinkError(f"link class {total.coeff}g is not twice gamma={L.gamma.coeff}g")
    for i, K in enumerate(L.classes):
        lhs = mod1(L.q(K) + lk_sum(L, i) / 2)
        if lhs != linking_form(K, L.gamma):
            return False
    return True


def arf_eval(s: SurfaceData) -> Fraction:
    return mod8(Fraction(s.brown) + Fraction(s.e) / 2 - Fraction(s.lam))


def reference_family(k: int, e0: int) -> tuple[LinkInstance, SurfaceData]:
    """The lifted link of 2k+e0 thick and e0 thin lines through general position.

    Thick lines carry class g and thin lines -g; two lines of the same
    kind link -1/4 and lines of different kinds link +1/4.
    """
    if k < 1 or e0 < 0:
        raise LinkError("need k >= 1 and e0 >= 0")
    kinds = [1] * (2 * k + e0) + [-1] * e0
    classes = tuple(H1Class(x) for x in kinds)
    lk = tuple(tuple(Fraction(0) if i == j else Fraction(-x * y, 4) for j, y in enumerate(kinds))
               for i, x in enumerate(kinds))
    lam = sum((lk[i][j] for i in range(len(kinds)) for j in range(i + 1, len(kinds))), Fraction(0))
    surface = SurfaceData(Fraction(k + e0, 2), lam, 0)
    return LinkInstance(classes, lk, H1Class(k), QForm(Q_MINUS_EIGHTH), surface), surface


@dataclass
class CongruenceResult:
    status: str
    arf: Fraction | None = None
    required: Fraction | None = None
    reason: str = ""
    notes: list[str] = field(default_factory=list)


def required_arf(k: int, gamma: H1Class, q: QForm) -> Fraction | None:
    base = Fraction(k * k, 2)
    if q.tag == Q_MINUS_EIGHTH and gamma == H1Class(k):
        return mod8(base)
    if q.tag == Q_THREE_EIGHTHS and gamma == H1Class(k + 2):
        return mod8(base - 2)
    return None


def check_congruence(L: LinkInstance, k: int, h0: bool, n_eq_c: bool, nu0: bool) -> CongruenceResult:
    missing = [name for name, ok in (("h=0", h0), ("n=c", n_eq_c), ("nu=0", nu0)) if not ok]
    if missing:
        return CongruenceResult("not_applicable", reason="preconditions fail: " + ", ".join(missing))
    if L.surface is None:
        return CongruenceResult("not_applicable", reason="no spanning-surface data")
    req = required_arf(k, L.gamma, L.q)
    if req is None:
        return CongruenceResult("not_applicable", reason="(gamma, q) is not one of the two constrained pairs")
    if not is_proper(L):
        return CongruenceResult("not_applicable", reason="triple is not proper")
    value = arf_eval(L.surface)
    status = "pass" if value == req else "fail"
    return CongruenceResult(status, value, req)


def parse_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise LinkError(f"expected a number, got {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise LinkError(f"expected an exact number or 'p/q' string, got {x!r}")


def link_from_dict(obj: dict) -> LinkInstance:
    """Build a link from its serialized form (see the README for the schema)."""
    try:
        q = QForm(obj["q"])
        gamma = H1Class(int(obj["gamma"]))
        classes = tuple(H1Class(int(c)) for c in obj.get("classes", []))
        n = len(classes)
        raw = obj.get("lk")
        if raw is None:
            lk = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
        else:
            lk = tuple(tuple(parse_fraction(x) for x in row) for row in raw)
        surface = None
        if "surface" in obj:
            s = obj["surface"]
            surface = SurfaceData(parse_fraction(s["e"]), parse_fraction(s["lambda"]), int(s.get("brown", 0)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise LinkError(f"malformed link block: {exc}") from exc
    L = LinkInstance(classes, lk, gamma, q, surface, obj.get("proper"))
    probs = validate_link(L)
    if probs:
        raise LinkError("; ".join(probs))
    return L


def fmt(x: Fraction | int | None) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def classes_of(ints: Sequence[int]) -> tuple[H1Class, ...]:
    return tuple(H1Class(i) for i in ints)
