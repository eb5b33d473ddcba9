"""Evaluate every obstruction on a floppy curve and aggregate a verdict.

Each check yields a :class:`CheckResult`.  Checks in the ``data``
category flag inconsistent input (likely entry errors); checks in the
``obstruction`` category prohibit the curve outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .arf import LinkInstance, check_congruence, fmt, lplus_class
from .curve import FloppyCurve, delta, harnack_h, structural_problems
from .diagram import (
    MINUS,
    PLUS,
    ColoringError,
    DiagramError,
    chi_side,
    coloring_is_canonical,
    opposite,
    region_profiles,
    shared_corners,
    validate_diagram,
)
from .pairing import (
    InertiaResult,
    PairingError,
    PairingMatrix,
    build_matrix,
    det_power_square,
    determinant,
    inertia,
    odd_kernel_exists,
)

PASS, FAIL, NA, COND = "pass", "fail", "not_applicable", "conditional"
DATA, OBSTRUCTION = "data", "obstruction"
SUFFIX = {PLUS: "plus", MINUS: "minus"}


@dataclass
class CheckResult:
    id: str
    status: str
    lhs: Fraction | int | None = None
    rhs: Fraction | int | None = None
    conditions: tuple[str, ...] = ()
    category: str = OBSTRUCTION
    detail: str = ""
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"id": self.id, "status": self.status, "category": self.category}
        if self.lhs is not None or self.rhs is not None:
            out["lhs"] = fmt(self.lhs)
            out["rhs"] = fmt(self.rhs)
        if self.conditions:
            out["conditions"] = list(self.conditions)
        if self.detail:
            out["detail"] = self.detail
        if self.data:
            out["data"] = {k: _jsonable(v) for k, v in self.data.items()}
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def inequality(id_: str, lhs, rhs, **kw) -> CheckResult:
    return CheckResult(id_, PASS if lhs <= rhs else FAIL, Fraction(lhs), Fraction(rhs), **kw)


@dataclass
class SideData:
    side: str
    matrix: PairingMatrix
    inertia: InertiaResult
    chi_B: int
    O: int
    rho: int
    pi: int

    @cached_property
    def kernel(self) -> tuple[bool, list[int] | None]:
        return odd_kernel_exists(self.matrix)


class Analysis:
    """Shared derived quantities for one curve."""

    def __init__(self, F: FloppyCurve):
        self.F = F
        self.k = F.k
        self.delta = delta(F)
        self.h = harnack_h(F)
        d = F.diagram
        profiles = region_profiles(d, self.k)
        shared = shared_corners(d)
        self.sides = {}
        for s in (PLUS, MINUS):
            M = build_matrix(profiles, shared, self.k, s)
            on_side = [p for p in profiles if p.side == s]
            self.sides[s] = SideData(s, M, inertia(M), chi_side(d, s), F.O(s),
                                     sum(p.relevant for p in on_side), sum(not p.relevant for p in on_side))

    @property
    def dividing(self) -> str:
        """Dividing status, with the forced case h=0 filled in."""
        if self.F.dividing == "unknown" and self.h == 0:
            return "yes"
        return self.F.dividing

    def iota_side(self, side: str) -> int:
        return self.F.iota_plus if side == PLUS else self.F.iota_minus

    def E(self, side: str) -> int:
        return max(0, self.sides[side].inertia.eta - self.F.n + self.F.epsilon)

    def rhs_arnold(self, side: str) -> Fraction:
        k = self.k
        return Fraction((k - 1) * (k - 2), 2) - Fraction(self.delta - self.sides[side].O, 4)

    def rhs_petrovskii(self, side: str) -> Fraction:
        F, k, S = self.F, self.k, self.sides[side]
        return (Fraction(3 * k * (k - 1), 2) + S.chi_B - Fraction(self.delta + S.O, 4)
                + Fraction(F.r - F.iota - F.d_plus + F.d_minus, 2))


# ----------------------------------------------------------------------------
# individual checks


def check_harnack(F: FloppyCurve) -> CheckResult:
    h = harnack_h(F)
    data = {"h": h}
    if h < 0:
        return CheckResult("harnack", FAIL, h, 0, detail="h is negative", data=data)
    if h % 2:
        return CheckResult("harnack", FAIL, h, 0, detail="h is odd", data=data)
    if F.dividing == "yes" and h % 4:
        return CheckResult("harnack", FAIL, h, 0, detail="a dividing curve needs h divisible by 4", data=data)
    if h == 0:
        if F.dividing == "no":
            return CheckResult("harnack", FAIL, h, 0, detail="h=0 forces the curve to be dividing", data=data)
        if F.dividing == "unknown":
            data["dividing_forced"] = True
            return CheckResult("harnack", PASS, h, 0, detail="h=0, so the curve is dividing", data=data)
    return CheckResult("harnack", PASS, h, 0, data=data)


def check_parity(F: FloppyCurve) -> CheckResult:
    D = delta(F)
    problems = []
    for s in (PLUS, MINUS):
        O = F.O(s)
        if O % 2:
            problems.append(f"O{s}={O} is odd")
        elif (D - O) % 4:
            problems.append(f"defect {D} differs from O{s}={O} mod 4")
    if D % 2:
        problems.append(f"defect {D} is odd")
    if (F.chi_F - F.d) % 2:
        problems.append(f"chi_F={F.chi_F} and d={F.d} differ in parity")
    data = {"delta": D, "O_plus": F.O(PLUS), "O_minus": F.O(MINUS)}
    if problems:
        return CheckResult("flop_parity", FAIL, category=DATA, detail="; ".join(problems), data=data)
    return CheckResult("flop_parity", PASS, category=DATA, data=data)


def check_inequalities(A: Analysis) -> list[CheckResult]:
    out = []
    for s in (PLUS, MINUS):
        S = A.sides[s]
        E = A.E(s)
        data = {"sigma_plus": S.inertia.sigma_plus, "sigma_minus": S.inertia.sigma_minus,
                "eta": S.inertia.eta, "E": E}
        out.append(inequality(f"arnold_{SUFFIX[s]}", S.inertia.sigma_plus + E, A.rhs_arnold(s), data=data))
        out.append(inequality(f"petrovskii_{SUFFIX[s]}", S.inertia.sigma_minus + E, A.rhs_petrovskii(s),
                              data={**data, "chi_B": S.chi_B}))
    return out


def _extremal_pair(A: Analysis, s: str) -> list[tuple[str, Fraction, Fraction]]:
    S = A.sides[s]
    eta = S.inertia.eta
    return [
        (f"arnold_extremal_{SUFFIX[s]}", Fraction(S.inertia.sigma_plus + eta), A.rhs_arnold(s)),
        (f"petrovskii_extremal_{SUFFIX[s]}", Fraction(S.inertia.sigma_minus + eta), A.rhs_petrovskii(s)),
    ]


def check_addenda(A: Analysis) -> list[CheckResult]:
    F = A.F
    out = []
    failing = {}
    for s in (PLUS, MINUS):
        S = A.sides[s]
        failing[s] = False
        for cid, lhs, rhs in _extremal_pair(A, s):
            if not F.two_irreducible:
                out.append(CheckResult(cid, NA, lhs, rhs, detail="curve is not two-irreducible"))
                continue
            excess = lhs - rhs
            if excess <= 0:
                out.append(CheckResult(cid, PASS, lhs, rhs))
                continue
            failing[s] = True
            if excess >= 2:
                out.append(CheckResult(cid, FAIL, lhs, rhs, detail="exceeds the bound by more than one"))
                continue
            broken = []
            if S.pi:
                broken.append(f"a region of B{s} is not relevant")
            has_kernel, witness = S.kernel
            if not has_kernel:
                broken.append(f"no all-odd kernel vector for M{s}")
            data = {"odd_kernel_witness": witness} if witness is not None else {}
            if A.dividing == "no":
                broken.append("the curve is not dividing")
            if broken:
                out.append(CheckResult(cid, FAIL, lhs, rhs, detail="extremal by one but " + "; ".join(broken),
                                       data=data))
            elif A.dividing == "unknown":
                out.append(CheckResult(cid, COND, lhs, rhs, conditions=("dividing=no",),
                                       detail="extremal by one; prohibited unless the curve is dividing",
                                       data=data))
            else:
                out.append(CheckResult(cid, PASS, lhs, rhs, detail="extremal, allowed", data=data))

    if F.two_irreducible and F.strongly_irreducible:
        both = failing[PLUS] and failing[MINUS]
        out.append(CheckResult("extremal_one_side", FAIL if both else PASS,
                               detail="extremal bounds fail on both sides" if both else ""))
    else:
        out.append(CheckResult("extremal_one_side", NA, detail="curve is not strongly irreducible"))
    out.append(_canonical_side_parity(A, failing))
    return out


def _canonical_side_parity(A: Analysis, failing: dict[str, bool]) -> CheckResult:
    F = A.F
    cid = "canonical_side_parity"
    if not F.strongly_irreducible:
        return CheckResult(cid, NA, detail="curve is not strongly irreducible")
    if any(c.one_sided for c in F.diagram.constituents):
        return CheckResult(cid, NA, detail="some constituent is one-sided")
    canon = coloring_is_canonical(F.diagram)
    if canon is None:
        return CheckResult(cid, NA, detail="the canonical plus side cannot be determined")
    plus = PLUS if canon else MINUS
    minus = opposite(plus)
    if failing[plus] and A.k % 2 == 1:
        return CheckResult(cid, FAIL, detail="an extremal bound on the canonical plus side fails with k odd")
    if failing[minus] and A.k % 2 == 0:
        return CheckResult(cid, FAIL, detail="an extremal bound on the canonical minus side fails with k even")
    return CheckResult(cid, PASS)


def check_determinant(A: Analysis) -> list[CheckResult]:
    F = A.F
    out = []
    for s in (PLUS, MINUS):
        suf = SUFFIX[s]
        if not F.two_irreducible:
            out.append(CheckResult(f"determinant_h_{suf}", NA, detail="curve is not two-irreducible"))
            out.append(CheckResult(f"determinant_square_{suf}", NA, detail="curve is not two-irreducible"))
            continue
        S = A.sides[s]
        h = (3 + F.r + S.chi_B + Fraction(F.d - F.chi_F, 2) - 2 * S.rho
             - 2 * A.iota_side(opposite(s)) - 2 * S.pi)
        P = 1 + S.chi_B + Fraction(F.r - F.iota - F.chi_F, 2)
        data = {"h": h, "P": P, "rho": S.rho, "pi": S.pi}
        if h.denominator != 1:
            out.append(CheckResult(f"determinant_h_{suf}", FAIL, 0, h, detail="h is not an integer", data=data))
        else:
            out.append(CheckResult(f"determinant_h_{suf}", PASS if h >= 0 else FAIL, 0, h,
                                   detail="" if h >= 0 else "h is negative", data=data))
        if P != S.rho:
            out.append(CheckResult(f"determinant_square_{suf}", NA, detail="rho differs from P", data=data))
            continue
        if h.denominator != 1 or h < 0:
            out.append(CheckResult(f"determinant_square_{suf}", NA, detail="h is not a nonnegative integer",
                                   data=data))
            continue
        e = int(h) + S.rho - F.d
        D = abs(determinant(S.matrix))
        ok = det_power_square(S.matrix, e)
        out.append(CheckResult(f"determinant_square_{suf}", PASS if ok else FAIL,
                               detail="" if ok else f"|det| is not a square times 2^{e}",
                               data={**data, "abs_det": D, "exponent": e}))
    return out


def cover_diagnostics(A: Analysis) -> list[CheckResult]:
    F, k, D = A.F, A.k, A.delta
    Op = A.sides[PLUS].O
    Y = {s: 2 * A.sides[s].chi_B + F.r - F.iota for s in (PLUS, MINUS)}
    base1 = Fraction((k - 1) * (k - 2), 2)
    base2 = Fraction(3 * k * (k - 1), 2)
    dims = {
        "a": base1 - Fraction(D - Op, 4),
        "c": base1 - Fraction(D + Op, 4),
        "b": base2 + Fraction(Y[PLUS] - F.d_plus + F.d_minus, 2) - Fraction(D + Op, 4),
        "d": base2 + Fraction(Y[MINUS] - F.d_plus + F.d_minus, 2) - Fraction(D - Op, 4),
    }
    sign = {f"sign_{SUFFIX[s]}": -Y[s] + A.sides[s].O for s in (PLUS, MINUS)}
    out = []
    total = Y[PLUS] + Y[MINUS]
    out.append(CheckResult("cover_euler_sum", PASS if total == 2 else FAIL, total, 2, category=DATA,
                           data={"chi_Y_plus": Y[PLUS], "chi_Y_minus": Y[MINUS]}))
    bad = [n for n, v in dims.items() if v < 0 or v.denominator != 1]
    out.append(CheckResult("cover_dimensions", FAIL if bad else PASS,
                           detail=("negative or fractional dimension: " + ", ".join(bad)) if bad else "",
                           data={**dims, **sign}))
    return out


def check_link(F: FloppyCurve, L: LinkInstance) -> list[CheckResult]:
    out = []
    d = F.diagram
    if L.classes and not d.vertices and sum(c.one_sided for c in d.constituents) <= 1:
        total = sum(c.coeff for c in L.classes) % 4
        expect = lplus_class(d).coeff
        out.append(CheckResult("link_class", PASS if total == expect else FAIL, category=DATA,
                               detail="" if total == expect else
                               f"link classes sum to {total}g but the curve lifts to {expect}g"))
    res = check_congruence(L, F.k, harnack_h(F) == 0, F.n == F.c, F.nu == 0)
    data = {"gamma": L.gamma.coeff, "q": L.q.tag}
    if res.arf is not None:
        data["arf"] = res.arf
        data["required"] = res.required
    out.append(CheckResult("arf_congruence", res.status, res.arf, res.required, detail=res.reason, data=data))
    return out


# ----------------------------------------------------------------------------
# verdict


@dataclass
class VerdictReport:
    summary: dict
    assumptions: tuple[str, ...]
    checks: list[CheckResult]
    overall: str
    under: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "conditions": list(self.under),
            "assumptions": list(self.assumptions),
            "curve": {k: _jsonable(v) for k, v in self.summary.items()},
            "checks": [c.to_dict() for c in self.checks],
        }

    def check(self, cid: str) -> CheckResult:
        return next(c for c in self.checks if c.id == cid)

    @property
    def failed(self) -> list[str]:
        return [c.id for c in self.checks if c.status == FAIL]


def run_checks(F: FloppyCurve, link: LinkInstance | None = None) -> list[CheckResult]:
    checks = []
    rep = validate_diagram(F.diagram)
    checks.append(CheckResult("diagram_validity", PASS if rep.ok else FAIL, category=DATA,
                              detail="; ".join(rep.violations)))
    probs = structural_problems(F)
    checks.append(CheckResult("curve_consistency", FAIL if probs else PASS, category=DATA, detail="; ".join(probs)))
    if not rep.ok or not F.diagram.colored:
        if rep.ok:
            checks.append(CheckResult("coloring", FAIL, category=DATA, detail="some face has no side label"))
        return checks
    checks.append(check_harnack(F))
    checks.append(check_parity(F))
    try:
        A = Analysis(F)
    except (DiagramError, PairingError, ColoringError) as exc:
        checks.append(CheckResult("region_data", FAIL, category=DATA, detail=str(exc)))
        return checks
    checks.extend(check_inequalities(A))
    checks.extend(check_addenda(A))
    checks.extend(check_determinant(A))
    checks.extend(cover_diagnostics(A))
    if link is not None:
        checks.extend(check_link(F, link))
    return checks


def verdict(F: FloppyCurve, link: LinkInstance | None = None, strict: bool = False) -> VerdictReport:
    checks = run_checks(F, link)
    assumptions = tuple(F.assumptions)
    data_fail = [c for c in checks if c.category == DATA and c.status == FAIL]
    summary = F.summary()
    h_check = next((c for c in checks if c.id == "harnack"), None)
    if h_check is not None and h_check.data.get("dividing_forced"):
        summary["dividing"] = "yes (forced by h=0)"
    if data_fail and not strict:
        return VerdictReport(summary, assumptions, checks, "invalid_candidate_data")
    hard = [c for c in checks if c.status == FAIL and (strict or c.category == OBSTRUCTION)]
    cond = [c for c in checks if c.status == COND]
    if hard and not assumptions:
        return VerdictReport(summary, assumptions, checks, "prohibited")
    if hard or cond:
        under = list(assumptions)
        for c in cond:
            for x in c.conditions:
                if x not in under:
                    under.append(x)
        return VerdictReport(summary, assumptions, checks, "prohibited_under_assumptions", tuple(under))
    return VerdictReport(summary, assumptions, checks, "not_prohibited")
