"""Command line front end: ``floppy check``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arf import LinkInstance, fmt, link_from_dict
from .curve import FloppyCurve, nonsingular_curve
from .diagram import to_dot
from .engine import FAIL, NA, VerdictReport, verdict
from .fileformat import (
    INPUT_ERRORS,
    FormatError,
    curve_from_dict,
    load_json,
    run_derivation,
)

EXIT_OK, EXIT_ERROR, EXIT_PROHIBITED = 0, 1, 2


class _Ordered(argparse.Action):
    """Collect input flags in the order they appear on the command line."""

    def __call__(self, parser, namespace, values, option_string=None):
        items = getattr(namespace, "inputs", None) or []
        items.append((self.dest, values))
        namespace.inputs = items


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="floppy", description="Prohibition checks for real algebraic curves "
                                "and floppy curves on the real projective plane.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="run every check on one or more inputs")
    c.add_argument("--scheme", action=_Ordered, metavar="SCHEME", help="a nonsingular scheme, e.g. '1<5>+5'")
    c.add_argument("--degree", type=int, help="curve degree for --scheme inputs")
    c.add_argument("--diagram", action=_Ordered, metavar="FILE", help="a floppy curve diagram (JSON)")
    c.add_argument("--derivation", action=_Ordered, metavar="FILE", help="a derivation script (.fcd, JSON)")
    c.add_argument("--link", metavar="FILE", help="link block (JSON) checked against every input")
    c.add_argument("--strict", action="store_true", help="treat data check failures as obstructions")
    c.add_argument("--assume-ok", action="store_true",
                   help="count prohibited_under_assumptions as prohibited for the exit code")
    c.add_argument("--json", action="store_true", help="print JSON reports instead of text")
    c.add_argument("--dot", metavar="FILE", help="write the (last) diagram as Graphviz dot")
    c.set_defaults(inputs=[])
    return p


def _load(kind: str, value: str, degree: int | None) -> tuple[str, FloppyCurve, LinkInstance | None, list[str]]:
    if kind == "scheme":
        if degree is None:
            raise FormatError("--scheme needs --degree")
        return f"scheme {value} (degree {degree})", nonsingular_curve(value, degree), None, []
    obj = load_json(value)
    if kind == "diagram":
        link = link_from_dict(obj["link"]) if "link" in obj else None
        return f"diagram {value}", curve_from_dict(obj), link, []
    der = run_derivation(obj, Path(value).parent)
    return f"derivation {value}", der.final, der.link, der.steps


def format_report(title: str, rep: VerdictReport, steps: list[str]) -> str:
    lines = [f"== {title}"]
    for s in steps:
        lines.append(f"   step: {s}")
    cv = rep.summary
    lines.append("   curve: " + ", ".join(f"{k}={cv[k]}" for k in
                                           ("degree", "delta", "h", "ell", "d_plus", "d_minus", "chi_F", "dividing")))
    for c in rep.checks:
        lhs = fmt(c.lhs) if c.lhs is not None and not isinstance(c.lhs, (list, tuple)) else c.lhs
        rhs = fmt(c.rhs) if c.rhs is not None and not isinstance(c.rhs, (list, tuple)) else c.rhs
        vals = "" if lhs is None and rhs is None else f"  lhs={lhs} rhs={rhs}"
        extra = f"  ({c.detail})" if c.detail and c.status in (FAIL, NA) else ""
        lines.append(f"   {c.status:<14} {c.id}{vals}{extra}")
    lines.append(f"   overall: {rep.overall}")
    for a in rep.under or rep.assumptions:
        lines.append(f"     assuming: {a}")
    return "\n".join(lines)


def exit_code(overalls: list[str], assume_ok: bool) -> int:
    if "invalid_candidate_data" in overalls:
        return EXIT_ERROR
    if "prohibited" in overalls:
        return EXIT_PROHIBITED
    if assume_ok and "prohibited_under_assumptions" in overalls:
        return EXIT_PROHIBITED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.inputs:
        parser.error("give at least one of --scheme, --diagram, --derivation")
    try:
        shared_link = link_from_dict(load_json(args.link)) if args.link else None
        loaded = [_load(kind, value, args.degree) for kind, value in args.inputs]
    except INPUT_ERRORS as exc:
        print(f"floppy: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    reports = []
    overalls = []
    for title, F, link, steps in loaded:
        rep = verdict(F, shared_link or link, strict=args.strict)
        overalls.append(rep.overall)
        reports.append((title, rep, steps))
    if args.json:
        out = [{"input": t, "steps": s, **r.to_dict()} for t, r, s in reports]
        print(json.dumps(out if len(out) > 1 else out[0], indent=2))
    else:
        print("\n\n".join(format_report(t, r, s) for t, r, s in reports))
    if args.dot:
        Path(args.dot).write_text(to_dot(loaded[-1][1].diagram), encoding="utf-8")
    return exit_code(overalls, args.assume_ok)


if __name__ == "__main__":
    sys.exit(main())
