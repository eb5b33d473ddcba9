"""Prohibition checks for real plane curves via floppy curve diagrams."""

from .arf import (
    LinkInstance,
    SurfaceData,
    check_congruence,
    link_from_dict,
    reference_family,
)
from .curve import FloppyCurve, delta, harnack_h, nonsingular_curve, validate_curve
from .diagram import CurveDiagram, validate_diagram
from .engine import CheckResult, VerdictReport, run_checks, verdict
from .fileformat import (
    curve_from_dict,
    diagram_from_dict,
    diagram_to_dict,
    run_derivation,
)
from .pairing import build_matrix, determinant, inertia, odd_kernel_exists
from .scheme import SchemeError, canonicalize, expand_scheme, parse_scheme, render
from .surgery import (
    ArcRewriteSpec,
    SurgeryError,
    ambient_surgery,
    isolated_to_oval,
    oval_to_isolated,
    resolve_conjugate_pair,
    resolve_crossing,
)
from .templates import cross_wall, join_ovals

__version__ = "0.1.0"

__all__ = [
    "ArcRewriteSpec", "CheckResult", "CurveDiagram", "FloppyCurve", "LinkInstance", "SchemeError",
    "SurfaceData", "SurgeryError", "VerdictReport", "ambient_surgery", "build_matrix", "canonicalize",
    "check_congruence", "cross_wall", "curve_from_dict", "delta", "determinant", "diagram_from_dict",
    "diagram_to_dict", "expand_scheme", "harnack_h", "inertia", "isolated_to_oval", "join_ovals",
    "link_from_dict", "nonsingular_curve", "odd_kernel_exists", "oval_to_isolated", "parse_scheme",
    "reference_family", "render", "resolve_conjugate_pair", "resolve_crossing", "run_checks",
    "run_derivation", "validate_curve", "validate_diagram", "verdict",
]
