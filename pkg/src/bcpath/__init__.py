"""Bounded curvature paths: Dubins candidates, the trapping region and homotopy verdicts."""

from .docformat import DocumentError, ProblemDocument, emit_problem_document, parse_problem_document
from .dubins import CandidateSet, DubinsWord, candidate_set, shortest_path
from .geometry import EPS, Configuration, ProblemInstance, canonical_instance, normalize_problem
from .homotopy import (
    HomotopyVerdict,
    NoFreeCandidate,
    PlanResult,
    classify_homotopy,
    extend_path,
    gradient_feasibility,
    plan_min_length,
)
from .path import CurvaturePath, validate_path
from .proximity import ProximityClass, classify_endpoints
from .region import OmegaRegion, construct_region, path_region_relation, region_diameter
from .render import render_scene
from .report import ReportDocument, run_problem
from .segments import Arc, Line

__all__ = [
    "Arc", "CandidateSet", "Configuration", "CurvaturePath", "DocumentError", "DubinsWord", "EPS",
    "HomotopyVerdict", "Line", "NoFreeCandidate", "OmegaRegion", "PlanResult", "ProblemDocument",
    "ProblemInstance", "ProximityClass", "ReportDocument", "candidate_set", "canonical_instance",
    "classify_endpoints", "classify_homotopy", "construct_region", "emit_problem_document", "extend_path",
    "gradient_feasibility", "normalize_problem", "parse_problem_document", "path_region_relation",
    "plan_min_length", "region_diameter", "render_scene", "run_problem", "shortest_path", "validate_path",
]
