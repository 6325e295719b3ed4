"""End-to-end pipeline from a problem document to a deterministic report.

The report is ``key = value`` text grouped in ``[section]`` blocks, followed
by a ``[machine]`` block holding the same data as one JSON object.  Lengths
and points are given in the document's own frame and units; turning angles
are in radians.  Floats are printed with 12 significant digits, and values
below 1e-12 in magnitude are printed as 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .docformat import ProblemDocument, emit_problem_document
from .dubins import candidate_set
from .geometry import Point
from .homotopy import (
    HomotopyVerdict,
    NoFreeCandidate,
    NoParallelTangents,
    TargetTooShort,
    candidate_verdicts,
    classify_homotopy,
    extend_path,
    gradient_feasibility,
    plan_min_length,
)
from .path import CurvaturePath, path_diameter, validate_path
from .proximity import DSubcase, ProximityReport, classify_endpoints
from .region import OmegaRegion, construct_region, path_region_relation, region_diameter

REPEATED = {"candidate", "segment"}
SECTIONS = ("proximity", "candidates", "region", "plan", "extend", "gradient", "path", "oracle")
DEFAULT_SECTIONS = ("proximity", "candidates", "region", "plan", "gradient", "path")
TINY = 1e-12


def fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if abs(v) < TINY:
            return "0"
        return format(v, ".12g")
    if isinstance(v, (tuple, list)):
        return " ".join(fmt(u) for u in v)
    return str(v)


def _round(v: Any) -> Any:
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, float):
        return 0.0 if abs(v) < TINY else float(format(v, ".12g"))
    if isinstance(v, (tuple, list)):
        return [_round(u) for u in v]
    if isinstance(v, dict):
        return {k: _round(u) for k, u in v.items()}
    return v


@dataclass
class ReportDocument:
    sections: Dict[str, List[Tuple[str, Any]]] = field(default_factory=dict)
    status: int = 0  # 0 ok, 2 infeasible / no free candidate / invalid path
    # objects kept for rendering, not serialized
    region: Optional[OmegaRegion] = field(default=None, repr=False)
    paths: List[Tuple[str, CurvaturePath, str]] = field(default_factory=list, repr=False)

    def add(self, section: str, key: str, value: Any) -> None:
        self.sections.setdefault(section, []).append((key, value))

    def get(self, section: str, key: str) -> Any:
        for k, v in self.sections.get(section, []):
            if k == key:
                return v
        raise KeyError(f"{section}.{key}")

    def machine(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": self.status}
        for name in SECTIONS:
            if name not in self.sections:
                continue
            block: Dict[str, List[Any]] = {}
            for k, v in self.sections[name]:
                block.setdefault(k, []).append(_round(v))
            out[name] = {k: (v if k in REPEATED else v[0]) for k, v in block.items()}
        return out

    def render_text(self) -> str:
        lines = [f"status = {self.status}"]
        for name in SECTIONS:
            if name not in self.sections:
                continue
            lines.append("")
            lines.append(f"[{name}]")
            lines.extend(f"{k} = {fmt(v)}" for k, v in self.sections[name])
        lines.append("")
        lines.append("[machine]")
        lines.append(json.dumps(self.machine(), sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"


def parse_report(text: str) -> Dict[str, Any]:
    """Read back a report; returns the machine block plus the text sections."""
    sections: Dict[str, Dict[str, List[str]]] = {}
    current = ""
    machine = None
    lines = text.splitlines()
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            if current == "machine":
                machine = json.loads(lines[i + 1])
                break
            continue
        key, _, val = line.partition(" = ")
        sections.setdefault(current, {}).setdefault(key, []).append(val)
    if machine is None:
        raise ValueError("report has no machine block")
    return {"text": sections, "machine": machine}


def _pt(instance, p: Point) -> Tuple[float, float]:
    q = instance.original_point(p)
    return (q[0] + 0.0, q[1] + 0.0)


def _proximity(report: ReportDocument, prox: ProximityReport, instance) -> None:
    report.add("proximity", "d_ll", instance.original_length(prox.d_ll))
    report.add("proximity", "d_rr", instance.original_length(prox.d_rr))
    report.add("proximity", "raw", prox.raw.value)
    report.add("proximity", "class", prox.proximity_class.value)
    report.add("proximity", "d_subcase", prox.d_subcase.value if prox.d_subcase else "none")
    report.add("proximity", "forward_region", prox.forward_region)
    report.add("proximity", "y_inside_adjacent_disk", prox.y_inside_adjacent_disk)


def _region(report: ReportDocument, region: OmegaRegion, instance) -> None:
    report.add("region", "exists", True)
    report.add("region", "theta", tuple(region.thetas))
    for k, p in enumerate(region.inflections, start=1):
        report.add("region", f"i{k}", _pt(instance, p))
    mu, md = region.middle_centers
    report.add("region", "upper_center", _pt(instance, mu))
    report.add("region", "lower_center", _pt(instance, md))
    report.add("region", "middle_sweeps", (region.upper[1].sweep, region.lower[1].sweep))
    report.add("region", "L1_replaced", region.L1.replaced)
    report.add("region", "L2_replaced", region.L2.replaced)
    dr = region_diameter(region)
    report.add("region", "diameter", instance.original_length(dr.value))
    report.add("region", "diameter_witness", _pt(instance, dr.witness[0]) + _pt(instance, dr.witness[1]))
    report.add("region", "diameter_consistent", dr.consistent)


def _verdict_label(v: HomotopyVerdict) -> str:
    if v.kind == "Free":
        return f"Free:{v.certificate.kind}"
    return v.kind


def run_problem(doc: ProblemDocument, sections: Tuple[str, ...] = DEFAULT_SECTIONS, oracle: bool = False) -> ReportDocument:
    """Run every requested stage; stage errors are recorded with their code."""
    instance = doc.instance()
    report = ReportDocument()
    prox = classify_endpoints(instance)
    _proximity(report, prox, instance)
    region = construct_region(instance) if prox.d_subcase is DSubcase.CARRIES_OMEGA else None
    report.region = region

    cands = None
    if {"candidates", "plan"} & set(sections):
        cands = candidate_set(instance)
        verdicts = candidate_verdicts(instance, cands, prox)
        if "candidates" in sections:
            for c, v in zip(cands, verdicts):
                report.add("candidates", "candidate", (c.word.value, instance.original_length(c.length),
                                                       _verdict_label(v.verdict)))
        for c, v in zip(cands, verdicts):
            report.paths.append((c.word.value, c.path, v.verdict.kind))

    if "region" in sections:
        if region is None:
            report.add("region", "exists", False)
        else:
            _region(report, region, instance)

    planned_length = None
    if "plan" in sections and doc.required_length is not None:
        required = instance.canonical_length(doc.required_length)
        report.add("plan", "required_length", doc.required_length)
        try:
            plan = plan_min_length(instance, required)
        except NoFreeCandidate as exc:
            report.add("plan", "error", "NoFreeCandidate")
            report.add("plan", "message", str(exc))
            report.status = 2
        else:
            planned_length = instance.original_length(plan.length)
            report.add("plan", "branch", plan.branch.value)
            report.add("plan", "word", plan.word.value)
            report.add("plan", "length", planned_length)
            report.add("plan", "exact", plan.exact)
            report.add("plan", "valid", validate_path(plan.path, instance).valid)
            report.paths.append(("plan", plan.path, "Plan"))
            if oracle:
                report.add("oracle", "plan_length_error",
                           abs(planned_length - max(doc.required_length, instance.original_length(cands.shortest.length))))

    path = doc.canonical_path()
    if "extend" in sections:
        if path is None or doc.required_length is None:
            report.add("extend", "error", "MissingInput")
            report.status = 2
        else:
            try:
                ext, fam = extend_path(path, instance.canonical_length(doc.required_length))
            except (NoParallelTangents, TargetTooShort) as exc:
                report.add("extend", "error", type(exc).__name__)
                report.add("extend", "message", str(exc))
                report.status = 2
            else:
                report.add("extend", "r", instance.original_length(fam.r_max))
                report.add("extend", "length", instance.original_length(ext.total_length))
                report.add("extend", "valid", validate_path(ext, instance).valid)
                back = ext.transformed(instance.original_frame.inverse())
                for line in emit_problem_document(doc.with_path(back)).splitlines():
                    if line.startswith("segment = "):
                        report.add("extend", "segment", line[len("segment = "):])
                report.paths.append(("extended", ext, "Extended"))

    if "path" in sections and path is not None:
        val = validate_path(path, instance)
        report.add("path", "valid", val.valid)
        report.add("path", "violations", ",".join(sorted(val.kinds())) or "none")
        report.add("path", "length", instance.original_length(path.total_length))
        report.add("path", "diameter", instance.original_length(path_diameter(path)))
        if val.valid:
            verdict = classify_homotopy(instance, path, prox, region)
            report.add("path", "verdict", _verdict_label(verdict))
            if verdict.certificate is not None:
                report.add("path", "certificate", verdict.certificate.describe())
            if region is not None:
                rel = path_region_relation(region, path)
                report.add("path", "relation", rel.relation)
                report.add("path", "crossings", len(rel.crossings))
                report.add("path", "tangents", len(rel.tangents))
                report.add("path", "returning_points", len(rel.returning_points))
            report.paths.append(("input", path, verdict.kind))
        else:
            report.status = 2
            report.paths.append(("input", path, "Invalid"))

    if "gradient" in sections and doc.has_gradient:
        planar = planned_length
        if planar is None and path is not None:
            planar = instance.original_length(path.total_length)
        if planar is None:
            planar = instance.original_length(candidate_set(instance).shortest.length)
        feas = gradient_feasibility(doc.vertical_drop, doc.max_gradient, planar)
        report.add("gradient", "required_planar_length", feas.required_planar_length)
        report.add("gradient", "planar_length", feas.planar_length)
        report.add("gradient", "feasible", feas.feasible)
        report.add("gradient", "shortfall", feas.shortfall)
        if not feas.feasible:
            report.status = 2

    if oracle and region is not None:
        dr = region_diameter(region)
        report.add("oracle", "diameter_analytic", instance.original_length(dr.analytic))
        report.add("oracle", "diameter_sampled", instance.original_length(dr.sampled))
        report.add("oracle", "diameter_disagreement", instance.original_length(dr.disagreement))
    return report
