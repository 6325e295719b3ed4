"""Problem documents: a flat ``key = values`` text format.

    # comment
    x = 0 0 0                 # px py heading_degrees
    y = 2 0 0
    kappa_max = 1
    required_length = 10
    vertical_drop = 70
    max_gradient = 1/7
    segment = line 0 0 2 0
    segment = arc cx cy r start_deg sweep_deg

Numbers are floats (``a/b`` fractions are accepted).  Values are emitted with
``repr`` so a parse/emit/parse cycle is bit-exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Tuple

from .geometry import Configuration, GeometryError, ProblemInstance, normalize_problem
from .path import CurvaturePath
from .segments import Arc, Line, Segment


class DocumentError(ValueError):
    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        self.code = code
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {code}: {message}")


@dataclass(frozen=True)
class SegmentSpec:
    kind: str  # arc | line
    values: Tuple[float, ...]

    def to_segment(self) -> Segment:
        if self.kind == "line":
            x1, y1, x2, y2 = self.values
            return Line((x1, y1), (x2, y2))
        cx, cy, r, start, sweep = self.values
        return Arc((cx, cy), r, math.radians(start), math.radians(sweep))


@dataclass(frozen=True)
class ProblemDocument:
    x: Tuple[float, float, float]
    y: Tuple[float, float, float]
    kappa_max: float = 1.0
    required_length: Optional[float] = None
    vertical_drop: Optional[float] = None
    max_gradient: Optional[float] = None
    segments: Tuple[SegmentSpec, ...] = ()
    name: str = field(default="", compare=False)

    @property
    def has_gradient(self) -> bool:
        return self.vertical_drop is not None

    def instance(self) -> ProblemInstance:
        rx = Configuration.from_angle(self.x[0], self.x[1], math.radians(self.x[2]))
        ry = Configuration.from_angle(self.y[0], self.y[1], math.radians(self.y[2]))
        return normalize_problem(rx, ry, self.kappa_max)

    def raw_path(self) -> Optional[CurvaturePath]:
        if not self.segments:
            return None
        return CurvaturePath(tuple(s.to_segment() for s in self.segments))

    def canonical_path(self) -> Optional[CurvaturePath]:
        raw = self.raw_path()
        return None if raw is None else raw.transformed(self.instance().original_frame)

    def with_path(self, path: CurvaturePath) -> "ProblemDocument":
        return replace(self, segments=tuple(segment_spec(s) for s in path.segments))


def segment_spec(seg: Segment) -> SegmentSpec:
    if isinstance(seg, Line):
        return SegmentSpec("line", (seg.start[0], seg.start[1], seg.end[0], seg.end[1]))
    return SegmentSpec("arc", (seg.center[0], seg.center[1], seg.radius,
                               math.degrees(seg.start_angle), math.degrees(seg.signed_sweep)))


_ARITY = {"x": 3, "y": 3, "kappa_max": 1, "required_length": 1, "vertical_drop": 1, "max_gradient": 1}
_SEGMENT_ARITY = {"line": 4, "arc": 5}


def _number(tok: str, line: int, col: int) -> float:
    try:
        if "/" in tok:
            v = float(Fraction(tok))
        else:
            v = float(tok)
    except (ValueError, ZeroDivisionError):
        raise DocumentError("syntax", f"not a number: {tok!r}", line, col) from None
    if not math.isfinite(v):
        raise DocumentError("schema", f"non-finite number: {tok!r}", line, col)
    return v


def _tokens(text: str) -> List[Tuple[str, int]]:
    out, col = [], 0
    for part in text.split():
        col = text.index(part, col)
        out.append((part, col))
        col += len(part)
    return out


def parse_problem_document(text, name: str = "") -> ProblemDocument:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError("syntax", f"not UTF-8: {exc}") from None
    values = {}
    where = {}
    segments: List[SegmentSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise DocumentError("syntax", "expected 'key = value'", lineno, len(body) - len(body.lstrip()) + 1)
        key_part, val_part = body.split("=", 1)
        key = key_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        val_off = len(key_part) + 1
        toks = [(t, val_off + c + 1) for t, c in _tokens(val_part)]
        if key == "segment":
            if not toks:
                raise DocumentError("syntax", "segment needs a kind", lineno, val_off + 1)
            kind, kcol = toks[0]
            if kind not in _SEGMENT_ARITY:
                raise DocumentError("schema", f"unknown segment kind {kind!r}", lineno, kcol)
            nums = toks[1:]
            if len(nums) != _SEGMENT_ARITY[kind]:
                raise DocumentError("syntax", f"{kind} segment takes {_SEGMENT_ARITY[kind]} numbers, got {len(nums)}",
                                    lineno, kcol)
            vals = tuple(_number(t, lineno, c) for t, c in nums)
            spec = SegmentSpec(kind, vals)
            try:
                spec.to_segment()
            except GeometryError as exc:
                raise DocumentError("schema", str(exc), lineno, kcol) from None
            segments.append(spec)
            continue
        if key not in _ARITY:
            raise DocumentError("schema", f"unknown key {key!r}", lineno, key_col)
        if key in values:
            raise DocumentError("schema", f"duplicate key {key!r}", lineno, key_col)
        if len(toks) != _ARITY[key]:
            raise DocumentError("syntax", f"{key} takes {_ARITY[key]} number(s), got {len(toks)}", lineno, key_col)
        values[key] = tuple(_number(t, lineno, c) for t, c in toks)
        where[key] = (lineno, key_col)

    for key in ("x", "y"):
        if key not in values:
            raise DocumentError("schema", f"missing required key {key!r}", 0, 0)
    kappa = values.get("kappa_max", (1.0,))[0]
    if not kappa > 0.0:
        raise DocumentError("schema", f"kappa_max must be positive, got {kappa!r}", *where["kappa_max"])
    req = values.get("required_length", (None,))[0]
    if req is not None and req < 0.0:
        raise DocumentError("schema", "required_length must be non-negative", *where["required_length"])
    drop = values.get("vertical_drop", (None,))[0]
    grad = values.get("max_gradient", (None,))[0]
    if (drop is None) != (grad is None):
        key = "vertical_drop" if drop is not None else "max_gradient"
        raise DocumentError("schema", "vertical_drop and max_gradient must be given together", *where[key])
    if grad is not None and not grad > 0.0:
        raise DocumentError("schema", "max_gradient must be positive", *where["max_gradient"])
    doc = ProblemDocument(values["x"], values["y"], kappa, req, drop, grad, tuple(segments), name)
    if doc.x[:2] == doc.y[:2] and (doc.x[2] - doc.y[2]) % 360.0 == 0.0:
        raise DocumentError("schema", "x and y are the same configuration", *where["y"])
    return doc


def _fmt(v: float) -> str:
    return repr(float(v))


def emit_problem_document(doc: ProblemDocument) -> str:
    lines = [
        f"x = {' '.join(_fmt(v) for v in doc.x)}",
        f"y = {' '.join(_fmt(v) for v in doc.y)}",
        f"kappa_max = {_fmt(doc.kappa_max)}",
    ]
    if doc.required_length is not None:
        lines.append(f"required_length = {_fmt(doc.required_length)}")
    if doc.vertical_drop is not None:
        lines.append(f"vertical_drop = {_fmt(doc.vertical_drop)}")
        lines.append(f"max_gradient = {_fmt(doc.max_gradient)}")
    for s in doc.segments:
        lines.append(f"segment = {s.kind} {' '.join(_fmt(v) for v in s.values)}")
    return "\n".join(lines) + "\n"
