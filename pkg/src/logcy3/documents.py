"""Structured-text documents for pairs and correspondences.

All files are JSON with an explicit format tag and version.  Exact numbers
are always strings in the Gaussian-rational textual form; floats never
appear.  Serialization is canonical (sorted keys, fixed list orders), so a
round trip through parse and serialize is stable.
"""

from __future__ import annotations

import json

from logcy3.boundary import Marking
from logcy3.exactnum import ExactArithmeticError, GaussianRational, IntMatrix
from logcy3.pair import CurveBlowup, LogCY3Pair, PairError, PointBlowup
from logcy3.toric import Fan3, FanError
from logcy3.torelli import Correspondence

PAIR_FORMAT = "logcy3-pair"
CORRESPONDENCE_FORMAT = "logcy3-correspondence"
FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Raised for malformed document files, with field context."""


def _field(doc, key, context):
    if key not in doc:
        raise DocumentError(f"{context}: missing field {key!r}")
    return doc[key]


def _parse_coordinate(text, context) -> GaussianRational:
    try:
        value = GaussianRational.parse(str(text))
    except ExactArithmeticError as exc:
        raise DocumentError(f"{context}: {exc}") from exc
    return value


# ---------------------------------------------------------------------------
# Pair documents
# ---------------------------------------------------------------------------


def pair_to_document(pair: LogCY3Pair, marking: Marking = None) -> dict:
    doc = {
        "format": PAIR_FORMAT,
        "version": FORMAT_VERSION,
        "lattice_rank": 3,
        "rays": [list(r) for r in pair.fan.rays],
        "cones": [list(c) for c in pair.fan.max_cones],
        "orientation": {
            "triangle": list(pair.fan.orientation[0]),
            "sign": pair.fan.orientation[1],
        },
        "edge_orientations": [list(e) for e in pair.complex.edges],
        "blowups": [_step_to_document(step) for step in pair.program],
    }
    if marking is not None:
        doc["markings"] = {
            "-".join(str(v) for v in sorted(key)): str(coord)
            for key, coord in marking.points
        }
    return doc


def _step_to_document(step) -> dict:
    if isinstance(step, PointBlowup):
        return {
            "kind": "point",
            "edge": list(step.edge),
            "coordinate": str(step.coordinate),
        }
    return {
        "kind": "curve",
        "component": step.component,
        "curve_class": list(step.curve_class),
        "points": {
            str(w): [str(q) for q in coords] for w, coords in step.points
        },
    }


def pair_from_document(doc: dict):
    """Parse and build a validated pair; returns ``(pair, marking_or_none)``."""
    if _field(doc, "format", "document") != PAIR_FORMAT:
        raise DocumentError("document: not a pair document")
    if _field(doc, "version", "document") != FORMAT_VERSION:
        raise DocumentError("document: unsupported version")
    if doc.get("lattice_rank", 3) != 3:
        raise DocumentError("document: lattice_rank must be 3")
    rays = _field(doc, "rays", "document")
    cones = _field(doc, "cones", "document")
    orientation = None
    if "orientation" in doc:
        orientation = (
            tuple(_field(doc["orientation"], "triangle", "orientation")),
            _field(doc["orientation"], "sign", "orientation"),
        )
    try:
        fan = Fan3(rays, cones, orientation)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"fan: {exc}") from exc
    program = [
        _step_from_document(entry, f"blowups[{i}]")
        for i, entry in enumerate(doc.get("blowups", []))
    ]
    edge_orientations = doc.get("edge_orientations")
    if edge_orientations is not None:
        edge_orientations = [tuple(e) for e in edge_orientations]
    try:
        pair = LogCY3Pair.build(fan, program, edge_orientations)
    except (PairError, FanError) as exc:
        raise DocumentError(f"pair: {exc}") from exc
    marking = None
    if "markings" in doc:
        values = {}
        for key, text in doc["markings"].items():
            try:
                v, w = (int(x) for x in key.split("-"))
            except ValueError as exc:
                raise DocumentError(f"markings: bad edge key {key!r}") from exc
            values[frozenset((v, w))] = _parse_coordinate(text, f"markings[{key}]")
        marking = Marking.build(values)
    return pair, marking


def _step_from_document(entry: dict, context: str):
    kind = _field(entry, "kind", context)
    if kind == "point":
        edge = tuple(_field(entry, "edge", context))
        coord = _parse_coordinate(_field(entry, "coordinate", context), context)
        return PointBlowup(edge, coord)
    if kind == "curve":
        points = []
        for w, coords in sorted(_field(entry, "points", context).items()):
            points.append(
                (
                    int(w),
                    tuple(
                        _parse_coordinate(q, f"{context}.points[{w}]")
                        for q in coords
                    ),
                )
            )
        return CurveBlowup(
            component=_field(entry, "component", context),
            curve_class=tuple(_field(entry, "curve_class", context)),
            points=tuple(points),
        )
    raise DocumentError(f"{context}: unknown blowup kind {kind!r}")


# ---------------------------------------------------------------------------
# Correspondence documents
# ---------------------------------------------------------------------------


def correspondence_to_document(corr: Correspondence) -> dict:
    doc = {
        "format": CORRESPONDENCE_FORMAT,
        "version": FORMAT_VERSION,
        "vertex_map": {str(a): b for a, b in corr.vertex_map},
        "step_map": list(corr.step_map),
    }
    if corr.mu is not None:
        doc["mu"] = [list(row) for row in corr.mu.data]
    if corr.mu_components:
        doc["mu_components"] = {
            str(v): [list(row) for row in m.data] for v, m in corr.mu_components
        }
    return doc


def correspondence_from_document(doc: dict) -> Correspondence:
    if _field(doc, "format", "document") != CORRESPONDENCE_FORMAT:
        raise DocumentError("document: not a correspondence document")
    if _field(doc, "version", "document") != FORMAT_VERSION:
        raise DocumentError("document: unsupported version")
    vertex_map = tuple(
        sorted((int(a), int(b)) for a, b in _field(doc, "vertex_map", "document").items())
    )
    step_map = tuple(int(x) for x in _field(doc, "step_map", "document"))
    mu = IntMatrix(doc["mu"]) if "mu" in doc else None
    mu_components = tuple(
        sorted(
            (int(v), IntMatrix(rows))
            for v, rows in doc.get("mu_components", {}).items()
        )
    )
    return Correspondence(vertex_map, step_map, mu, mu_components)


# ---------------------------------------------------------------------------
# File and text helpers
# ---------------------------------------------------------------------------


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document: top level must be an object")
    return doc


def load_pair(path):
    with open(path, encoding="utf-8") as handle:
        return pair_from_document(loads(handle.read()))


def load_correspondence(path):
    with open(path, encoding="utf-8") as handle:
        return correspondence_from_document(loads(handle.read()))
