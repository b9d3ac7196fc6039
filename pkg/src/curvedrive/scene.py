"""Scene documents: strict JSON parsing, serialization, and graph building.

A scene is one JSON object with bit-exact field names::

    {
      "geometry": "euclidean" | "hyperbolic" | "spherical",
      "model": "disk" | "hyperboloid",        # optional, hyperbolic only
      "components": [
        {"id": "...", "kind": "gear" | "pulley", "radius": R,
         "teeth": n,                            # gears only
         "center": [x, y] | [x, y, z]}          # optional
      ],
      "links": [{"kind": "mesh" | "belt", "a": id, "b": id, "crossed": bool}],
      "drive": {"id": id, "omega": w | {"values": [...], "step": h}}
    }

Unknown fields are rejected.  Euclidean and disk centers are 2-vectors (disk
norm < 1), spherical centers unit 3-vectors, hyperboloid centers 3-vectors on
the upper sheet.  A sampled "omega" object carries the drive's angle samples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError, SceneReferenceError, SchemaError
from .geometry import DISK, EUCLIDEAN, HYPERBOLOID, SPHERICAL, Circle, Geometry, Point
from .kinematics import AngleFunction, Gear, Pulley
from .drivetrain import Belt, DriveSpec, DrivetrainGraph, Edge, Mesh

_GEOMETRIES = ("euclidean", "hyperbolic", "spherical")
_COMPONENT_KINDS = ("gear", "pulley")
_LINK_KINDS = ("mesh", "belt")


@dataclass(frozen=True)
class SampledOmega:
    values: tuple
    step: float


@dataclass(frozen=True)
class SceneComponent:
    id: str
    kind: str
    radius: float
    teeth: int | None = None
    center: tuple | None = None


@dataclass(frozen=True)
class SceneLink:
    kind: str
    a: str
    b: str
    crossed: bool | None = None


@dataclass(frozen=True)
class SceneDrive:
    id: str
    omega: float | SampledOmega


@dataclass(frozen=True)
class SceneDocument:
    geometry: str
    components: tuple
    links: tuple
    drive: SceneDrive
    model: str | None = None


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise SchemaError(f"{path}: missing required field {key!r}")
    return obj[key]

def _reject_unknown(obj: dict, allowed, path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}: unknown field")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number")
    return float(value)


def _string(value, path: str, choices=None) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{path}: expected a string")
    if choices is not None and value not in choices:
        raise SchemaError(f"{path}: expected one of {', '.join(choices)}; got {value!r}")
    return value


def _parse_component(obj, geometry: str, model: str, index: int) -> SceneComponent:
    path = f"components[{index}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    _reject_unknown(obj, ("id", "kind", "radius", "teeth", "center"), path)
    cid = _string(_require(obj, "id", path), f"{path}.id")
    kind = _string(_require(obj, "kind", path), f"{path}.kind", _COMPONENT_KINDS)
    radius = _number(_require(obj, "radius", path), f"{path}.radius")
    if radius <= 0.0 or not math.isfinite(radius):
        raise SchemaError(f"{path}.radius: must be positive and finite")
    if geometry == "spherical" and radius >= math.pi:
        raise SchemaError(f"{path}.radius: spherical radius must satisfy R < pi")
    teeth = None
    if kind == "gear":
        raw = _require(obj, "teeth", path)
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise SchemaError(f"{path}.teeth: expected an integer")
        if raw < 3:
            raise SchemaError(f"{path}.teeth: gears need at least 3 teeth")
        teeth = raw
    elif "teeth" in obj:
        raise SchemaError(f"{path}.teeth: pulleys have no teeth")
    center = None
    if "center" in obj:
        raw = obj["center"]
        if not isinstance(raw, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw
        ):
            raise SchemaError(f"{path}.center: expected a list of numbers")
        expected = 2 if geometry == "euclidean" or model == "disk" else 3
        if len(raw) != expected:
            raise SchemaError(f"{path}.center: expected {expected} coordinates")
        center = tuple(float(v) for v in raw)
        try:
            Point(_io_geometry(geometry, model), center)
        except DomainError as exc:
            raise SchemaError(f"{path}.center: {exc}") from exc
    return SceneComponent(id=cid, kind=kind, radius=radius, teeth=teeth, center=center)


def _parse_link(obj, index: int) -> SceneLink:
    path = f"links[{index}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    _reject_unknown(obj, ("kind", "a", "b", "crossed"), path)
    kind = _string(_require(obj, "kind", path), f"{path}.kind", _LINK_KINDS)
    a = _string(_require(obj, "a", path), f"{path}.a")
    b = _string(_require(obj, "b", path), f"{path}.b")
    crossed = None
    if "crossed" in obj:
        if kind != "belt":
            raise SchemaError(f"{path}.crossed: only belts can be crossed")
        if not isinstance(obj["crossed"], bool):
            raise SchemaError(f"{path}.crossed: expected a boolean")
        crossed = obj["crossed"]
    return SceneLink(kind=kind, a=a, b=b, crossed=crossed)


def _parse_drive(obj) -> SceneDrive:
    path = "drive"
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    _reject_unknown(obj, ("id", "omega"), path)
    did = _string(_require(obj, "id", path), f"{path}.id")
    raw = _require(obj, "omega", path)
    if isinstance(raw, dict):
        _reject_unknown(raw, ("values", "step"), f"{path}.omega")
        values = _require(raw, "values", f"{path}.omega")
        if not isinstance(values, list) or len(values) < 2 or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise SchemaError(f"{path}.omega.values: expected a list of at least 2 numbers")
        if float(values[0]) != 0.0:
            raise SchemaError(f"{path}.omega.values: angle samples must start at 0")
        step = _number(_require(raw, "step", f"{path}.omega"), f"{path}.omega.step")
        if step <= 0.0:
            raise SchemaError(f"{path}.omega.step: must be positive")
        omega = SampledOmega(values=tuple(float(v) for v in values), step=step)
    else:
        omega = _number(raw, f"{path}.omega")
    return SceneDrive(id=did, omega=omega)


def parse_scene(text: str) -> SceneDocument:
    """Parse and validate a scene document; raises SchemaError or
    SceneReferenceError with the path of the first violation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top level: expected an object")
    _reject_unknown(data, ("geometry", "model", "components", "links", "drive"), "top level")
    geometry = _string(_require(data, "geometry", "top level"), "geometry", _GEOMETRIES)
    model = None
    if "model" in data:
        if geometry != "hyperbolic":
            raise SchemaError("model: only hyperbolic scenes choose a model")
        model = _string(data["model"], "model", ("disk", "hyperboloid"))
    effective_model = (model or "disk") if geometry == "hyperbolic" else ""

    raw_components = _require(data, "components", "top level")
    if not isinstance(raw_components, list) or not raw_components:
        raise SchemaError("components: expected a non-empty list")
    components = tuple(
        _parse_component(obj, geometry, effective_model, i)
        for i, obj in enumerate(raw_components)
    )
    ids = [c.id for c in components]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise SchemaError(f"components: duplicate id {dupes[0]!r}")

    raw_links = _require(data, "links", "top level")
    if not isinstance(raw_links, list):
        raise SchemaError("links: expected a list")
    links = tuple(_parse_link(obj, i) for i, obj in enumerate(raw_links))
    known = set(ids)
    for i, link in enumerate(links):
        for side in ("a", "b"):
            ref = getattr(link, side)
            if ref not in known:
                raise SceneReferenceError(f"links[{i}].{side}: unknown component id {ref!r}")

    drive = _parse_drive(_require(data, "drive", "top level"))
    if drive.id not in known:
        raise SceneReferenceError(f"drive.id: unknown component id {drive.id!r}")
    return SceneDocument(geometry=geometry, components=components, links=links,
                         drive=drive, model=model)


def serialize_scene(doc: SceneDocument) -> str:
    """Inverse of parse_scene: parse(serialize(doc)) == doc."""
    data: dict = {"geometry": doc.geometry}
    if doc.model is not None:
        data["model"] = doc.model
    comps = []
    for c in doc.components:
        obj: dict = {"id": c.id, "kind": c.kind, "radius": c.radius}
        if c.teeth is not None:
            obj["teeth"] = c.teeth
        if c.center is not None:
            obj["center"] = list(c.center)
        comps.append(obj)
    data["components"] = comps
    links = []
    for l in doc.links:
        obj = {"kind": l.kind, "a": l.a, "b": l.b}
        if l.crossed is not None:
            obj["crossed"] = l.crossed
        links.append(obj)
    data["links"] = links
    if isinstance(doc.drive.omega, SampledOmega):
        omega = {"values": list(doc.drive.omega.values), "step": doc.drive.omega.step}
    else:
        omega = doc.drive.omega
    data["drive"] = {"id": doc.drive.id, "omega": omega}
    return json.dumps(data, indent=2)


def _io_geometry(geometry: str, model: str) -> Geometry:
    if geometry == "euclidean":
        return EUCLIDEAN
    if geometry == "spherical":
        return SPHERICAL
    return DISK if model == "disk" else HYPERBOLOID


def scene_geometry(doc: SceneDocument) -> Geometry:
    return _io_geometry(doc.geometry, doc.model or "disk")


def scene_to_graph(doc: SceneDocument) -> tuple[DrivetrainGraph, DriveSpec]:
    """Build the drivetrain graph and drive spec a scene describes."""
    geometry = scene_geometry(doc)
    nodes = {}
    for c in doc.components:
        center = Point(geometry, c.center) if c.center is not None else None
        circle = Circle(geometry, center, c.radius)
        nodes[c.id] = Gear(circle, c.teeth) if c.kind == "gear" else Pulley(circle)
    edges = []
    for l in doc.links:
        coupling = Mesh() if l.kind == "mesh" else Belt(crossed=bool(l.crossed))
        edges.append(Edge(a=l.a, b=l.b, coupling=coupling))
    if isinstance(doc.drive.omega, SampledOmega):
        omega = AngleFunction.sampled(doc.drive.omega.values, doc.drive.omega.step)
        return DrivetrainGraph(geometry, nodes, edges), DriveSpec(doc.drive.id, omega)
    return DrivetrainGraph(geometry, nodes, edges), DriveSpec(doc.drive.id, doc.drive.omega)
