"""Static SVG rendering of scenes: disk, orthographic sphere, or plane.

The canvas is fixed at 1000x1000 user units with the disk boundary (or
sphere outline) at radius 480; all numbers are written with four decimals so
output is byte-reproducible.  Hyperbolic scenes are drawn in the Poincaré
disk: circles become Euclidean circles (circumscribed through three boundary
points, exact for Möbius images) and belt geodesics become circular arcs
orthogonal to the boundary.  Spherical scenes project orthographically along
+z with hidden-hemisphere parts dashed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import MissingCenters, NoTangentExists
from .geometry import (
    Circle,
    GeodesicTangent,
    Point,
    boundary_point,
    hyperboloid_to_disk,
    tangent_geodesics,
)
from .scene import SceneDocument, scene_to_graph

CANVAS = 1000.0
RADIUS = 480.0

_CIRCLE_SAMPLES = 256
_ARC_SAMPLES = 64


def _fmt(v: float) -> str:
    out = f"{v:.4f}"
    return "0.0000" if out == "-0.0000" else out


def _svg_open() -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS:.0f}" '
        f'height="{CANVAS:.0f}" viewBox="0 0 {CANVAS:.0f} {CANVAS:.0f}">',
        f'<rect width="{CANVAS:.0f}" height="{CANVAS:.0f}" fill="white"/>',
    ]


def _circle_el(cx: float, cy: float, r: float, width: float = 2.0) -> str:
    return (
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
        f'fill="none" stroke="black" stroke-width="{width:g}"/>'
    )


def _path_el(d: str, width: float = 1.5, dashed: bool = False) -> str:
    dash = ' stroke-dasharray="6 6"' if dashed else ""
    return f'<path d="{d}" fill="none" stroke="black" stroke-width="{width:g}"{dash}/>'


def _polyline_d(pts, close: bool = False) -> str:
    parts = [f"M {_fmt(pts[0][0])} {_fmt(pts[0][1])}"]
    parts.extend(f"L {_fmt(x)} {_fmt(y)}" for x, y in pts[1:])
    if close:
        parts.append("Z")
    return " ".join(parts)


def _require_all_centers(graph) -> None:
    missing = sorted(n for n, node in graph.nodes.items() if node.circle.center is None)
    if missing:
        raise MissingCenters(f"rendering needs centers for: {', '.join(missing)}")


def _belt_tangents(graph) -> list[tuple[GeodesicTangent, bool]]:
    out = []
    for edge in graph.edges:
        coupling = edge.coupling
        crossed = getattr(coupling, "crossed", None)
        if crossed is None:  # mesh edges carry no belt
            continue
        wanted = "inner" if crossed else "outer"
        tangents = [
            t
            for t in tangent_geodesics(graph.nodes[edge.a].circle, graph.nodes[edge.b].circle)
            if t.kind == wanted
        ]
        if not tangents:
            raise NoTangentExists(
                f"belt {edge.a!r}-{edge.b!r} has no {wanted} tangent geodesics"
            )
        out.extend((t, crossed) for t in tangents)
    return out


# -- Poincaré disk ----------------------------------------------------------

def _to_canvas_disk(x: float, y: float) -> tuple[float, float]:
    return 500.0 + RADIUS * x, 500.0 - RADIUS * y


def _disk_coords(p: Point) -> tuple[float, float]:
    if p.geometry.model == "disk":
        return p.coords
    return hyperboloid_to_disk(p).coords


def _circumscribe(p1, p2, p3) -> tuple[float, float, float]:
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    d = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2))
    s1, s2, s3 = x1 * x1 + y1 * y1, x2 * x2 + y2 * y2, x3 * x3 + y3 * y3
    ux = (s1 * (y2 - y3) + s2 * (y3 - y1) + s3 * (y1 - y2)) / d
    uy = (s1 * (x3 - x2) + s2 * (x1 - x3) + s3 * (x2 - x1)) / d
    return ux, uy, math.hypot(x1 - ux, y1 - uy)


def disk_circle(circle: Circle) -> tuple[float, float, float]:
    """Euclidean center and radius of a hyperbolic circle's disk image."""
    pts = [_disk_coords(boundary_point(circle, t)) for t in (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)]
    return _circumscribe(*pts)


def _disk_belt_path(tangent: GeodesicTangent) -> str:
    ax, ay = _disk_coords(tangent.contact_a)
    bx, by = _disk_coords(tangent.contact_b)
    w = tangent.pole
    p1 = _to_canvas_disk(ax, ay)
    p2 = _to_canvas_disk(bx, by)
    if abs(w[2]) < 1e-9:  # geodesic through the origin: a diameter
        return f"M {_fmt(p1[0])} {_fmt(p1[1])} L {_fmt(p2[0])} {_fmt(p2[1])}"
    kx, ky = w[0] / w[2], w[1] / w[2]
    rho = 1.0 / abs(w[2])
    kc = _to_canvas_disk(kx, ky)
    r = RADIUS * rho
    a1 = math.atan2(p1[1] - kc[1], p1[0] - kc[0])
    a2 = math.atan2(p2[1] - kc[1], p2[0] - kc[0])
    delta = math.fmod(a2 - a1, 2.0 * math.pi)
    if delta > math.pi:
        delta -= 2.0 * math.pi
    elif delta <= -math.pi:
        delta += 2.0 * math.pi
    sweep = 1 if delta > 0 else 0
    return (
        f"M {_fmt(p1[0])} {_fmt(p1[1])} "
        f"A {_fmt(r)} {_fmt(r)} 0 0 {sweep} {_fmt(p2[0])} {_fmt(p2[1])}"
    )


def _render_disk(graph) -> list[str]:
    parts = _svg_open()
    parts.append(_circle_el(500.0, 500.0, RADIUS, width=1.0))
    for name in sorted(graph.nodes):
        cx, cy, r = disk_circle(graph.nodes[name].circle)
        ccx, ccy = _to_canvas_disk(cx, cy)
        parts.append(_circle_el(ccx, ccy, RADIUS * r))
    for tangent, _ in _belt_tangents(graph):
        parts.append(_path_el(_disk_belt_path(tangent)))
    parts.append("</svg>")
    return parts


# -- orthographic sphere ----------------------------------------------------

def _to_canvas_sphere(p) -> tuple[float, float]:
    return 500.0 + RADIUS * p[0], 500.0 - RADIUS * p[1]


def _visible_runs(points3d, closed: bool) -> list[tuple[bool, list]]:
    """Split a 3d polyline into maximal same-visibility runs (z >= 0 front)."""
    flags = [p[2] >= 0.0 for p in points3d]
    n = len(points3d)
    if closed and all(flags):
        return [(True, list(points3d) + [points3d[0]])]
    if closed and not any(flags):
        return [(False, list(points3d) + [points3d[0]])]
    start = 0
    if closed:
        while flags[start] == flags[start - 1]:
            start += 1  # rotate to a visibility transition
        order = list(range(start, n)) + list(range(start))
        points3d = [points3d[i] for i in order]
        flags = [flags[i] for i in order]
        points3d.append(points3d[0])
        flags.append(flags[0])
    runs: list[tuple[bool, list]] = []
    cur = [points3d[0]]
    cur_flag = flags[0]
    for p, f in zip(points3d[1:], flags[1:]):
        cur.append(p)
        if f != cur_flag:
            runs.append((cur_flag, cur))
            cur = [p]
            cur_flag = f
    runs.append((cur_flag, cur))
    return [r for r in runs if len(r[1]) >= 2]


def _sphere_polyline(points3d, closed: bool, width: float) -> list[str]:
    parts = []
    for visible, run in _visible_runs(points3d, closed):
        pts = [_to_canvas_sphere(p) for p in run]
        parts.append(_path_el(_polyline_d(pts), width=width, dashed=not visible))
    return parts


def _slerp(a, b, t: float):
    omega = math.acos(max(-1.0, min(1.0, float(np.dot(a, b)))))
    if omega < 1e-12:
        return a
    s = math.sin(omega)
    return (math.sin((1.0 - t) * omega) * a + math.sin(t * omega) * b) / s


def _render_sphere(graph) -> list[str]:
    parts = _svg_open()
    parts.append(_circle_el(500.0, 500.0, RADIUS, width=1.0))
    for name in sorted(graph.nodes):
        circle = graph.nodes[name].circle
        pts = [
            boundary_point(circle, 2.0 * math.pi * k / _CIRCLE_SAMPLES).array
            for k in range(_CIRCLE_SAMPLES)
        ]
        parts.extend(_sphere_polyline(pts, closed=True, width=2.0))
    for tangent, _ in _belt_tangents(graph):
        a = tangent.contact_a.array
        b = tangent.contact_b.array
        pts = [_slerp(a, b, k / _ARC_SAMPLES) for k in range(_ARC_SAMPLES + 1)]
        parts.extend(_sphere_polyline(pts, closed=False, width=1.5))
    parts.append("</svg>")
    return parts


# -- Euclidean plane --------------------------------------------------------

def _render_euclidean(graph) -> list[str]:
    xs, ys = [], []
    for node in graph.nodes.values():
        cx, cy = node.circle.center.coords
        xs.extend((cx - node.circle.radius, cx + node.circle.radius))
        ys.extend((cy - node.circle.radius, cy + node.circle.radius))
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-12)
    scale = 2.0 * RADIUS / (span * 1.1)
    mx, my = 0.5 * (max(xs) + min(xs)), 0.5 * (max(ys) + min(ys))

    def to_canvas(x: float, y: float) -> tuple[float, float]:
        return 500.0 + scale * (x - mx), 500.0 - scale * (y - my)

    parts = _svg_open()
    for name in sorted(graph.nodes):
        circle = graph.nodes[name].circle
        ccx, ccy = to_canvas(*circle.center.coords)
        parts.append(_circle_el(ccx, ccy, scale * circle.radius))
    for tangent, _ in _belt_tangents(graph):
        p1 = to_canvas(*tangent.contact_a.coords)
        p2 = to_canvas(*tangent.contact_b.coords)
        parts.append(_path_el(f"M {_fmt(p1[0])} {_fmt(p1[1])} L {_fmt(p2[0])} {_fmt(p2[1])}"))
    parts.append("</svg>")
    return parts


def render_scene(doc: SceneDocument) -> str:
    """Render a scene to an SVG document string."""
    graph, _ = scene_to_graph(doc)
    _require_all_centers(graph)
    if doc.geometry == "euclidean":
        parts = _render_euclidean(graph)
    elif doc.geometry == "spherical":
        parts = _render_sphere(graph)
    else:
        parts = _render_disk(graph)
    return "\n".join(parts) + "\n"
