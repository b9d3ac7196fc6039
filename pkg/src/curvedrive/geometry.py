"""Points, circles, rotations and geodesics on the three unit-curvature space forms.

The Euclidean plane and the Poincaré disk use 2 coordinates; the unit sphere
and the upper-sheet hyperboloid (x^2 + y^2 - z^2 = -1, z > 0) use 3.  The
hyperboloid is the computational substrate for hyperbolic geometry: disk
points are converted on the way in and back on the way out, so every
hyperbolic isometry is a Minkowski-orthogonal 3x3 matrix and every spherical
isometry an orthogonal one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    AntipodalError,
    DegenerateAngle,
    DomainError,
    GeometryMismatch,
    MissingCenters,
    NoTangentExists,
)

MODEL_TOL = 1e-9      # tau_model: tolerance for model-invariant checks
TANGENT_TOL = 1e-8    # tolerance for tangency root-finding residuals

_KINDS = ("euclidean", "hyperbolic", "spherical")
_HYPERBOLIC_MODELS = ("disk", "hyperboloid")

# Minkowski signature (+, +, -)
_J = np.diag([1.0, 1.0, -1.0])


@dataclass(frozen=True)
class Geometry:
    """Space-form tag: curvature 0, -1 or +1, plus the working model for -1."""

    kind: str
    model: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown geometry kind {self.kind!r}")
        if self.kind == "hyperbolic":
            if self.model == "":
                object.__setattr__(self, "model", "hyperboloid")
            elif self.model not in _HYPERBOLIC_MODELS:
                raise DomainError(f"unknown hyperbolic model {self.model!r}")
        elif self.model != "":
            raise DomainError(f"model only applies to hyperbolic geometry, got {self.model!r}")

    @property
    def curvature(self) -> float:
        return {"euclidean": 0.0, "hyperbolic": -1.0, "spherical": 1.0}[self.kind]

    @property
    def ndim(self) -> int:
        """Number of ambient coordinates a point carries."""
        if self.kind == "euclidean" or self.model == "disk":
            return 2
        return 3


EUCLIDEAN = Geometry("euclidean")
HYPERBOLOID = Geometry("hyperbolic", "hyperboloid")
DISK = Geometry("hyperbolic", "disk")
SPHERICAL = Geometry("spherical")


def _residual_scale(coords) -> float:
    # Quadric residuals of exact points grow like |coords|^2 * eps, so the
    # model tolerance is applied relative to that scale.
    return 1.0 + float(sum(c * c for c in coords))


@dataclass(frozen=True)
class Point:
    """A point of a space form, in the coordinates of its geometry's model."""

    geometry: Geometry
    coords: tuple

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        g = self.geometry
        if len(coords) != g.ndim:
            raise DomainError(f"{g.kind}/{g.model or '-'} point needs {g.ndim} coordinates")
        if any(not math.isfinite(c) for c in coords):
            raise DomainError("point coordinates must be finite")
        if g.model == "disk":
            if coords[0] ** 2 + coords[1] ** 2 >= 1.0:
                raise DomainError("disk point must satisfy ||p|| < 1")
        elif g.kind == "hyperbolic":
            x, y, z = coords
            if z <= 0.0:
                raise DomainError("hyperboloid point must have z > 0")
            if abs(x * x + y * y - z * z + 1.0) > MODEL_TOL * _residual_scale(coords):
                raise DomainError("point off the hyperboloid x^2 + y^2 - z^2 = -1")
        elif g.kind == "spherical":
            x, y, z = coords
            if abs(x * x + y * y + z * z - 1.0) > MODEL_TOL * _residual_scale(coords):
                raise DomainError("point off the unit sphere")

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)


@dataclass(frozen=True)
class Rotation:
    """Rotation of the space form about a center, by a signed angle in radians."""

    geometry: Geometry
    center: Point
    angle: float

    def __post_init__(self):
        if self.center.geometry.kind != self.geometry.kind:
            raise GeometryMismatch("rotation center must live in the rotation's geometry")


@dataclass(frozen=True)
class Circle:
    """Geometric circle: center plus intrinsic (geodesic) radius.

    The center may be None for drivetrain components whose placement is not
    specified; operations that need one raise MissingCenters.
    """

    geometry: Geometry
    center: Point | None
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "radius", float(self.radius))
        if not math.isfinite(self.radius) or self.radius <= 0.0:
            raise DomainError("circle radius must be positive and finite")
        if self.geometry.kind == "spherical" and self.radius >= math.pi:
            raise DomainError("spherical circle radius must satisfy 0 < R < pi")
        if self.center is not None and self.center.geometry != self.geometry:
            raise GeometryMismatch("circle center must live in the circle's geometry")

    def require_center(self) -> Point:
        if self.center is None:
            raise MissingCenters(f"circle of radius {self.radius} has no center")
        return self.center


# ---------------------------------------------------------------------------
# model conversions and primitive metric quantities
# ---------------------------------------------------------------------------

def minkowski_dot(u, v) -> float:
    """Bilinear form of signature (2, 1): u1*v1 + u2*v2 - u3*v3."""
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


def disk_to_hyperboloid(p: Point) -> Point:
    """Map a Poincaré-disk point to the upper hyperboloid sheet."""
    if p.geometry != DISK:
        raise DomainError("expected a Poincaré-disk point")
    x, y = p.coords
    s = x * x + y * y
    if s >= 1.0:
        raise DomainError("disk point must satisfy ||p|| < 1")
    d = 1.0 - s
    return Point(HYPERBOLOID, (2.0 * x / d, 2.0 * y / d, (1.0 + s) / d))


def hyperboloid_to_disk(p: Point) -> Point:
    """Inverse of disk_to_hyperboloid."""
    if p.geometry != HYPERBOLOID:
        raise DomainError("expected a hyperboloid point")
    x, y, z = p.coords
    return Point(DISK, (x / (1.0 + z), y / (1.0 + z)))


def _as_working(p: Point) -> Point:
    """Internal working coordinates: hyperboloid for hyperbolic input."""
    if p.geometry == DISK:
        return disk_to_hyperboloid(p)
    return p


def _as_model(p: Point, geometry: Geometry) -> Point:
    """Convert a working-coordinates point back to the caller's model."""
    if geometry == DISK:
        return hyperboloid_to_disk(p)
    return p


def distance(p: Point, q: Point) -> float:
    """Geodesic distance between two points of the same space form.

    Disk points are converted to the hyperboloid internally.  The hyperbolic
    branch uses 2*asinh(||p - q||_M / 2) and the spherical one
    atan2(||p x q||, <p, q>); both stay well conditioned for nearby points.
    """
    if p.geometry.kind != q.geometry.kind:
        raise GeometryMismatch(f"distance between {p.geometry.kind} and {q.geometry.kind} points")
    kind = p.geometry.kind
    if kind == "euclidean":
        return math.hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1])
    if kind == "hyperbolic":
        a = _as_working(p).array
        b = _as_working(q).array
        d = a - b
        return 2.0 * math.asinh(0.5 * math.sqrt(max(0.0, minkowski_dot(d, d))))
    a, b = p.array, q.array
    return math.atan2(float(np.linalg.norm(np.cross(a, b))), float(np.dot(a, b)))


def intrinsic_to_model_radius(g: Geometry, R: float) -> float:
    """Model (Euclidean) radius of a circle of intrinsic radius R."""
    _check_radius_domain(g, R)
    if g.kind == "euclidean":
        return R
    if g.kind == "hyperbolic":
        return math.tanh(0.5 * R) if g.model == "disk" else math.sinh(R)
    return math.sin(R)


def model_to_intrinsic_radius(g: Geometry, r: float) -> float:
    """Inverse of intrinsic_to_model_radius.

    On the sphere sin is not injective, so the inverse is restricted to the
    R <= pi/2 branch; callers wanting R > pi/2 must supply R explicitly.
    """
    if not math.isfinite(r) or r < 0.0:
        raise DomainError("model radius must be finite and nonnegative")
    if g.kind == "euclidean":
        return r
    if g.kind == "hyperbolic":
        if g.model == "disk":
            if r >= 1.0:
                raise DomainError("disk model radius must satisfy r < 1")
            return 2.0 * math.atanh(r)
        return math.asinh(r)
    if r > 1.0:
        raise DomainError("spherical model radius must satisfy r <= 1")
    return math.asin(r)


def circumference(g: Geometry, R: float) -> float:
    """Length of the circle of intrinsic radius R: 2*pi*{R, sinh R, sin R}."""
    _check_radius_domain(g, R, strict=True)
    if g.kind == "euclidean":
        return 2.0 * math.pi * R
    if g.kind == "hyperbolic":
        return 2.0 * math.pi * math.sinh(R)
    return 2.0 * math.pi * math.sin(R)


def _check_radius_domain(g: Geometry, R: float, strict: bool = False) -> None:
    if not math.isfinite(R):
        raise DomainError("radius must be finite")
    if R < 0.0 or (strict and R == 0.0):
        raise DomainError("radius must be positive")
    if g.kind == "spherical" and R >= math.pi:
        raise DomainError("spherical radius must satisfy R < pi")


# ---------------------------------------------------------------------------
# isometries
# ---------------------------------------------------------------------------

def _rodrigues(axis: np.ndarray, angle: float) -> np.ndarray:
    """3x3 rotation about a unit axis."""
    k = axis
    kx = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return math.cos(angle) * np.eye(3) + math.sin(angle) * kx + (1.0 - math.cos(angle)) * np.outer(k, k)


def _rot_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def sphere_transport(center: np.ndarray) -> np.ndarray:
    """Rotation carrying the north pole (0,0,1) to `center`."""
    axis = np.cross(np.array([0.0, 0.0, 1.0]), center)
    s = float(np.linalg.norm(axis))
    if s < 1e-15:
        if center[2] > 0.0:
            return np.eye(3)
        return np.diag([1.0, -1.0, -1.0])  # pole to antipode: half turn about x
    return _rodrigues(axis / s, math.atan2(s, float(center[2])))


def hyperboloid_transport(center: np.ndarray) -> np.ndarray:
    """Lorentz boost carrying the pole (0,0,1) to `center`."""
    rho = math.hypot(float(center[0]), float(center[1]))
    if rho < 1e-15:
        return np.eye(3)
    a, b = center[0] / rho, center[1] / rho
    k = float(center[2]) - 1.0
    return np.array(
        [
            [1.0 + k * a * a, k * a * b, rho * a],
            [k * a * b, 1.0 + k * b * b, rho * b],
            [rho * a, rho * b, float(center[2])],
        ]
    )


def _minkowski_inverse(m: np.ndarray) -> np.ndarray:
    return _J @ m.T @ _J


def _reproject(kind: str, v: np.ndarray) -> np.ndarray:
    # Drift policy: pull the point back onto its quadric after every isometry.
    if kind == "spherical":
        return v / float(np.linalg.norm(v))
    out = v.copy()
    out[2] = math.sqrt(1.0 + v[0] * v[0] + v[1] * v[1])
    return out


def rotation_matrix(geometry: Geometry, center: Point, angle: float) -> np.ndarray:
    """3x3 matrix of the rotation about `center` (sphere or hyperboloid)."""
    c = _as_working(center).array
    if geometry.kind == "spherical":
        return _rodrigues(c, angle)
    m = hyperboloid_transport(c)
    return m @ _rot_z(angle) @ _minkowski_inverse(m)


def rotate(rot: Rotation, p: Point) -> Point:
    """Apply a rotation of the space form to a point."""
    if rot.geometry.kind != p.geometry.kind:
        raise GeometryMismatch("rotation and point live on different space forms")
    if p.geometry.kind == "euclidean":
        cx, cy = rot.center.coords
        dx, dy = p.coords[0] - cx, p.coords[1] - cy
        c, s = math.cos(rot.angle), math.sin(rot.angle)
        return Point(EUCLIDEAN, (cx + c * dx - s * dy, cy + s * dx + c * dy))
    mat = rotation_matrix(rot.geometry, rot.center, rot.angle)
    work = _as_working(p)
    moved = _reproject(p.geometry.kind, mat @ work.array)
    return _as_model(Point(work.geometry, tuple(moved)), p.geometry)


def _tangent_basis(kind: str, c: np.ndarray):
    """Oriented orthonormal basis (e1, e2) of the tangent plane at c.

    Orientation is fixed by det[e1; e2; c] > 0, which matches the
    counterclockwise sense of the disk and the plane.
    """
    if kind == "spherical":
        up = np.array([0.0, 0.0, 1.0]) if abs(c[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        e1 = up - float(np.dot(up, c)) * c
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(c, e1)
        return e1, e2
    up = np.array([1.0, 0.0, 0.0])
    e1 = up + minkowski_dot(up, c) * c
    e1 = e1 / math.sqrt(max(minkowski_dot(e1, e1), 1e-300))
    e2 = _J @ np.cross(c, e1)  # Lorentzian cross product
    e2 = e2 / math.sqrt(max(minkowski_dot(e2, e2), 1e-300))
    return e1, e2


def _tangent_toward(kind: str, c: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Component of p orthogonal to c: direction of the geodesic c -> p."""
    if kind == "spherical":
        return p - float(np.dot(p, c)) * c
    return p + minkowski_dot(p, c) * c


def _wrap_angle(a: float) -> float:
    """Wrap to (-pi, pi]."""
    w = math.fmod(a, 2.0 * math.pi)
    if w > math.pi:
        w -= 2.0 * math.pi
    elif w <= -math.pi:
        w += 2.0 * math.pi
    return w


def oriented_angle(center: Point, a: Point, b: Point) -> float:
    """Signed angle at `center` between the geodesic rays toward a and b.

    Measured against the space form's orientation; result in (-pi, pi].
    """
    if not (center.geometry.kind == a.geometry.kind == b.geometry.kind):
        raise GeometryMismatch("oriented_angle arguments live on different space forms")
    kind = center.geometry.kind
    if kind == "euclidean":
        ca = (a.coords[0] - center.coords[0], a.coords[1] - center.coords[1])
        cb = (b.coords[0] - center.coords[0], b.coords[1] - center.coords[1])
        if math.hypot(*ca) < 1e-14 or math.hypot(*cb) < 1e-14:
            raise DegenerateAngle("point coincides with the angle vertex")
        return _wrap_angle(math.atan2(cb[1], cb[0]) - math.atan2(ca[1], ca[0]))
    c = _as_working(center).array
    pa = _as_working(a).array
    pb = _as_working(b).array
    if kind == "spherical":
        if float(np.linalg.norm(pa + c)) < 1e-9 or float(np.linalg.norm(pb + c)) < 1e-9:
            raise AntipodalError("angle undefined for a point antipodal to the vertex")
    ta = _tangent_toward(kind, c, pa)
    tb = _tangent_toward(kind, c, pb)
    if float(np.linalg.norm(ta)) < 1e-14 or float(np.linalg.norm(tb)) < 1e-14:
        raise DegenerateAngle("point coincides with the angle vertex")
    e1, e2 = _tangent_basis(kind, c)
    if kind == "spherical":
        theta_a = math.atan2(float(np.dot(ta, e2)), float(np.dot(ta, e1)))
        theta_b = math.atan2(float(np.dot(tb, e2)), float(np.dot(tb, e1)))
    else:
        theta_a = math.atan2(minkowski_dot(ta, e2), minkowski_dot(ta, e1))
        theta_b = math.atan2(minkowski_dot(tb, e2), minkowski_dot(tb, e1))
    return _wrap_angle(theta_b - theta_a)


# ---------------------------------------------------------------------------
# circle boundaries and tangent geodesics
# ---------------------------------------------------------------------------

def _canonical_boundary(kind: str, R: float, theta: float) -> np.ndarray:
    if kind == "hyperbolic":
        r = math.sinh(R)
        return np.array([r * math.cos(theta), r * math.sin(theta), math.cosh(R)])
    r = math.sin(R)
    return np.array([r * math.cos(theta), r * math.sin(theta), math.cos(R)])


def _canonical_boundary_velocity(kind: str, R: float, theta: float) -> np.ndarray:
    r = math.sinh(R) if kind == "hyperbolic" else math.sin(R)
    return np.array([-r * math.sin(theta), r * math.cos(theta), 0.0])


def boundary_point(c: Circle, theta: float) -> Point:
    """Point of the circle boundary at parameter angle theta.

    theta is measured in the circle's own oriented polar frame, so
    oriented_angle(center, boundary_point(c, 0), boundary_point(c, t)) = t
    up to wrapping.
    """
    center = c.require_center()
    if c.geometry.kind == "euclidean":
        cx, cy = center.coords
        return Point(EUCLIDEAN, (cx + c.radius * math.cos(theta), cy + c.radius * math.sin(theta)))
    kind = c.geometry.kind
    work = _as_working(center)
    m = sphere_transport(work.array) if kind == "spherical" else hyperboloid_transport(work.array)
    p = _reproject(kind, m @ _canonical_boundary(kind, c.radius, theta))
    return _as_model(Point(work.geometry, tuple(p)), center.geometry)


@dataclass(frozen=True)
class GeodesicTangent:
    """A geodesic tangent to two circles, with its contact points.

    For curved geometries `pole` is the (Minkowski-)unit normal of the plane
    through the origin cutting the geodesic, oriented so that the first
    circle's center lies at signed distance +R1.  Hyperbolic poles are always
    in hyperboloid coordinates, whatever the circle model.  For the plane the
    geodesic is `line_point` + span(`line_direction`).
    """

    geometry: Geometry
    kind: str  # "outer" or "inner"
    contact_a: Point
    contact_b: Point
    pole: tuple | None = None
    line_point: tuple | None = None
    line_direction: tuple | None = None


def signed_geodesic_distance(geometry: Geometry, p: Point, tangent: GeodesicTangent) -> float:
    """Signed intrinsic distance from a point to a tangent-geodesic descriptor."""
    kind = geometry.kind
    if kind == "euclidean":
        px, py = p.coords
        ox, oy = tangent.line_point
        dx, dy = tangent.line_direction
        nx, ny = -dy, dx
        return (px - ox) * nx + (py - oy) * ny
    w = np.array(tangent.pole)
    v = _as_working(p).array
    if kind == "spherical":
        return math.asin(max(-1.0, min(1.0, float(np.dot(v, w)))))
    return math.asinh(minkowski_dot(v, w))


def _tangent_line_at(kind: str, transport: np.ndarray, R: float, phi: float):
    """Geodesic tangent to the canonical circle at angle phi, moved by `transport`.

    Returns (contact point, pole/direction data) with the pole oriented so the
    circle's own center sits at signed distance +R.
    """
    p0 = _canonical_boundary(kind, R, phi)
    v0 = _canonical_boundary_velocity(kind, R, phi)
    p = transport @ p0
    v = transport @ v0
    if kind == "spherical":
        w = np.cross(p, v)
        w /= np.linalg.norm(w)
        return _reproject(kind, p), w
    w = _J @ np.cross(p, v)
    w = w / math.sqrt(minkowski_dot(w, w))
    return _reproject(kind, p), w


def _euclidean_tangent_line_at(center, R: float, phi: float):
    cx, cy = center
    p = (cx + R * math.cos(phi), cy + R * math.sin(phi))
    d = (-math.sin(phi), math.cos(phi))
    return p, d


def _foot_of_perpendicular(kind: str, w: np.ndarray, m: np.ndarray) -> np.ndarray:
    if kind == "spherical":
        q = m - float(np.dot(m, w)) * w
        return q / np.linalg.norm(q)
    q = m - minkowski_dot(m, w) * w
    q = q / math.sqrt(-minkowski_dot(q, q))
    if q[2] < 0.0:
        q = -q
    return q


def tangent_geodesics(c1: Circle, c2: Circle) -> list[GeodesicTangent]:
    """Common tangent geodesics of two circles with disjoint interiors.

    Outer tangents leave both centers on the same side (open belts), inner
    tangents separate them (crossed belts).  Solved by bracketing the contact
    angle on the first circle and refining each root by Brent's method.
    """
    if c1.geometry.kind != c2.geometry.kind:
        raise GeometryMismatch("tangent geodesics need circles on the same space form")
    m1 = c1.require_center()
    m2 = c2.require_center()
    kind = c1.geometry.kind

    d = distance(m1, m2)
    if d <= abs(c1.radius - c2.radius) + 1e-12:
        raise NoTangentExists("one circle lies inside the other")
    if kind == "spherical" and max(c1.radius, c2.radius) >= 0.5 * math.pi:
        # signed distance to a great circle caps at pi/2, so the contact-angle
        # root equation has no solution past that radius
        raise NoTangentExists("spherical tangency needs both radii < pi/2")

    if kind == "euclidean":
        center1 = m1.coords
        m2a = np.array(m2.coords)

        def sd(phi: float, s: float) -> float:
            p, dvec = _euclidean_tangent_line_at(center1, c1.radius, phi)
            nx, ny = -dvec[1], dvec[0]
            return (m2a[0] - p[0]) * nx + (m2a[1] - p[1]) * ny - s * c2.radius

        def make(phi: float, label: str) -> GeodesicTangent:
            p, dvec = _euclidean_tangent_line_at(center1, c1.radius, phi)
            nx, ny = -dvec[1], dvec[0]
            t = (m2a[0] - p[0]) * dvec[0] + (m2a[1] - p[1]) * dvec[1]
            foot = (p[0] + t * dvec[0], p[1] + t * dvec[1])
            return GeodesicTangent(
                geometry=c1.geometry,
                kind=label,
                contact_a=Point(EUCLIDEAN, p),
                contact_b=Point(EUCLIDEAN, foot),
                line_point=p,
                line_direction=dvec,
            )

    else:
        work_geom = SPHERICAL if kind == "spherical" else HYPERBOLOID
        cw1 = _as_working(m1).array
        cw2 = _as_working(m2).array
        transport = sphere_transport(cw1) if kind == "spherical" else hyperboloid_transport(cw1)

        def sd(phi: float, s: float) -> float:
            _, w = _tangent_line_at(kind, transport, c1.radius, phi)
            if kind == "spherical":
                val = math.asin(max(-1.0, min(1.0, float(np.dot(cw2, w)))))
            else:
                val = math.asinh(minkowski_dot(cw2, w))
            return val - s * c2.radius

        def make(phi: float, label: str) -> GeodesicTangent:
            p, w = _tangent_line_at(kind, transport, c1.radius, phi)
            foot = _foot_of_perpendicular(kind, w, cw2)
            return GeodesicTangent(
                geometry=c1.geometry,
                kind=label,
                contact_a=_as_model(Point(work_geom, tuple(p)), m1.geometry),
                contact_b=_as_model(Point(work_geom, tuple(foot)), m2.geometry),
                pole=tuple(w),
            )

    results: list[GeodesicTangent] = []
    n_scan = 720
    grid = np.linspace(0.0, 2.0 * math.pi, n_scan + 1)
    for s, label in ((1.0, "outer"), (-1.0, "inner")):
        vals = [sd(phi, s) for phi in grid]
        roots: list[float] = []
        for i in range(n_scan):
            f0, f1 = vals[i], vals[i + 1]
            if f0 == 0.0:
                roots.append(float(grid[i]))
            elif f0 * f1 < 0.0:
                roots.append(brentq(sd, grid[i], grid[i + 1], args=(s,), xtol=1e-13))
        deduped: list[float] = []
        for r in roots:
            if all(abs(_wrap_angle(r - prev)) > 1e-6 for prev in deduped):
                deduped.append(r)
        for r in deduped:
            results.append(make(r, label))

    if not results:
        raise NoTangentExists("no common tangent geodesic found")
    return results
