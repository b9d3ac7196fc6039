"""Brute-force numerical verifiers for the closed-form drivetrain laws.

Everything here is deliberately independent of the closed forms it checks:
distances, metric norms and circle boundaries are recomputed locally from the
primitive formulas (Minkowski/Euclidean dot products, the disk line element),
and circle sizes are recovered by root-finding on the distance function
rather than through any radius-conversion law.  The only geometry-kernel
import is `oriented_angle`, which the angular-velocity discretization is
defined in terms of.

The disk and hyperboloid branches are separate computational routes on
purpose: running the same check through both is the cross-model consistency
test for the two derivations of the hyperbolic belt law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, GeometryMismatch
from .geometry import Circle, Point, oriented_angle
from .kinematics import AngleFunction


def _model_tag(geometry) -> str:
    if geometry.kind == "euclidean":
        return "euclidean"
    if geometry.kind == "spherical":
        return "sphere"
    return geometry.model  # disk | hyperboloid


# -- primitive distances, one branch per model ------------------------------

def _dist_euclidean(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _dist_disk(p, q) -> float:
    # sinh^2(d/2) = |p-q|^2 / ((1-|p|^2)(1-|q|^2)), from the disk line element
    dd = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
    den = (1.0 - p[0] ** 2 - p[1] ** 2) * (1.0 - q[0] ** 2 - q[1] ** 2)
    return 2.0 * math.asinh(math.sqrt(dd / den))


def _dist_hyperboloid(p, q) -> float:
    d = (p[0] - q[0], p[1] - q[1], p[2] - q[2])
    m = d[0] * d[0] + d[1] * d[1] - d[2] * d[2]
    return 2.0 * math.asinh(0.5 * math.sqrt(max(m, 0.0)))


def _dist_sphere(p, q) -> float:
    cx = p[1] * q[2] - p[2] * q[1]
    cy = p[2] * q[0] - p[0] * q[2]
    cz = p[0] * q[1] - p[1] * q[0]
    dot = p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
    return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), dot)


_DIST = {
    "euclidean": _dist_euclidean,
    "disk": _dist_disk,
    "hyperboloid": _dist_hyperboloid,
    "sphere": _dist_sphere,
}


def _tangent_norm(tag: str, base, v) -> float:
    """Metric norm of an ambient vector v attached at base."""
    if tag == "disk":
        return 2.0 * math.hypot(v[0], v[1]) / (1.0 - base[0] ** 2 - base[1] ** 2)
    if tag == "hyperboloid":
        return math.sqrt(max(v[0] * v[0] + v[1] * v[1] - v[2] * v[2], 0.0))
    return math.sqrt(sum(c * c for c in v))


# -- canonical circles recovered from the distance function ----------------

def _canonical_center(tag: str):
    if tag in ("euclidean", "disk"):
        return (0.0, 0.0)
    return (0.0, 0.0, 1.0)


def _solve_model_radius(tag: str, R: float):
    """Model radius (and boundary height) of the centered circle of intrinsic
    radius R, found by bracketing the distance-to-center residual."""
    if R <= 0.0:
        raise DomainError("intrinsic radius must be positive")
    center = _canonical_center(tag)
    dist = _DIST[tag]
    if tag == "euclidean":
        f = lambda x: dist(center, (x, 0.0)) - R
        x = brentq(f, 0.0, R + 1.0, xtol=1e-15)
        return x, 0.0
    if tag == "disk":
        f = lambda x: dist(center, (x, 0.0)) - R
        x = brentq(f, 0.0, 1.0 - 1e-12, xtol=1e-15)
        return x, 0.0
    if tag == "hyperboloid":
        f = lambda x: dist(center, (x, 0.0, math.sqrt(1.0 + x * x))) - R
        x = brentq(f, 0.0, math.exp(R) + 1.0, xtol=1e-15)
        return x, math.sqrt(1.0 + x * x)
    if R >= math.pi:
        raise DomainError("spherical radius must satisfy R < pi")
    f = lambda phi: dist(center, (math.sin(phi), 0.0, math.cos(phi))) - R
    phi = brentq(f, 0.0, math.pi - 1e-12, xtol=1e-15)
    return math.sin(phi), math.cos(phi)


def _boundary(tag: str, x: float, z0: float, phi: float):
    if tag in ("euclidean", "disk"):
        return (x * math.cos(phi), x * math.sin(phi))
    return (x * math.cos(phi), x * math.sin(phi), z0)


# -- verifiers --------------------------------------------------------------

def numeric_circumference(c: Circle, samples: int) -> float:
    """Arc length of the circle boundary by trapezoidal quadrature.

    The boundary is recovered from the distance function alone and the
    integrand is the pointwise metric norm of the parameterization's
    derivative, so the value never touches the closed-form circumference or
    radius-conversion laws.  Circumference is isometry-invariant, hence the
    circle is measured in canonical position.
    """
    if samples < 16:
        raise DomainError("need at least 16 quadrature samples")
    tag = _model_tag(c.geometry)
    x, z0 = _solve_model_radius(tag, c.radius)
    theta = np.linspace(0.0, 2.0 * math.pi, samples + 1)
    if tag in ("euclidean", "disk"):
        base = np.stack([x * np.cos(theta), x * np.sin(theta)], axis=1)
        vel = np.stack([-x * np.sin(theta), x * np.cos(theta)], axis=1)
    else:
        base = np.stack([x * np.cos(theta), x * np.sin(theta), np.full_like(theta, z0)], axis=1)
        vel = np.stack([-x * np.sin(theta), x * np.cos(theta), np.zeros_like(theta)], axis=1)
    if tag == "disk":
        integrand = 2.0 * np.hypot(vel[:, 0], vel[:, 1]) / (1.0 - base[:, 0] ** 2 - base[:, 1] ** 2)
    elif tag == "hyperboloid":
        integrand = np.sqrt(np.maximum(vel[:, 0] ** 2 + vel[:, 1] ** 2 - vel[:, 2] ** 2, 0.0))
    else:
        integrand = np.sqrt((vel * vel).sum(axis=1))
    return float(np.trapezoid(integrand, theta))


@dataclass(frozen=True)
class SampledTrajectory:
    """Uniformly sampled path: step h plus at least three Points."""

    step: float
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.step <= 0.0:
            raise DomainError("sampling step must be positive")
        if len(self.points) < 3:
            raise DomainError("a sampled trajectory needs at least 3 samples")

    @classmethod
    def from_path(cls, path, t0: float, t1: float, n: int) -> "SampledTrajectory":
        h = (t1 - t0) / n
        return cls(step=h, points=tuple(path(t0 + k * h) for k in range(n + 1)))


def fd_linear_speed(traj: SampledTrajectory, index: int) -> float:
    """Metric norm of the finite-difference velocity at one sample.

    Central differences at interior samples (second order); one-sided ones at
    the two boundary samples (first order only).
    """
    pts = traj.points
    if not 0 <= index < len(pts):
        raise DomainError("sample index out of range")
    tag = _model_tag(pts[index].geometry)
    h = traj.step
    a = pts[max(index - 1, 0)].coords
    b = pts[min(index + 1, len(pts) - 1)].coords
    span = (min(index + 1, len(pts) - 1) - max(index - 1, 0)) * h
    v = tuple((bb - aa) / span for aa, bb in zip(a, b))
    return _tangent_norm(tag, pts[index].coords, v)


def fd_angular_velocity(traj: SampledTrajectory, center: Point, index: int) -> float:
    """|alpha'| at one sample, from the unwrapped oriented-angle sequence."""
    pts = traj.points
    if not 0 <= index < len(pts):
        raise DomainError("sample index out of range")
    ref = pts[0]
    raw = [oriented_angle(center, ref, p) for p in pts]
    angles = np.unwrap(np.array(raw))
    h = traj.step
    lo, hi = max(index - 1, 0), min(index + 1, len(pts) - 1)
    return abs(float(angles[hi] - angles[lo]) / ((hi - lo) * h))


def tooth_simulator(n1: int, n2: int, drive_teeth) -> tuple:
    """Push gear 1 by whole teeth; attached gear 2 advances the same teeth.

    Exact integer bookkeeping: both winding maps are the running total of
    pushed teeth, so sigma_1 = sigma_2 identically.
    """
    from .kinematics import WindingMap

    if n1 < 3 or n2 < 3:
        raise DomainError("gears need at least 3 teeth")
    values = [0]
    for k in drive_teeth:
        values.append(values[-1] + int(k))
    return WindingMap(tuple(values), n1), WindingMap(tuple(values), n2)


def tooth_rate_ratio(w1, w2, t: int) -> Fraction | None:
    """Exact ratio omega2/omega1 at step t, or None when both rates vanish."""
    if w1.values[t] == 0 and w2.values[t] == 0:
        return None
    return Fraction(w2.values[t], w2.teeth * t) / Fraction(w1.values[t], w1.teeth * t)


def belt_simulator(c1: Circle, c2: Circle, alpha1: AngleFunction, steps: int,
                   duration: float = 1.0) -> AngleFunction:
    """Propagate a belt by matching boundary arc budgets step by step.

    Per step, the chord length swept by pulley 1's boundary point is measured
    with the primitive distance function, and pulley 2's angle increment is
    root-found so its boundary sweeps a chord of the same length.  No
    transfer law enters; the output angle function is what the no-slip
    premise forces.
    """
    if c1.geometry.kind != c2.geometry.kind:
        raise GeometryMismatch("belt endpoints live on different space forms")
    if steps < 1:
        raise DomainError("need at least one step")
    tag1 = _model_tag(c1.geometry)
    tag2 = _model_tag(c2.geometry)
    dist1, dist2 = _DIST[tag1], _DIST[tag2]
    x1, z1 = _solve_model_radius(tag1, c1.radius)
    x2, z2 = _solve_model_radius(tag2, c2.radius)
    h = duration / steps

    def chord2(dbeta: float) -> float:
        return dist2(_boundary(tag2, x2, z2, 0.0), _boundary(tag2, x2, z2, dbeta))

    beta = [0.0]
    for k in range(steps):
        a0 = alpha1.value(k * h)
        a1 = alpha1.value((k + 1) * h)
        chord = dist1(_boundary(tag1, x1, z1, a0), _boundary(tag1, x1, z1, a1))
        if chord == 0.0:
            beta.append(beta[-1])
            continue
        if chord2(math.pi) < chord:
            raise DomainError("belt feed exceeds half a turn of the second pulley per step")
        db = brentq(lambda y: chord2(y) - chord, 0.0, math.pi, xtol=1e-15)
        beta.append(beta[-1] + math.copysign(db, a1 - a0))
    return AngleFunction.sampled(beta, h)
