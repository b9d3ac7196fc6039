"""Gears (discrete winding-map formalism) and pulleys (continuous rotation).

A gear movement is bookkept as integer tooth counts: the winding map sigma
accumulates tooth advances including full turns, and splits uniquely into a
per-step residue g in {0..n-1} plus a full-turn count f with
sigma = g + n*f.  Pulleys rotate continuously, driven by an angle function
alpha with alpha(0) = 0; their angular velocity is |alpha'| and the linear
speed of a boundary point factors as speed_scale(R) * |alpha'|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InsufficientData, UndefinedAtZero
from .geometry import (
    Circle,
    Geometry,
    Point,
    Rotation,
    boundary_point,
    circumference,
    oriented_angle,
    rotate,
)


@dataclass(frozen=True)
class Gear:
    """A circle divided into `teeth` equal arcs; the arc order orients it."""

    circle: Circle
    teeth: int
    orientation: int = 1

    def __post_init__(self):
        if not isinstance(self.teeth, int) or self.teeth < 3:
            raise DomainError("a gear needs an integer tooth count >= 3")
        if self.orientation not in (1, -1):
            raise DomainError("orientation must be +1 or -1")

    @property
    def pitch(self) -> float:
        """Arc length of one tooth: circumference / teeth."""
        return circumference(self.circle.geometry, self.circle.radius) / self.teeth


@dataclass(frozen=True)
class Pulley:
    """A geometric circle used as a pulley."""

    circle: Circle


@dataclass(frozen=True)
class WindingMap:
    """Cumulative tooth advance sigma(0..s) of a gear with n teeth."""

    values: tuple
    teeth: int

    def __post_init__(self):
        if any(v != int(v) for v in self.values):
            raise DomainError("winding maps are integer-valued")
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals or vals[0] != 0:
            raise DomainError("winding maps start at sigma(0) = 0")
        if self.teeth < 3:
            raise DomainError("tooth context must be >= 3")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class GearMovement:
    """Rotation movement split as residues g(t) in {0..n-1} and turns f(t)."""

    residues: tuple
    turns: tuple
    teeth: int

    def __post_init__(self):
        if len(self.residues) != len(self.turns):
            raise DomainError("residues and turns must have equal length")
        if any(not (0 <= g < self.teeth) for g in self.residues):
            raise DomainError("residues must lie in {0..n-1}")


def winding_to_movement(sigma: WindingMap) -> GearMovement:
    """Unique split sigma(t) = g(t) + n*f(t) by floor division."""
    n = sigma.teeth
    residues = tuple(v % n for v in sigma.values)
    turns = tuple(v // n for v in sigma.values)
    return GearMovement(residues=residues, turns=turns, teeth=n)


def movement_to_winding(m: GearMovement) -> WindingMap:
    """Exact inverse of winding_to_movement."""
    values = tuple(g + m.teeth * f for g, f in zip(m.residues, m.turns))
    return WindingMap(values=values, teeth=m.teeth)


def gear_angular_velocity(sigma: WindingMap, t: int) -> float:
    """Average angular velocity 2*pi*sigma(t) / (n*t) of a discrete movement."""
    if t == 0:
        raise UndefinedAtZero("the average-rate formula divides by t")
    if not 0 < t < len(sigma):
        raise DomainError(f"step index {t} outside the movement 0..{len(sigma) - 1}")
    return 2.0 * math.pi * sigma.values[t] / (sigma.teeth * t)


def winding_at_point(gear: Gear, movement: GearMovement, p: Point) -> WindingMap:
    """Winding map read off from the orbit of one gear point.

    Reconstructs each step's rotation from the movement, tracks the oriented
    angle swept by p about the center, converts it to whole teeth, and adds
    the recorded full turns.  The result is independent of the chosen point.
    """
    center = gear.circle.require_center()
    n = gear.teeth
    values = []
    for g, f in zip(movement.residues, movement.turns):
        rot = Rotation(gear.circle.geometry, center, 2.0 * math.pi * g / n)
        q = rotate(rot, p)
        swept = oriented_angle(center, p, q) if g else 0.0
        k = round(swept * n / (2.0 * math.pi)) % n
        values.append(k + n * f)
    return WindingMap(values=tuple(values), teeth=n)


class AngleFunction:
    """Rotation angle alpha(t) with alpha(0) = 0, in one of three forms.

    Closed-form constant rate, polynomial coefficients, or uniform samples.
    `value` evaluates alpha, `rate` its signed derivative.  Sampled rates use
    central differences at interior samples and one-sided ones at the ends.
    """

    def __init__(self, kind: str, *, rate=None, coeffs=None, samples=None, step=None):
        self.kind = kind
        self._rate = rate
        self._coeffs = tuple(coeffs) if coeffs is not None else None
        self._samples = tuple(float(v) for v in samples) if samples is not None else None
        self._step = step
        if kind == "polynomial":
            if not self._coeffs or self._coeffs[0] != 0.0:
                raise DomainError("polynomial angle functions need a zero constant term")
        if kind == "sampled":
            if self._samples is None or step is None or step <= 0.0:
                raise DomainError("sampled angle functions need samples and a positive step")
            if self._samples[0] != 0.0:
                raise DomainError("angle functions satisfy alpha(0) = 0")

    @classmethod
    def constant_rate(cls, omega: float) -> "AngleFunction":
        return cls("constant", rate=float(omega))

    @classmethod
    def polynomial(cls, coeffs) -> "AngleFunction":
        """Ascending coefficients (c0, c1, ...); c0 must be zero."""
        return cls("polynomial", coeffs=[float(c) for c in coeffs])

    @classmethod
    def sampled(cls, values, step: float) -> "AngleFunction":
        return cls("sampled", samples=values, step=float(step))

    @property
    def duration(self) -> float | None:
        if self.kind == "sampled":
            return (len(self._samples) - 1) * self._step
        return None

    def value(self, t: float) -> float:
        if self.kind == "constant":
            return self._rate * t
        if self.kind == "polynomial":
            acc = 0.0
            for c in reversed(self._coeffs):
                acc = acc * t + c
            return acc
        return self._interp(t)

    def rate(self, t: float) -> float:
        if self.kind == "constant":
            return self._rate
        if self.kind == "polynomial":
            acc = 0.0
            for k in range(len(self._coeffs) - 1, 0, -1):
                acc = acc * t + k * self._coeffs[k]
            return acc
        return self._sampled_rate(t)

    def _interp(self, t: float) -> float:
        v, h = self._samples, self._step
        x = t / h
        i = min(max(int(math.floor(x)), 0), len(v) - 2)
        w = x - i
        return (1.0 - w) * v[i] + w * v[i + 1]

    def _sampled_rate(self, t: float) -> float:
        v, h = self._samples, self._step
        if len(v) < 3:
            raise InsufficientData("sampled derivative needs at least 3 samples")
        i = min(max(int(round(t / h)), 0), len(v) - 1)
        if i == 0:
            return (v[1] - v[0]) / h
        if i == len(v) - 1:
            return (v[-1] - v[-2]) / h
        return (v[i + 1] - v[i - 1]) / (2.0 * h)


def pulley_angular_velocity(alpha: AngleFunction, t: float) -> float:
    """|alpha'(t)|: the angular velocity of a rotation driven by alpha."""
    return abs(alpha.rate(t))


def pulley_angular_velocity_signed(alpha: AngleFunction, t: float) -> float:
    """Signed alpha'(t); direction propagation in drivetrains needs the sign."""
    return alpha.rate(t)


class BoundaryTrajectory:
    """Time-parameterized orbit of a circle boundary point under alpha."""

    def __init__(self, circle: Circle, alpha: AngleFunction):
        circle.require_center()
        self.circle = circle
        self.alpha = alpha

    def __call__(self, t: float) -> Point:
        return boundary_point(self.circle, self.alpha.value(t))


def boundary_trajectory(c: Circle, alpha: AngleFunction) -> BoundaryTrajectory:
    return BoundaryTrajectory(c, alpha)


def speed_scale(g: Geometry, R: float) -> float:
    """Boundary speed per unit angular velocity: R, sinh R or sin R."""
    if g.kind == "euclidean":
        return R
    if g.kind == "hyperbolic":
        return math.sinh(R)
    return math.sin(R)


def linear_speed(c: Circle, alpha: AngleFunction, t: float) -> float:
    """Metric norm of the boundary velocity: speed_scale(R) * |alpha'(t)|."""
    return speed_scale(c.geometry, c.radius) * abs(alpha.rate(t))
