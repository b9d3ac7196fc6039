"""Drivetrain graphs: gears and pulleys coupled by meshes and belts.

Angular velocity propagates from one driven node through the coupling laws:
a mesh forces omega_b = -(n_a/n_b) * omega_a, a belt forces
omega_b = sign * speed_scale(R_a)/speed_scale(R_b) * omega_a with sign +1
for open belts and -1 for crossed ones.  Meshed gears counter-rotate and
open belts co-rotate; these sign conventions are a modeling layer on top of
the magnitude laws.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DisconnectedComponent,
    DomainError,
    GeometryMismatch,
    InconsistentCycle,
    InvalidStep,
    MeshInvalid,
    NoPath,
)
from .geometry import Circle, Geometry, distance
from .kinematics import AngleFunction, Gear, speed_scale

PITCH_RTOL = 1e-9        # relative pitch-equality tolerance for meshes
PLACEMENT_TOL = 1e-9     # |d(c1,c2) - (R1+R2)| tolerance when centers given
CYCLE_RTOL = 1e-9        # relative tolerance on a cycle's ratio product


def _circle(node) -> Circle:
    return node.circle


def _node_scale(node) -> float:
    c = _circle(node)
    return speed_scale(c.geometry, c.radius)


@dataclass(frozen=True)
class Mesh:
    pass


@dataclass(frozen=True)
class Belt:
    crossed: bool = False


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    coupling: Mesh | Belt


class DrivetrainGraph:
    """Immutable-by-convention graph of components and couplings."""

    def __init__(self, geometry: Geometry, nodes: dict, edges):
        self.geometry = geometry
        self.nodes = dict(nodes)
        self.edges = tuple(edges)
        for name, node in self.nodes.items():
            if _circle(node).geometry.kind != geometry.kind:
                raise GeometryMismatch(f"node {name!r} is not on the graph's space form")
        for e in self.edges:
            if e.a not in self.nodes or e.b not in self.nodes:
                raise DomainError(f"edge {e.a!r}-{e.b!r} references a missing node")
            if e.a == e.b:
                raise DomainError(f"self-loop on node {e.a!r}")

    def neighbors(self, name: str):
        for e in self.edges:
            if e.a == name:
                yield e.b, e
            elif e.b == name:
                yield e.a, e


@dataclass(frozen=True)
class DriveSpec:
    """Driven node plus its angular velocity: a constant or an angle function."""

    node: str
    omega: float | AngleFunction

    def rate(self, t: float) -> float:
        if isinstance(self.omega, AngleFunction):
            return self.omega.rate(t)
        return self.omega

    @property
    def is_constant(self) -> bool:
        return not isinstance(self.omega, AngleFunction)


@dataclass(frozen=True)
class MeshReport:
    pitch_a: float
    pitch_b: float
    pitch_residual: float
    pitch_ok: bool
    placement_residual: float | None
    placement_ok: bool | None

    @property
    def meshable(self) -> bool:
        return self.pitch_ok and self.placement_ok is not False


def validate_mesh(g1: Gear, g2: Gear) -> MeshReport:
    """Check tooth-pitch equality and, when centers are given, tangency."""
    if g1.circle.geometry.kind != g2.circle.geometry.kind:
        raise GeometryMismatch("meshed gears must share a space form")
    p1, p2 = g1.pitch, g2.pitch
    pitch_residual = abs(p1 - p2)
    pitch_ok = pitch_residual <= PITCH_RTOL * p1
    placement_residual = None
    placement_ok = None
    if g1.circle.center is not None and g2.circle.center is not None:
        d = distance(g1.circle.center, g2.circle.center)
        placement_residual = abs(d - (g1.circle.radius + g2.circle.radius))
        placement_ok = placement_residual <= PLACEMENT_TOL
    return MeshReport(p1, p2, pitch_residual, pitch_ok, placement_residual, placement_ok)


@dataclass
class CycleResidual:
    edge: Edge
    residual: float


@dataclass
class Solution:
    """Per-node angular velocity as a ratio against the drive."""

    drive: DriveSpec
    ratios: dict
    cycle_residuals: tuple = field(default_factory=tuple)

    def omega(self, node: str, t: float = 0.0) -> float:
        return self.ratios[node] * self.drive.rate(t)

    @property
    def is_constant(self) -> bool:
        return self.drive.is_constant


def _edge_factor(graph: DrivetrainGraph, edge: Edge, src: str) -> float:
    """Ratio omega_dst / omega_src across one edge, oriented from src."""
    dst = edge.b if edge.a == src else edge.a
    na, nb = graph.nodes[src], graph.nodes[dst]
    if isinstance(edge.coupling, Mesh):
        if not isinstance(na, Gear) or not isinstance(nb, Gear):
            raise MeshInvalid(f"mesh edge {edge.a!r}-{edge.b!r} needs gears on both ends")
        report = validate_mesh(na, nb)
        if not report.pitch_ok:
            raise MeshInvalid(
                f"mesh edge {edge.a!r}-{edge.b!r} has unequal pitch "
                f"({report.pitch_a:.12g} vs {report.pitch_b:.12g})"
            )
        return -na.teeth / nb.teeth
    sign = -1.0 if edge.coupling.crossed else 1.0
    return sign * _node_scale(na) / _node_scale(nb)


def propagate(graph: DrivetrainGraph, drive: DriveSpec) -> Solution:
    """Angular velocity of every node, by breadth-first ratio propagation.

    Revisiting a node through a cycle must reproduce its ratio to within
    CYCLE_RTOL, otherwise the graph is kinematically inconsistent.
    """
    if drive.node not in graph.nodes:
        raise DomainError(f"driven node {drive.node!r} is not in the graph")
    ratios = {drive.node: 1.0}
    residuals = []
    queue = deque([drive.node])
    while queue:
        current = queue.popleft()
        for neighbor, edge in graph.neighbors(current):
            r = ratios[current] * _edge_factor(graph, edge, current)
            if neighbor in ratios:
                residual = abs(r - ratios[neighbor])
                residuals.append(CycleResidual(edge=edge, residual=residual))
                if residual > CYCLE_RTOL * abs(ratios[neighbor]):
                    raise InconsistentCycle(
                        f"cycle through edge {edge.a!r}-{edge.b!r} implies ratio "
                        f"{r:.12g} but {ratios[neighbor]:.12g} was already set"
                    )
            else:
                ratios[neighbor] = r
                queue.append(neighbor)
    unreached = set(graph.nodes) - set(ratios)
    if unreached:
        raise DisconnectedComponent(unreached)
    return Solution(drive=drive, ratios=ratios, cycle_residuals=tuple(residuals))


def gear_ratio(graph: DrivetrainGraph, src: str, dst: str) -> float:
    """Ratio omega_dst / omega_src along couplings; path independent when
    the graph is consistent."""
    if src not in graph.nodes or dst not in graph.nodes:
        raise DomainError("unknown node id")
    ratios = {src: 1.0}
    queue = deque([src])
    while queue:
        current = queue.popleft()
        if current == dst:
            return ratios[current]
        for neighbor, edge in graph.neighbors(current):
            if neighbor not in ratios:
                ratios[neighbor] = ratios[current] * _edge_factor(graph, edge, current)
                queue.append(neighbor)
    if dst in ratios:
        return ratios[dst]
    raise NoPath(f"no coupling path from {src!r} to {dst!r}")


@dataclass
class SimulationResult:
    """Angle time series theta_i(t_k) for every node, theta_i(0) = 0."""

    times: np.ndarray
    angles: dict


def simulate(graph: DrivetrainGraph, drive: DriveSpec, duration: float,
             step: float) -> SimulationResult:
    """Integrate the solution's angular velocities over [0, duration].

    Constant drives integrate exactly as omega * t; time-varying drives use
    the fixed-step trapezoidal rule on the drive rate.
    """
    if step <= 0.0 or not math.isfinite(step):
        raise InvalidStep("step must be positive")
    if duration < 0.0:
        raise DomainError("duration must be nonnegative")
    solution = propagate(graph, drive)
    count = int(math.floor(duration / step + 1e-9)) + 1
    times = np.array([k * step for k in range(count)])
    if drive.is_constant:
        base = drive.omega * times
    else:
        rates = np.array([drive.rate(float(t)) for t in times])
        base = np.zeros(count)
        base[1:] = np.cumsum(0.5 * step * (rates[1:] + rates[:-1]))
    angles = {name: solution.ratios[name] * base for name in sorted(graph.nodes)}
    return SimulationResult(times=times, angles=angles)
