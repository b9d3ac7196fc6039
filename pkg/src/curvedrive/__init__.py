"""Gear and pulley drivetrains on the three unit-curvature space forms."""

from .geometry import (
    DISK,
    EUCLIDEAN,
    HYPERBOLOID,
    SPHERICAL,
    Circle,
    GeodesicTangent,
    Geometry,
    Point,
    Rotation,
    boundary_point,
    circumference,
    disk_to_hyperboloid,
    distance,
    hyperboloid_to_disk,
    intrinsic_to_model_radius,
    model_to_intrinsic_radius,
    oriented_angle,
    rotate,
    signed_geodesic_distance,
    tangent_geodesics,
)
from .kinematics import (
    AngleFunction,
    Gear,
    GearMovement,
    Pulley,
    WindingMap,
    boundary_trajectory,
    gear_angular_velocity,
    linear_speed,
    movement_to_winding,
    pulley_angular_velocity,
    pulley_angular_velocity_signed,
    speed_scale,
    winding_at_point,
    winding_to_movement,
)
from .drivetrain import (
    Belt,
    DriveSpec,
    DrivetrainGraph,
    Edge,
    Mesh,
    Solution,
    gear_ratio,
    propagate,
    simulate,
    validate_mesh,
)
from .oracle import (
    SampledTrajectory,
    belt_simulator,
    fd_angular_velocity,
    fd_linear_speed,
    numeric_circumference,
    tooth_simulator,
)
from .scene import SceneDocument, parse_scene, scene_to_graph, serialize_scene
from .render import render_scene

__version__ = "0.1.0"

__all__ = [
    "DISK",
    "EUCLIDEAN",
    "HYPERBOLOID",
    "SPHERICAL",
    "AngleFunction",
    "Belt",
    "Circle",
    "DriveSpec",
    "DrivetrainGraph",
    "Edge",
    "Gear",
    "GearMovement",
    "GeodesicTangent",
    "Geometry",
    "Mesh",
    "Point",
    "Pulley",
    "Rotation",
    "SampledTrajectory",
    "SceneDocument",
    "Solution",
    "WindingMap",
    "belt_simulator",
    "boundary_point",
    "boundary_trajectory",
    "circumference",
    "disk_to_hyperboloid",
    "distance",
    "fd_angular_velocity",
    "fd_linear_speed",
    "gear_angular_velocity",
    "gear_ratio",
    "hyperboloid_to_disk",
    "intrinsic_to_model_radius",
    "linear_speed",
    "model_to_intrinsic_radius",
    "movement_to_winding",
    "numeric_circumference",
    "oriented_angle",
    "parse_scene",
    "propagate",
    "pulley_angular_velocity",
    "pulley_angular_velocity_signed",
    "render_scene",
    "rotate",
    "scene_to_graph",
    "serialize_scene",
    "signed_geodesic_distance",
    "simulate",
    "speed_scale",
    "tangent_geodesics",
    "tooth_simulator",
    "validate_mesh",
    "winding_at_point",
    "winding_to_movement",
]
