"""Exception hierarchy shared by all curvedrive modules."""


class CurveDriveError(Exception):
    """Base class for every error raised by this package."""


class GeometryMismatch(CurveDriveError):
    """Operands live on different space forms."""


class DomainError(CurveDriveError):
    """Numeric argument outside the valid domain for the geometry."""


class DegenerateAngle(CurveDriveError):
    """Angle requested at a point that coincides with the vertex."""


class AntipodalError(CurveDriveError):
    """Spherical angle undefined because a point is antipodal to the vertex."""


class MissingCenters(CurveDriveError):
    """Operation needs circle centers that were not supplied."""


class NoTangentExists(CurveDriveError):
    """No common tangent geodesic exists for the given circles."""


class UndefinedAtZero(CurveDriveError):
    """Average angular velocity of a discrete movement is undefined at t = 0."""


class InsufficientData(CurveDriveError):
    """Sampled input has too few samples for the requested derivative."""


class MeshInvalid(CurveDriveError):
    """Two gears cannot mesh (unequal pitch or non-gear node on a mesh edge)."""


class InconsistentCycle(CurveDriveError):
    """A drivetrain cycle implies two different speeds for the same node."""


class DisconnectedComponent(CurveDriveError):
    """Nodes unreachable from the driven node."""

    def __init__(self, unreached):
        self.unreached = tuple(sorted(unreached))
        super().__init__(f"nodes unreachable from the drive: {', '.join(self.unreached)}")


class NoPath(CurveDriveError):
    """No coupling path between the requested nodes."""


class InvalidStep(CurveDriveError):
    """Simulation step must be positive."""


class SchemaError(CurveDriveError):
    """Scene document violates the schema."""


class SceneReferenceError(CurveDriveError):
    """Scene refers to a component id that does not exist."""
