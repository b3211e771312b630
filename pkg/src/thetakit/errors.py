"""Exception types shared across the package.

Numerical trouble is reported through typed exceptions rather than NaNs so
that verification suites can distinguish "identity fails" from "evaluation
never happened".
"""


class ThetaKitError(Exception):
    """Base class for all package errors."""


class NonConvergenceError(ThetaKitError):
    """A series hit its term cap before the negligibility floor.

    Carries the partial sum(s) accumulated so far in ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PoleProximityError(ThetaKitError):
    """Evaluation point is too close to a pole or a lattice point."""


class CriticalPointError(ThetaKitError):
    """A derivative in a denominator is numerically zero."""


class BranchJumpError(ThetaKitError):
    """A branch-continued quantity jumped between sheets along a path."""


class CuspProximityError(ThetaKitError):
    """A target value is too close to a cusp value of the map being inverted."""


class NewtonError(ThetaKitError):
    """A Newton iteration failed to converge within its iteration cap."""


class ResonanceError(ThetaKitError):
    """A series recursion hit a resonant index it cannot solve through."""


class CatalogError(ThetaKitError):
    """The curve catalog file is missing, unreadable, or fails its checksum."""
