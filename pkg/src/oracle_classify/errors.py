"""Shared exception types."""


class GeometryError(Exception):
    """Base class for geometric precondition violations."""


class EmptyHullError(GeometryError):
    """Raised when a support or tangent query is made against an empty hull."""


class PointInsideHullError(GeometryError):
    """Raised when a visibility interval is requested for a point that is
    inside or on the current inner hull."""


class BadBodyError(GeometryError):
    """Raised when a body description is degenerate (for example an ellipse
    matrix that is not positive definite)."""


class TooLargeForExactError(GeometryError):
    """Raised when the exact 3d centerpoint is asked for more points than the
    brute-force construction supports."""


class CenterpointError(GeometryError):
    """Raised when a centerpoint construction cannot certify its depth
    guarantee (degenerate input outside the supported range)."""


class EmptyArcSetError(GeometryError):
    """Raised on a maximum-depth query against a structure with no arcs."""


class ArcGrewError(GeometryError):
    """Raised by the depth structure when a replacement arc is not contained
    in the arc it replaces.  Visibility intervals only ever shrink."""


class InconsistentOracleError(Exception):
    """Raised when oracle answers contradict each other, e.g. a separating
    halfplane that cuts off a previously confirmed inside point."""


class AlgorithmStalledError(Exception):
    """Raised when a classification loop exceeds its round budget without
    classifying every point.  Indicates a bug or a broken oracle."""


class BadSubgradientError(Exception):
    """Raised when a level-set oracle receives a zero subgradient at a point
    strictly above the level."""
