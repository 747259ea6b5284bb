"""Classify points against an unknown convex body through a separation oracle.

The package provides exact rational geometry primitives, Tukey-depth
centerpoints, membership oracles over standard body families, greedy and
query-optimal planar classifiers, a 3d classifier, emptiness testers,
convex minimization over a point set, result certification, and a
benchmark harness with a command line front end.
"""

__version__ = "0.1.0"

from .errors import (
    AlgorithmStalledError,
    ArcGrewError,
    BadBodyError,
    BadSubgradientError,
    CenterpointError,
    EmptyArcSetError,
    EmptyHullError,
    GeometryError,
    InconsistentOracleError,
    PointInsideHullError,
    TooLargeForExactError,
)

__all__ = [
    "AlgorithmStalledError",
    "ArcGrewError",
    "BadBodyError",
    "BadSubgradientError",
    "CenterpointError",
    "EmptyArcSetError",
    "EmptyHullError",
    "GeometryError",
    "InconsistentOracleError",
    "PointInsideHullError",
    "TooLargeForExactError",
]
