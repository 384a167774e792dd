"""Exception types shared across the toolkit.

Every domain or numerical failure raised by this package derives from
:class:`IsoSectorError`, so callers can catch one base class at API
boundaries (the command line driver maps them to exit code 1).
"""

from __future__ import annotations


class IsoSectorError(Exception):
    """Base class for all toolkit errors."""


class OutOfDomain(IsoSectorError):
    """A parameter lies outside the mathematical domain of the operation."""


class NonPositiveInput(IsoSectorError):
    """A quantity that must be strictly positive was zero or negative."""


class ZeroExponent(IsoSectorError):
    """A rescaling exponent that must be nonzero was zero."""


class DegenerateGrid(IsoSectorError):
    """An angular or radial grid is too short, unsorted, or inconsistent."""


class NonFiniteSample(IsoSectorError):
    """A sampled curve or integrand produced NaN or infinity."""


class QuadratureFailure(IsoSectorError):
    """A quadrature routine returned a non-finite or unreliable value."""


class BracketFailure(IsoSectorError):
    """A root finder could not certify its bracket or tolerance."""


class MonotonicityViolation(IsoSectorError):
    """A curve that must be monotone in its parameter was not."""


class NonPositiveFunction(IsoSectorError):
    """A trial function that must be bounded away from zero was not."""


class ParamOutOfRange(IsoSectorError):
    """A geometric parameter left its admissible interval."""


class NoTransition(IsoSectorError):
    """A requested transition threshold does not exist for these inputs."""


class OriginInside(IsoSectorError):
    """A ball that must avoid the origin contains it."""


class VolumeUnattainable(IsoSectorError):
    """No admissible center position attains the requested volume."""


class NonFiniteProfile(IsoSectorError):
    """A density profile evaluated to NaN or infinity."""


class GridTooCoarse(IsoSectorError):
    """A spherical grid has too few nodes for a trustworthy check."""


class CollapseDetected(IsoSectorError):
    """A descent iterate degenerated (vanishing area or radius)."""


class AllStartsFailed(IsoSectorError):
    """Every multistart descent run failed to converge."""
