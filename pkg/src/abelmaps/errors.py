"""Exception types raised by abelmaps.

Every input-validation failure derives from :class:`AbelDataError` so the
CLI can map it to exit code 2 with a single ``except`` clause.
"""


class AbelDataError(ValueError):
    """Base class for malformed graphs, multidegrees and polarizations."""


class AsymmetricMatrix(AbelDataError):
    pass


class BadDiagonal(AbelDataError):
    pass


class NegativeMultiplicity(AbelDataError):
    pass


class Disconnected(AbelDataError):
    pass


class GraphTooSmall(AbelDataError):
    pass


class GraphTooLarge(AbelDataError):
    pass


class BadIndex(AbelDataError, IndexError):
    pass


class EmptyOrFullSubset(AbelDataError):
    pass


class DegreeMismatch(AbelDataError):
    pass


class NonzeroDegree(AbelDataError):
    pass


class BadRational(AbelDataError):
    pass


class BadSequence(AbelDataError):
    pass


class NonTermination(RuntimeError):
    """The twisting fixpoint exceeded its step cap (an implementation bug)."""


class Unsolvable(RuntimeError):
    """A blowup search was requested for data with unsolvable singular locus."""
