"""Exception hierarchy shared by every module."""

from __future__ import annotations


class TropskelError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TropskelError, ValueError):
    """Malformed input: bad literals, unknown ids, wrong shapes."""


class PrecisionLoss(TropskelError):
    """A valuation cannot be determined from the available precision."""


class DuplicatePoint(TropskelError):
    """Two points that must be distinct are exactly equal."""


class TooFewPunctures(TropskelError):
    pass


class PositionOutOfRange(TropskelError):
    pass


class DegreeNonZero(TropskelError):
    pass


class NonPrincipalOnTate(TropskelError):
    """The divisor class on the circle is nontrivial, so no integral potential exists."""


class DisconnectedComplex(TropskelError):
    pass


class DegenerateCell(TropskelError):
    pass


class NoCycle(TropskelError):
    pass


class MultipleCycles(TropskelError):
    pass


class CycleNotInHyperplane(TropskelError):
    pass


class NonIntegralMultiplicity(TropskelError):
    pass


class NotClosed(TropskelError):
    pass


class UnsupportedDimension(TropskelError):
    pass


class UnknownScenario(TropskelError, KeyError):
    pass
