"""Exception hierarchy shared by every module of the package."""


class TropicalError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidValue(TropicalError):
    """A scalar is +inf or NaN; neither belongs to the max-plus semifield."""


class BottomPower(TropicalError):
    """The tropical zero was raised to a nonpositive exponent."""


class BottomEntry(TropicalError):
    """A vector that must be zero-free contains the tropical zero."""


class DimensionMismatch(TropicalError):
    pass


class NonSquare(DimensionMismatch):
    pass


class Reducible(TropicalError):
    """The matrix support digraph is not strongly connected."""


class AlphaOutOfRange(TropicalError):
    pass


class InvalidInstance(TropicalError):
    pass


class MissingCaps(TropicalError):
    pass


class TooLarge(TropicalError):
    """An oracle was asked to do more work than its hard limit allows."""


class EmptyFeasibleGrid(TropicalError):
    pass
