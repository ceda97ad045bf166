"""Exception hierarchy."""


class MeasureError(Exception):
    """Base class for every error raised by the package."""


class ChainError(MeasureError, ValueError):
    """Invalid Markov chain data."""


class DimensionMismatch(ChainError):
    pass


class RowSumError(ChainError):
    pass


class DegenerateEntry(ChainError):
    pass


class NegativeEntry(ChainError):
    pass


class ZeroInitial(ChainError):
    pass


class NotIrreducible(MeasureError):
    pass


class NoConvergence(MeasureError, RuntimeError):
    pass


class DomainError(MeasureError, ValueError):
    pass


class DepthCap(MeasureError):
    """A pruned enumeration would visit more cylinders than allowed."""


class NotStationaryStart(MeasureError):
    pass


class ConfigError(MeasureError, ValueError):
    pass
