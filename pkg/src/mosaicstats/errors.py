"""Exception hierarchy shared by every module of the toolkit."""


class MosaicError(Exception):
    """Base class for all errors raised by mosaicstats."""


class DomainError(MosaicError, ValueError):
    """A point or rectangle falls outside the domain it must live in."""


class InsufficientPointsError(MosaicError, ValueError):
    """An operation received fewer points than it needs."""


class DuplicatePointError(MosaicError, ValueError):
    """Two points share bitwise-identical coordinates."""


class DegenerateDistributionError(MosaicError, ValueError):
    """Nearest-neighbor distances have zero spread, so RI is undefined."""


class IncompatibleCurvesError(MosaicError, ValueError):
    """Two curves were sampled on different radius grids or parameters."""


class GenerationError(MosaicError, RuntimeError):
    """A sampler saturated far below its requested point count."""


class ParseError(MosaicError, ValueError):
    """A point-set file could not be parsed.

    ``lineno`` is 1-based, or ``None`` when the failure is not tied to a line.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
