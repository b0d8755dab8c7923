"""Exception types raised by the library.

Every error derives from :class:`HardyError`, which is itself a
``ValueError`` so callers that only care about bad input can catch that.
"""


class HardyError(ValueError):
    pass


class BandTooWide(HardyError):
    """Grid too coarse to resolve the requested coefficient band."""


class TableTooShort(HardyError):
    pass


class DimensionTooSmall(HardyError):
    pass


class ProbeTooDeep(HardyError):
    """A shifted probe ``f * z**n`` does not fit inside the truncation."""


class AllPointsMasked(HardyError):
    pass


class NoComparablePoints(HardyError):
    pass


class NoStabilization(HardyError):
    pass


class OuterProbeRequired(HardyError):
    """Probe vanishes on too large a fraction of the grid."""


class DomainRefused(HardyError):
    pass


class GrowthViolation(HardyError):
    pass


class DenominatorVanishes(HardyError):
    pass


class DiskViolation(HardyError):
    pass


class ConfigError(HardyError):
    """Bad run configuration; ``lineno`` points into the config file."""

    def __init__(self, message, lineno=None, path=None):
        self.lineno = lineno
        self.path = path
        where = ""
        if path is not None:
            where = f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)
