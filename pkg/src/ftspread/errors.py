"""Exception types shared across the package."""


class FTSpreadError(Exception):
    """Base class for all errors raised by ftspread."""


class DimensionError(FTSpreadError, ValueError):
    """Operands act on registers of different sizes."""


class PauliParseError(FTSpreadError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CodeValidationError(FTSpreadError, ValueError):
    pass


class SizeError(FTSpreadError, ValueError):
    """Family or lattice size outside the supported domain."""


class UnsupportedError(FTSpreadError):
    pass


class ConfigurationError(FTSpreadError, ValueError):
    pass


class NotALogicalError(FTSpreadError, ValueError):
    """Operator fails to commute with the stabilisers, or is itself a stabiliser."""


class CapacityError(FTSpreadError):
    """Problem too large for the requested exact method."""


class InsufficientEvidenceError(FTSpreadError, ValueError):
    pass


class NoReportError(FTSpreadError):
    pass


class CertificationError(FTSpreadError):
    """A witness set failed independent re-verification."""


class BackendError(FTSpreadError):
    pass


class DerivationError(FTSpreadError):
    pass


class UndefinedSpreadError(FTSpreadError, ValueError):
    pass
