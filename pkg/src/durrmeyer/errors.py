"""Exception types raised by the library."""


class DurrmeyerError(Exception):
    """Base class for all library errors."""


class DomainError(DurrmeyerError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidSpecError(DurrmeyerError, ValueError):
    """An operator specification is inconsistent or below its minimum degree."""


class UnknownPresetError(InvalidSpecError):
    pass


class UnsupportedMomentError(DurrmeyerError, ValueError):
    """No closed form is available for the requested (family, kind, order)."""


class MissingLimitsError(DurrmeyerError, ValueError):
    pass


class DegenerateFitError(DurrmeyerError, ArithmeticError):
    """Too few usable error samples remain to fit a convergence slope."""
