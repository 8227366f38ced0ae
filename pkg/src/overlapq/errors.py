"""Exception hierarchy shared by every module."""


class OverlapError(Exception):
    """Base class for all errors raised by overlapq."""


class InvalidParameterError(OverlapError, ValueError):
    """A parameter is outside its admissible range."""


class FitError(OverlapError, ValueError):
    """A density model cannot be fitted to the supplied samples."""


class InsufficientDataError(OverlapError, ValueError):
    """Too few observations for the requested estimator."""


class DegenerateSupportError(OverlapError, ArithmeticError):
    """A density ratio has a zero denominator."""


class NumericalIntegrityError(OverlapError, ArithmeticError):
    """A computed probability left [0, 1] by more than round-off."""
