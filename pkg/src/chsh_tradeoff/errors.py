"""Exception types raised by the core modules."""


class ChshTradeoffError(Exception):
    """Base class for all package errors."""


class DegenerateInput(ChshTradeoffError):
    """Input carries no usable information (e.g. a zero amplitude vector)."""


class DimensionError(ChshTradeoffError):
    """Shape, length, label or qubit-count mismatch."""


class NumericalError(ChshTradeoffError):
    """A numerical invariant failed (non-Hermitian input, imaginary residue...)."""


class ParamError(ChshTradeoffError):
    """A family parameter lies outside its documented range."""


class StateFormatError(ChshTradeoffError):
    """A state file or payload is malformed; `field` names the offender."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field


class NormalizationError(ChshTradeoffError):
    """A state file is too far from unit norm to be accepted."""
