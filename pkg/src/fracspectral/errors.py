"""
Exception hierarchy for fracspectral
"""


class FracSpectralError(Exception):
    """Root of every error raised by the solver."""


class DomainError(FracSpectralError, ValueError):
    pass


class InvalidParameterError(FracSpectralError, ValueError):
    pass


class ConfigError(FracSpectralError, ValueError):
    pass


class SeriesDivergenceError(FracSpectralError, ArithmeticError):
    """A series or an iterative search hit its hard iteration cap."""


class PrecisionLossError(FracSpectralError, ArithmeticError):
    """Cancellation in a double-precision series exceeded the budget."""


class GammaOverflowError(FracSpectralError, OverflowError):
    pass


class ResolutionError(FracSpectralError):
    """The discretization cannot resolve what was asked of it."""


class PositivityError(FracSpectralError):
    pass
