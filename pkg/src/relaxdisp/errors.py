"""Exception hierarchy shared by every module of the package."""


class DispersionError(ValueError):
    """Base class for domain errors (CLI exit code 3)."""


class InvalidParams(DispersionError):
    pass


class DegenerateDenominator(DispersionError):
    pass


class NonFinite(DispersionError):
    pass


class ZeroPolynomial(DispersionError):
    pass


class NegativeWavenumber(DispersionError):
    pass


class NegativeEigenvalue(DispersionError):
    pass


class ModelMismatch(DispersionError):
    pass


class IndexOutOfRange(DispersionError, IndexError):
    pass


class InsufficientRange(DispersionError):
    pass


class ConfigError(ValueError):
    """Base class for configuration problems (CLI exit code 2)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(ConfigError):
    pass


class UnknownKey(ConfigError):
    pass


class MissingKey(ConfigError):
    pass


class UnitError(ConfigError):
    pass


class RangeError(ConfigError):
    pass


class InvalidGrid(DispersionError):
    pass
