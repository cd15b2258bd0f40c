"""Exception hierarchy shared by every module of the package."""


class PadicError(ValueError):
    """Base class for all errors raised by vdput."""


class InvalidPrime(PadicError):
    pass


class InvalidPrecision(PadicError):
    pass


class PrecisionExceeded(PadicError):
    pass


class DomainMismatch(PadicError):
    pass


class TableTooLarge(PadicError):
    pass


class NotCompatible(PadicError):
    """A function that must be 1-Lipschitz is not.

    ``witness`` holds the least van der Put index whose coefficient is not
    divisible by the required power of p, when known.
    """

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


class InvalidThreshold(PadicError):
    pass


class WrongPrime(PadicError):
    pass


class InvalidExponent(PadicError):
    pass


class NotAUnit(PadicError):
    pass


class InvalidSubstitution(PadicError):
    pass


class FormatError(PadicError):
    """Malformed function file. ``line`` is 1-based, or None for end of input."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
