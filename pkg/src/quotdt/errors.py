"""Exception hierarchy shared by every module."""


class QuotDTError(Exception):
    """Base class for all errors raised by quotdt."""


class NonUnitError(QuotDTError, ValueError):
    """A series operation needed an invertible (or unit) constant term."""


class CapExceeded(QuotDTError, ValueError):
    """An enumeration was asked for more than its configured cap."""


class InvalidPartition(QuotDTError, ValueError):
    """A box configuration is not downward closed."""


class MalformedCharacter(QuotDTError, ValueError):
    """A character does not have the shape an operation requires."""


class ConstantTerm(QuotDTError, ValueError):
    """A measure was applied to a character with a fixed (weight zero) part."""


class HalfExponent(QuotDTError, ValueError):
    """A weight with half-integer exponents reached a measure that cannot handle it."""


class NonGenericPoint(QuotDTError, ArithmeticError):
    """An evaluation point makes some denominator vanish."""

    def __init__(self, message, partition=None):
        super().__init__(message)
        self.partition = partition


class ZeroWeightValue(NonGenericPoint):
    """A weight evaluates to the zero linear form at a cohomological point."""


class NonConvergentFamily(QuotDTError, ValueError):
    """An Adams family contributes below its own level."""


class ResamplingExhausted(QuotDTError, RuntimeError):
    """No generic point was found within the retry budget."""


class MalformedInput(QuotDTError, ValueError):
    """A JSON input file does not follow the documented format."""
