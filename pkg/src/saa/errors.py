"""Exception hierarchy shared by every module of the package."""


class SAAError(Exception):
    """Base class for all errors raised by :mod:`saa`."""


class FieldError(SAAError):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class NoDefaultModulus(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class InfiniteField(FieldError):
    pass


class InvalidParams(SAAError):
    pass


class LengthMismatch(SAAError):
    pass


class InconsistentPairing(SAAError):
    pass


class Dependent(SAAError):
    pass


class NotSymplectic(SAAError):
    pass


class AxiomViolation(SAAError):
    pass


class NotNilpotentForm(SAAError):
    pass


class DimensionTooSmall(SAAError):
    pass


class NotNilpotent(SAAError):
    pass


class WrongDimension(SAAError):
    pass


class CaseMismatch(SAAError):
    pass


class IsotropicCentre(SAAError):
    pass


class TagMismatch(SAAError):
    pass


class NormalizationError(SAAError):
    """A normalization step failed to establish its postcondition (internal bug)."""


class ParseError(SAAError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
