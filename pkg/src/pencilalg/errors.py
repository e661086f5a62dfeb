"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for all errors raised by pencilalg."""


class NonSquare(AlgebraError, ValueError):
    pass


class SingularMatrix(AlgebraError, ValueError):
    pass


class ZeroPolynomial(AlgebraError, ValueError):
    pass


class ZeroForm(AlgebraError, ValueError):
    pass


class DimensionMismatch(AlgebraError, ValueError):
    pass


class NotBracketClosed(AlgebraError, ValueError):
    pass


class UnknownName(AlgebraError, KeyError):
    pass


class DegeneratePencil(AlgebraError):
    """The characteristic form vanishes identically at the functional(s) tried."""


class BadShift(AlgebraError, ValueError):
    pass


class InvalidAlpha(AlgebraError, ValueError):
    pass


class SingularPairing(AlgebraError):
    pass


class MissingBlock(AlgebraError):
    pass


class WrongDimension(AlgebraError, ValueError):
    pass


class NotAssociative(AlgebraError):
    def __init__(self, message, failing=()):
        super().__init__(message)
        self.failing = tuple(failing)


class NoUnity(AlgebraError):
    pass


class NotIndexOne(AlgebraError):
    pass


class Unsupported(AlgebraError):
    pass


class ClassificationError(AlgebraError):
    """Canonicalization could not find an adapted basis within its retry budget."""


class ParseError(AlgebraError, ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.message = message
        self.line = line
        self.field = field
