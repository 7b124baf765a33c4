"""Exception hierarchy.

The CLI maps ``InputError`` to exit code 1, ``PreconditionError`` to 2 and
``VerificationError`` to 3.
"""


class RatEllipticError(Exception):
    pass


class InputError(RatEllipticError, ValueError):
    pass


class MalformedPresentation(InputError):
    pass


class PresentationError(MalformedPresentation):
    """A presentation file could not be read; carries the offending position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class PresentationSyntaxError(PresentationError):
    pass


class UnknownGenerator(PresentationError):
    pass


class InhomogeneousRelation(PresentationError):
    pass


class DuplicateGenerator(PresentationError):
    pass


class PreconditionError(RatEllipticError, ValueError):
    pass


class DegreeOverflow(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    pass


class NotSimplyConnected(PreconditionError):
    pass


class OddGenerator(PreconditionError):
    pass


class DualityViolation(PreconditionError):
    pass


class MalformedRing(PreconditionError):
    pass


class NotInCaseB(PreconditionError):
    """A square-zero degree-2 class exists, so no normalization is needed."""


class VerificationError(RatEllipticError, AssertionError):
    pass


class ReductionMismatch(VerificationError):
    pass
