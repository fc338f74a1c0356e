"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class LecycleError(Exception):
    exit_code = 1


class RingMismatchError(LecycleError, ValueError):
    pass


class ParseError(LecycleError, ValueError):
    exit_code = 2

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVariableError(ParseError):
    pass


class ExistenceFailure(LecycleError):
    """Lê/polar numbers do not exist in the current coordinates."""

    exit_code = 3


class GenericityExhausted(ExistenceFailure):
    """No coordinate shear within the retry budget made the numbers exist."""


class HypothesisFailure(LecycleError):
    """A prediction formula was requested outside its hypotheses."""

    exit_code = 3


class NonIsolatedError(LecycleError):
    """An operation needing an isolated critical point got dim Σf >= 1."""

    exit_code = 4


class ImproperIntersection(LecycleError):
    exit_code = 4


class ResourceLimitExceeded(LecycleError):
    exit_code = 5


class InternalInconsistency(LecycleError):
    """Oracle mismatch or a negative Lê number: never silently ignored."""

    exit_code = 6


class MissingBasisError(LecycleError, ValueError):
    pass
