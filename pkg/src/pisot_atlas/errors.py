"""Exception hierarchy.

Domain errors (bad input, violated preconditions) map to CLI exit code 2;
search-guard errors (caps, undecidable boundaries) map to exit code 3.
"""


class PisotAtlasError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 2


class DomainError(PisotAtlasError, ValueError):
    pass


class NotMonic(DomainError):
    pass


class Reducible(DomainError):
    pass


class NotRealField(DomainError):
    pass


class IrreducibilityUnknown(DomainError):
    pass


class NotSquarefree(DomainError):
    pass


class FieldMismatch(DomainError):
    pass


class Unbounded(DomainError):
    pass


class NotSalemTrace(DomainError):
    pass


class NotInEK(DomainError):
    pass


class NotApplicable(DomainError):
    pass


class InsufficientRange(DomainError):
    pass


class ParseError(DomainError):
    pass


class CapExhausted(PisotAtlasError):
    exit_code = 3


class BoundaryUndecided(PisotAtlasError):
    exit_code = 3


class ConsistencyError(PisotAtlasError, AssertionError):
    """An internal cross-check failed; indicates a bug, never bad input."""

    exit_code = 1
