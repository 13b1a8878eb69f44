"""Exception hierarchy.

Everything raised for bad input derives from :class:`PossibilityError`, which
is also a ``ValueError`` so callers that only care about "bad value" can catch
that instead.
"""


class PossibilityError(ValueError):
    """Base class for input validation failures."""


class WrongArity(PossibilityError):
    pass


class OutOfRange(PossibilityError):
    pass


class AllZero(PossibilityError):
    """Every possibility value is zero: nothing is possible."""


class EmptyEvent(PossibilityError):
    pass


class InvalidCategory(PossibilityError):
    pass


class EmptySample(PossibilityError):
    pass


class InvalidEpsilon(PossibilityError):
    pass


class UniverseMismatch(PossibilityError):
    pass


class MissingClimatology(PossibilityError):
    pass


class BadThreshold(PossibilityError):
    pass


class InvalidConfig(PossibilityError):
    pass


class UnpairedSamples(PossibilityError):
    pass


class ArchiveError(PossibilityError):
    """A forecast archive could not be loaded; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ParseError(ArchiveError):
    pass


class RecordError(ArchiveError):
    """A record parsed but failed validation."""
