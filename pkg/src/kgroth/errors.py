"""Exception hierarchy shared by every kgroth module."""


class KGrothError(Exception):
    """Base class for all library errors."""


class MalformedInputError(KGrothError, ValueError):
    pass


class PoleAtSubstitutionError(KGrothError, ZeroDivisionError):
    pass


class SizeLimitError(KGrothError):
    pass


class StabilizationMismatchError(KGrothError):
    pass


class ConsistencyError(KGrothError):
    """An internal invariant failed (e.g. a residue left a variable behind)."""


class NonTerminationError(KGrothError):
    def __init__(self, message, sequence=None):
        super().__init__(message)
        self.sequence = sequence


class LinearSolveError(KGrothError):
    pass


class InconsistentSystemError(LinearSolveError):
    pass


class UnderdeterminedSystemError(LinearSolveError):
    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class BoxTooSmallError(KGrothError):
    pass


class IndependenceError(KGrothError):
    pass


class IntegralityError(KGrothError):
    pass


class LeadingTermViolationError(KGrothError):
    pass
