"""Exception hierarchy.

Every error raised by the library derives from :class:`SmallCoverError`, which
is itself a :class:`ValueError` so callers that only care about "bad input"
can catch that.
"""

from __future__ import annotations


class SmallCoverError(ValueError):
    pass


# linear / polynomial algebra
class NonSquareError(SmallCoverError):
    pass


class ShapeMismatchError(SmallCoverError):
    pass


class RankDeficientError(SmallCoverError):
    pass


class DegreeOverflowError(SmallCoverError):
    pass


class TooManyGeneratorsError(SmallCoverError):
    pass


# polytopes
class TooFewFacetsError(SmallCoverError):
    pass


class IndexOutOfRangeError(SmallCoverError):
    pass


# characteristic functions
class InvalidCharacteristicError(SmallCoverError):
    def __init__(self, message: str, vertices: list | None = None):
        super().__init__(message)
        self.vertices = list(vertices or [])


class NotNormalizedError(SmallCoverError):
    pass


class InvalidProjCharError(InvalidCharacteristicError):
    pass


# bundles
class GeneratorMismatchError(SmallCoverError):
    pass


class RankOneError(SmallCoverError):
    pass


class StageMismatchError(SmallCoverError):
    pass


# fibre sums
class LabelMismatchError(SmallCoverError):
    pass


class DimensionMismatchError(SmallCoverError):
    pass


class NotDisjointError(SmallCoverError):
    pass


class DegenerateDeterminantError(SmallCoverError):
    pass


class NotIrreducibleError(SmallCoverError):
    pass


# classification
class OutOfRangeError(SmallCoverError):
    pass


class EmptyListError(SmallCoverError):
    pass


class ExponentTooSmallError(SmallCoverError):
    pass


class NotOfRequiredFormError(SmallCoverError):
    pass


# documents
class DocumentSyntaxError(SmallCoverError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DocumentValidationError(SmallCoverError):
    pass
