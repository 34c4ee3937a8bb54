"""Exception hierarchy.

Validation errors (bad input, bad configuration) derive from
:class:`ValidationError`; failures of a numerical procedure on otherwise
valid input derive from :class:`NumericalFailure`. The CLI maps the two
families to distinct exit codes.
"""


class MulticentricError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MulticentricError, ValueError):
    pass


class NumericalFailure(MulticentricError, ArithmeticError):
    pass


class EmptyRoots(ValidationError):
    pass


class DuplicateRoots(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class PointNotOnGrid(ValidationError, KeyError):
    def __str__(self):
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class ConfigError(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class ConjugateNotSupported(ValidationError):
    """A conjugate monomial reached a code path that only evaluates
    holomorphic polynomials of matrices."""


class RootFindingFailed(NumericalFailure):
    pass


class NotInvertible(NumericalFailure):
    pass


class Defective(NumericalFailure):
    """The matrix is not (numerically) diagonalizable."""


class NotCommuting(NumericalFailure):
    pass


class RandomCombinationFailed(NumericalFailure):
    pass


class ConstructionFailed(NumericalFailure):
    pass
