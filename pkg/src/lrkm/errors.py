"""Exception hierarchy shared by the lrkm modules."""


class LRKMError(Exception):
    """Base class for all errors raised by lrkm."""


class DomainError(LRKMError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericalRankError(LRKMError, ArithmeticError):
    """Gram-Schmidt met a pivot too small for working precision."""


class CompletenessError(NumericalRankError):
    """The collocation functionals are (numerically) linearly dependent."""


class DivergenceError(LRKMError, ArithmeticError):
    """The fixed-point iteration left the admissible range."""


class NoRootError(LRKMError, ValueError):
    """The transcendental equation for the Bratu parameter has no real root."""
