"""Exception types raised across the package."""


class LinPermError(Exception):
    """Base class for domain errors."""


class LevelMismatchError(LinPermError, ValueError):
    """Operands live in different fields of the tower (or different towers)."""


class NotInSubfieldError(LinPermError, ValueError):
    pass


class SearchExhaustedError(LinPermError, RuntimeError):
    """A randomized search hit its attempt bound without success."""


class NotNormalError(LinPermError, ValueError):
    pass


class NotUnitError(LinPermError, ValueError):
    pass


class SingularMatrixError(LinPermError, ValueError):
    pass


class BruteForceBoundError(LinPermError, RuntimeError):
    """Exhaustive evaluation would exceed the configured element bound."""


class HypothesisError(LinPermError, ValueError):
    """A criterion was applied outside the parameters it is valid for."""
