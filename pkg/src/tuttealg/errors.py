class MatroidError(ValueError):
    """Invalid input: a family that is not a matroid, a bad subset, a loop where none is allowed."""


class GuardExceeded(MatroidError):
    """An exhaustive enumeration would exceed its configured size guard."""


class CrossCheckError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    Raised only when something is wrong with the library itself, never for bad input.
    """
