"""Shared exception types."""


class ArithmeticInconsistencyError(RuntimeError):
    """An exact computation produced a structurally impossible result.

    Raised when an internal consistency check fails, e.g. a Galois-orbit
    product with a non-rational coefficient, or an interval refinement
    that cannot separate a provably nonzero value from zero.  This always
    indicates a bug, never a property of the input; callers must not
    catch it to hide the result.
    """
