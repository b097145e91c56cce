"""Exception types shared across the package."""


class InvariantViolation(RuntimeError):
    """An internal mathematical invariant failed.

    Raised when a quantity the theory guarantees (e.g. the rank of a class
    matrix, or the factor structure of a product decomposition) comes out
    wrong.  This always indicates a bug or bad input that slipped past
    validation, never a routine error condition, so callers should not
    catch it except at a top-level reporting boundary.
    """
