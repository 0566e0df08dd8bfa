"""Exception types shared across the package."""


class UnsupportedSizeError(Exception):
    """Raised when an exact computation would exceed its feasibility cap.

    Callers can distinguish this from a validation error (ValueError): the
    input is well formed, but the requested instance is too large for the
    algorithm behind the operation.
    """
