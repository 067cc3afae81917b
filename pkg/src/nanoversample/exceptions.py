class DataError(ValueError):
    """Raised when input data violates a dataset contract."""


class AllocationWarning(UserWarning):
    """Emitted when ADASYN falls back to uniform per-seed allocation."""
