"""Exceptions shared across the package."""


class ValidationError(ValueError):
    """Bad user input: parameters, files, or arguments out of contract."""


class IntegrityError(RuntimeError):
    """Internal invariant broke: corrupt symbols, inconsistent state."""
