"""Exception types shared across the package."""


class InternalConsistencyError(RuntimeError):
    """A computation contradicted a fact the algorithms depend on.

    Raised e.g. when a cyclotomic division leaves a remainder or when a
    product of parabolic orders reaches the order of the whole group.
    """


class RangeError(ValueError):
    """Input lies outside the range the exact algorithms are trusted for."""


class CapExceeded(RuntimeError):
    """A brute-force enumeration would exceed its configured size cap."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count
