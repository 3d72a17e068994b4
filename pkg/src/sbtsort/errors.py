"""Exception types shared across the package."""


class SBTError(Exception):
    """Base class for errors raised by this package."""


class IndexViolation(SBTError, ValueError):
    """A transposition descriptor does not satisfy 1 <= i < j < k <= n+1."""


class GroundSetMismatch(SBTError, ValueError):
    """Two cyclic permutations live on different symbol sets."""


class NotApplicable(SBTError, ValueError):
    """A 3-cycle is not applicable to the extended cycle it was used on."""


class InternalConsistencyError(SBTError, RuntimeError):
    """A search that is guaranteed to succeed came back empty.

    This is a bug detector. ``state`` carries whatever was needed to
    reproduce the failure (usually the one-line permutation).
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state

    def __str__(self):
        base = super().__str__()
        if self.state is None:
            return base
        return f"{base} [state: {self.state}]"


class ResourceLimit(SBTError):
    """A distance table or search was asked to exceed its configured cap."""


class SearchTimeout(SBTError):
    """Exact search gave up; ``lower``/``upper`` are the best known bounds."""

    def __init__(self, message, lower, upper):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
