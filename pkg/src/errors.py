"""Error hierarchy for maolperm.

Every library failure raises a subclass of MaolpermError. The CLI catches
these at the command boundary and turns them into error payloads.
"""


class MaolpermError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, details: dict | None = None):
        self.message = message
        self.details = details or {}
        super().__init__(message)


class DegreeMismatchError(MaolpermError):
    """Raised when two objects that must share a degree (or n) do not."""


class DomainError(MaolpermError):
    """Raised for points outside {0,...,n-1} or images that are not a bijection."""


class CapExceededError(MaolpermError):
    """Raised when a computation would exceed a declared size cap."""

    def __init__(self, what: str, requested: int, cap: int):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(
            f"{what}: {requested} exceeds cap {cap}",
            {"requested": requested, "cap": cap},
        )


class InvalidParameterError(MaolpermError):
    """Raised when a constructor or operation parameter is out of range."""


class NotTransitiveError(MaolpermError):
    """Raised when an operation requires a transitive permutation group."""


class NotSubgroupError(MaolpermError):
    """Raised when a purported subgroup is not contained in its parent."""


class NotStandardTupleError(MaolpermError):
    """Raised when a tuple fails the standard-tuple conditions."""


class GroupSpecError(MaolpermError):
    """Raised when cycle notation or a group spec string cannot be parsed."""
