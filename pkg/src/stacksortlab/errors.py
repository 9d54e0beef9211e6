"""Exception types shared across the package."""


class StackSortError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(StackSortError, ValueError):
    """Malformed permutation or partition text.

    `position` is the 1-based character (compact form) or token (spaced
    form) where parsing failed, when known.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class InvalidPermutationError(StackSortError, ValueError):
    """Input violates a permutation invariant (duplicates, entries < 1,
    or not a permutation of [n] where one is required)."""


class EmptyPermutationError(InvalidPermutationError):
    """Operation requires a nonempty permutation."""


class PreconditionError(StackSortError, ValueError):
    """Domain precondition violated (pattern containment, argument out of
    the construction's range, invalid partition, ...)."""


class ResourceBoundError(StackSortError, RuntimeError):
    """Exact enumeration was requested beyond the configured bound."""
