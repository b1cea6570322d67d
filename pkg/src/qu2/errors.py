"""Error types shared across the package."""


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class CapacityError(DomainError):
    """A computation was requested beyond the supported size limits."""


class ParseError(ValueError):
    """Malformed text input; carries the offending position."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos
