"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """A search was asked to exceed its configured edge budget."""


class ConstructionError(RuntimeError):
    """A constructive scheme could not produce a valid assignment within its bound."""


class Graph6Error(ValueError):
    """Malformed graph6 text. ``offset`` is the byte position when known."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte {offset})"
        super().__init__(message)
        self.offset = offset
