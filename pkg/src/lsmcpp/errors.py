"""Exception types shared across the package."""


class McppError(Exception):
    """Base class for all library errors."""


class GridError(McppError):
    """Invalid grid construction or query (absent vertex, bad weight, ...)."""


class DisconnectedGraphError(GridError):
    """A graph that must be connected is not.

    Carries the offending components so callers can report or inspect them.
    """

    def __init__(self, message, components=None):
        super().__init__(message)
        self.components = components if components is not None else []


class MapFormatError(McppError):
    """Malformed 2D pathfinding map text.  ``line`` is 1-based."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InstanceError(McppError):
    """Instance file violates the schema or its invariants."""


class PartitionError(McppError):
    """A robot partition violates the coverage/connectivity invariants."""


class StaleOperatorError(McppError):
    """An operator no longer valid against the current partition was applied."""


class OracleSizeError(McppError):
    """Instance exceeds the exhaustive oracle's size cap."""
