"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when a graph description cannot be parsed or is inconsistent."""


class NonGeodesicError(ValueError):
    """Raised when an operation requiring a geodesic word receives a non-geodesic one."""


class OrbitCapError(RuntimeError):
    """Raised when a braid-orbit search exceeds the configured cap.

    Attributes:
        cap: the cap that was exceeded.
    """

    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"braid orbit exceeded cap of {cap} words")


class SizeCapError(RuntimeError):
    """Raised when an enumeration (vertex subsets, ball elements, ...) exceeds a cap."""

    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"enumeration exceeded cap of {cap}")


class ConstructionError(RuntimeError):
    """Raised when a fan/filter/extension construction cannot proceed.

    Carries the blocking vertex set when one is known, so callers can see why
    the greedy step had no legal move (this usually means a precondition such
    as one-endedness or avoidance was misreported).
    """

    def __init__(self, message, blocking_set=None):
        self.blocking_set = None if blocking_set is None else frozenset(blocking_set)
        super().__init__(message)
