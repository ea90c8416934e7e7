"""Exception types shared across the package."""


class DiversityError(ValueError):
    """Domain error raised when an index or pipeline precondition is violated."""


class EmptyCommunityError(DiversityError):
    """A community holds no eligible individuals, so no index can be computed."""

    def __init__(self, message: str, role: str | None = None):
        super().__init__(message)
        self.role = role


class SchemaError(DiversityError):
    """Fatal dataset problem: bad header, unreadable file, or no data rows."""
