"""Exception types shared across the package."""


class MeasureLabError(Exception):
    """Base class for package-specific errors."""


class SpaceMismatchError(MeasureLabError):
    """Objects attached to different spaces were combined."""


class InvalidSpecError(MeasureLabError):
    """A construction request violates its preconditions."""


class IntegrabilityError(MeasureLabError):
    """An integrand is non-finite at a location carrying positive mass."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class RepresentationError(MeasureLabError):
    """A computed object cannot be represented in its target class."""


class ScenarioError(MeasureLabError):
    """A scenario document failed validation.

    ``path`` points into the offending JSON (e.g. ``checks[2].check``).
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
