"""Exception types; the CLI maps each to an exit status."""


class ParameterError(ValueError):
    """A probe or constructor received an out-of-range parameter."""


class ResourceError(RuntimeError):
    """A requested object would exceed the configured size budget."""


class AdmissibilityError(ValueError):
    """A target region contains no sampled range element."""


class SearchExhausted(RuntimeError):
    """A constructive search ran out of room before completing.

    ``level`` and ``choice`` name where it stopped.
    """

    def __init__(self, message, level=None, choice=None):
        super().__init__(message)
        self.level = level
        self.choice = choice
