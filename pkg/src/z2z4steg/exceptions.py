"""Exception hierarchy shared by every module of the package."""


class StegoError(Exception):
    """Base class for all package errors."""


class ParameterError(StegoError, ValueError):
    """An argument is outside the domain an operation accepts."""


class CapacityError(StegoError):
    """A message or exhaustive search does not fit in the allowed size."""


class InfeasibleError(StegoError):
    """No admissible set of changes satisfies the request."""


class EmbeddingError(InfeasibleError):
    """A cover block cannot carry the requested chunk with +-1 changes."""
