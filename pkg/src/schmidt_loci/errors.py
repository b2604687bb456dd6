"""Exception hierarchy shared by every module."""


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class ShapeError(InvalidInputError):
    pass


class NotHermitianError(InvalidInputError):
    pass


class NotPositiveError(InvalidInputError):
    pass


class TraceError(InvalidInputError):
    pass


class UnsupportedConfigurationError(InvalidInputError):
    """The input is well formed but outside the supported setting (e.g. m != n)."""


class InternalError(RuntimeError):
    pass
