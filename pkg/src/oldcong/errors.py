"""Exception types shared across the package."""


class OldcongError(Exception):
    """Base class for errors raised by this package."""


class UsageError(OldcongError, ValueError):
    """Bad arguments: dimension mismatch, precondition violated."""


class InvalidSymbolError(UsageError):
    pass


class PrecisionError(UsageError):
    pass


class InputError(OldcongError):
    """Malformed or invalid curve input document."""


class SingularCurveError(InputError):
    pass


class MissingDataError(OldcongError):
    pass


class MathematicalRejection(OldcongError):
    """The computation is well-posed but has no meaningful answer (no newforms, ...)."""


class NotANewformError(MathematicalRejection):
    pass


class RouteDisagreement(MathematicalRejection):
    pass
