"""Exception hierarchy shared by all modules."""


class EhrhartError(Exception):
    """Base class for every error raised by this package."""


class MissingAssignment(EhrhartError, KeyError):
    """A polynomial variable was left without a value during evaluation."""

    def __str__(self):
        return Exception.__str__(self)


class Unbounded(EhrhartError):
    pass


class Degenerate(EhrhartError):
    """Non-simple vertex or a polytope that is not full-dimensional."""


class NotSmooth(EhrhartError):
    pass


class NotHomogeneous(EhrhartError):
    pass


class OutsideTypeCone(EhrhartError):
    pass


class NotMetric(EhrhartError):
    """Alcoved parameters violate a triangle inequality."""


class ExhaustedAttempts(EhrhartError):
    pass


class ZeroPolynomial(EhrhartError):
    pass
