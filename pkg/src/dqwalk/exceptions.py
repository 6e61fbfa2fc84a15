"""Exception types for contract violations and numerical failures."""


class TruncationMismatchError(ValueError):
    """A SeriesTruncation was built for different (tprime, x) than the
    parameters it is being used with."""


class WindowTooSmallError(ValueError):
    """A density window does not cover the sites required by the operation."""


class BracketError(RuntimeError):
    """A root bracket does not contain a sign change."""


class NumericalError(RuntimeError):
    """An eigensolve failed or a consistency residual exceeded its bound."""


class QuadratureLimitError(ValueError):
    """Requested time exceeds the validity ceiling of the quadrature grid."""
