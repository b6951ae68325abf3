"""Exception types raised across the package."""


class OrbitDualityError(Exception):
    """Base class for all package errors."""


class ParityMismatch(OrbitDualityError, ValueError):
    """Total of a partition has the wrong parity for the orbit type."""


class NotAMember(OrbitDualityError, ValueError):
    """Partition is not in the type B or type C set."""


class NotSpecial(OrbitDualityError, ValueError):
    """Partition is a member but not special."""


class NotTypeB(OrbitDualityError, ValueError):
    pass


class DecompositionFailure(OrbitDualityError, RuntimeError):
    """Block decomposition did not exist or was not unique (internal bug)."""


class InvalidLevi(OrbitDualityError, ValueError):
    pass


class RetriesExhausted(OrbitDualityError, RuntimeError):
    """Rejection sampling never produced a generic draw; p or N is too small."""


class SingularQuotient(OrbitDualityError, ArithmeticError):
    pass


class FullyDegenerate(OrbitDualityError, ArithmeticError):
    pass


class PrecisionLoss(OrbitDualityError, ArithmeticError):
    """A result would depend on coefficients beyond the truncation order."""


class GenericityFailure(OrbitDualityError, ArithmeticError):
    """The quadratic sign system is degenerate for this draw."""


class NotRichardson(OrbitDualityError, ValueError):
    pass


class ParityGuard(OrbitDualityError, ValueError):
    """The inferred number of fixed points is odd."""


class UnknownSuite(OrbitDualityError, ValueError):
    pass


class IoError(OrbitDualityError, OSError):
    pass
