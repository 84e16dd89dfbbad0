"""Exception hierarchy shared by every liespec module."""


class LieSpecError(Exception):
    """Base class for all errors raised by liespec."""


class InvalidRank(LieSpecError, ValueError):
    """Rank outside the validity window of a family."""


class UnsupportedFamily(LieSpecError, ValueError):
    """Family label not handled (E6, E7 or unknown)."""


class UnsupportedRank(LieSpecError, ValueError):
    """Rank-1 groups are excluded from the exponent computations."""


class DimensionMismatch(LieSpecError, ValueError):
    pass


class ResourceLimit(LieSpecError, RuntimeError):
    """A search or count would exceed its configured budget."""


class InternalInconsistency(LieSpecError, RuntimeError):
    """Root data produced a value that must be integral but is not."""


class UnsupportedS(LieSpecError, ValueError):
    pass


class InvalidExponent(LieSpecError, ValueError):
    pass


class NyquistViolation(LieSpecError, ValueError):
    pass


class ZeroDenominator(LieSpecError, ZeroDivisionError):
    pass
