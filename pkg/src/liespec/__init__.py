"""Laplace spectra of compact simple Lie groups as shifted sums of squares."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DimensionMismatch, InternalInconsistency, InvalidExponent, InvalidRank, LieSpecError,
    NyquistViolation, ResourceLimit, UnsupportedFamily, UnsupportedRank, UnsupportedS,
    ZeroDenominator,
)
from .root_systems import GroupFamily, RootSystem, build_root_system  # noqa: E402
