"""High-precision tools for the incomplete cosine expansion of sinc and the
erf and pi approximations built from it."""

from .bignum import BigReal, PrecisionContext
from .oracles import reference_erf, reference_pi
from .pi_series import SeriesKind, pi_accelerated, pi_direct

__all__ = [
    "BigReal",
    "PrecisionContext",
    "reference_pi",
    "reference_erf",
    "SeriesKind",
    "pi_direct",
    "pi_accelerated",
]
__version__ = "0.1.0"
