"""Cofinite spectra: log-integral criterion and outer-function witnesses."""

from .boundary import BoundaryFunction, LogIntegral, LogIntegralDecision, SourceKind, log_integral_diverges
from .outer import OuterFunction, outer_function
from .witness import (
    CofiniteWitness,
    classify_cofinite,
    cofinite_witness,
    even_spectrum_witness,
    gap_kernel,
)

__all__ = [
    "BoundaryFunction",
    "CofiniteWitness",
    "LogIntegral",
    "LogIntegralDecision",
    "OuterFunction",
    "SourceKind",
    "classify_cofinite",
    "cofinite_witness",
    "even_spectrum_witness",
    "gap_kernel",
    "log_integral_diverges",
    "outer_function",
]
