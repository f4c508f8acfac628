"""Spectra and polynomial arithmetic on the unit circle."""

from .circle_poly import Autocorrelation, CirclePolynomial, SupNorm
from .spectrum import SpectrumKind, SpectrumSet, gap_list, normalize_finite

__all__ = [
    "Autocorrelation",
    "CirclePolynomial",
    "SpectrumKind",
    "SpectrumSet",
    "SupNorm",
    "gap_list",
    "normalize_finite",
]
