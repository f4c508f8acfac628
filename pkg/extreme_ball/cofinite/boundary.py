"""Boundary traces on the uniform grid and the log-integral decision."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..algebra.circle_poly import CirclePolynomial, grid_values, sup_norm
from ..config import CofiniteConfig
from ..errors import NormError, ZeroPolynomialError
from ..utils.logging import configure_logging


logger = configure_logging()

UNIMODULAR_TOL = 1e-10
HALF_STEP = 0.5
CLAMPED_MAJORITY = 0.5


class SourceKind(str, enum.Enum):
    POLYNOMIAL = "polynomial"
    BLASCHKE = "blaschke"
    GRID = "grid"


class LogIntegral(str, enum.Enum):
    DIVERGES = "diverges"
    CONVERGES = "converges"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LogIntegralDecision:
    status: LogIntegral
    estimate: Optional[float] = None
    """Grid mean of log(1 - |f|), i.e. (1/2π)∫ log(1 - |f|) by the rectangle rule."""

    heuristic_divergent: bool = False
    clamped_fraction: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "estimate": self.estimate,
            "heuristic_divergent": self.heuristic_divergent,
            "clamped_fraction": self.clamped_fraction,
        }


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Samples f(e^{it_k}), t_k = 2π(k + offset)/2^G, with the closed form they came from.

    Polynomial and Blaschke inputs are sampled on the half-step grid
    (offset ½); a contact point at a multiple of 2π/2^G, such as t = 0 or
    t = π, then never coincides with a sample.  Grid inputs keep offset 0.
    """

    kind: SourceKind
    grid_log2: int
    samples: np.ndarray = field(repr=False)
    polynomial: Optional[CirclePolynomial] = None
    zeros: Tuple[complex, ...] = ()
    constant: complex = 1.0
    offset: float = 0.0

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_polynomial(cls, p: CirclePolynomial, grid_log2: int = 14) -> "BoundaryFunction":
        samples = grid_values(p, 2**grid_log2, offset=HALF_STEP)
        return cls(SourceKind.POLYNOMIAL, grid_log2, samples, polynomial=p, offset=HALF_STEP)

    @classmethod
    def blaschke(
        cls,
        zeros: Sequence[complex],
        constant: complex = 1.0,
        grid_log2: int = 14,
    ) -> "BoundaryFunction":
        zeros = tuple(complex(a) for a in zeros)
        if any(abs(a) >= 1.0 for a in zeros):
            raise ValueError("Blaschke zeros must lie in the open unit disk")
        if abs(abs(constant) - 1.0) > UNIMODULAR_TOL:
            raise ValueError("Blaschke constant must be unimodular")
        n = 2**grid_log2
        z = np.exp(2j * np.pi * (np.arange(n) + HALF_STEP) / n)
        samples = np.full(n, complex(constant), dtype=np.complex128)
        for a in zeros:
            samples *= (z - a) / (1.0 - np.conj(a) * z)
        if np.max(np.abs(np.abs(samples) - 1.0)) > UNIMODULAR_TOL:
            raise ValueError("Blaschke samples are not unimodular")
        return cls(
            SourceKind.BLASCHKE,
            grid_log2,
            samples,
            zeros=zeros,
            constant=complex(constant),
            offset=HALF_STEP,
        )

    @classmethod
    def from_samples(cls, samples: Sequence[complex] | np.ndarray) -> "BoundaryFunction":
        arr = np.asarray(samples, dtype=np.complex128)
        n = arr.size
        if n < 2 or n & (n - 1):
            raise ValueError("grid samples must have power-of-two length")
        return cls(SourceKind.GRID, int(math.log2(n)), arr.copy())

    def normalized(self) -> Tuple["BoundaryFunction", float]:
        """Polynomial input divided by its certified sup norm, with the factor applied.

        Other inputs come back unchanged with factor 1; their norm is checked
        by the log-integral decision.
        """

        if self.kind is not SourceKind.POLYNOMIAL:
            return self, 1.0
        if self.polynomial.is_zero():
            raise ZeroPolynomialError()
        scale = 1.0 / sup_norm(self.polynomial).value
        if abs(scale - 1.0) <= UNIMODULAR_TOL:
            return self, 1.0
        return BoundaryFunction.from_polynomial(self.polynomial * scale, self.grid_log2), scale

    def with_grid(self, grid_log2: int) -> "BoundaryFunction":
        """Resample a structured input on a finer grid."""

        if self.kind is SourceKind.POLYNOMIAL:
            return BoundaryFunction.from_polynomial(self.polynomial, grid_log2)
        if self.kind is SourceKind.BLASCHKE:
            return BoundaryFunction.blaschke(self.zeros, self.constant, grid_log2)
        raise ValueError("grid inputs cannot be resampled")

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------
    @property
    def grid_size(self) -> int:
        return int(self.samples.size)

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * (np.arange(self.grid_size) + self.offset) / self.grid_size

    def norm(self) -> float:
        if self.kind is SourceKind.POLYNOMIAL:
            return sup_norm(self.polynomial).value
        if self.kind is SourceKind.BLASCHKE:
            return 1.0
        return float(np.max(np.abs(self.samples)))

    def coefficients(self) -> np.ndarray:
        """f̂(0..n/2); exact for polynomials, a discrete transform otherwise."""

        if self.kind is SourceKind.POLYNOMIAL:
            return np.asarray(self.polynomial.coeffs)
        n = self.grid_size
        k = np.arange(n // 2 + 1)
        return np.fft.fft(self.samples)[: n // 2 + 1] / n * np.exp(-2j * np.pi * k * self.offset / n)

    def is_monomial(self) -> bool:
        return self.kind is SourceKind.POLYNOMIAL and len(self.polynomial.support(1e-12)) == 1

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is SourceKind.POLYNOMIAL:
            return {"type": "polynomial", "coeffs": self.polynomial.to_pairs()}
        if self.kind is SourceKind.BLASCHKE:
            return {
                "type": "blaschke",
                "zeros": [[a.real, a.imag] for a in self.zeros],
                "constant": [self.constant.real, self.constant.imag],
            }
        return {"type": "grid", "samples": [[v.real, v.imag] for v in self.samples]}


def _check_norm(f: BoundaryFunction, tol: float) -> float:
    norm = f.norm()
    if abs(norm - 1.0) > tol:
        raise NormError(norm)
    return norm


def log_defect(f: BoundaryFunction, clamp: float = 1e-15) -> Tuple[np.ndarray, np.ndarray]:
    """u = log(1 - |f|) on the grid, with 1 - |f| clamped below at ``clamp``.

    Returns ``(u, clamped)`` where ``clamped`` masks the samples that hit the
    floor.
    """

    defect = 1.0 - np.abs(f.samples)
    clamped = defect < clamp
    if np.any(clamped):
        logger.warning("clamped %d grid samples of 1-|f| at %.1e", int(np.sum(clamped)), clamp)
    return np.log(np.maximum(defect, clamp)), clamped


def log_integral_diverges(f: BoundaryFunction, config: CofiniteConfig | None = None) -> LogIntegralDecision:
    """Decide whether ∫ log(1 - |f|) = -∞ for structured inputs.

    Polynomials converge unless |f| ≡ 1, since 1 - |f| then vanishes only at
    finitely many points and to finite order.  Blaschke products have |f| ≡ 1
    and diverge.  Sampled inputs only get a quadrature estimate.
    """

    config = config or CofiniteConfig()
    _check_norm(f, config.norm_tol)

    if f.kind is SourceKind.BLASCHKE:
        return LogIntegralDecision(LogIntegral.DIVERGES)

    u, clamped = log_defect(f, config.clamp)
    estimate = float(np.mean(u))
    clamped_fraction = float(np.mean(clamped))
    if f.kind is SourceKind.POLYNOMIAL:
        if f.is_monomial() or sup_norm(f.polynomial).flat:
            return LogIntegralDecision(LogIntegral.DIVERGES, estimate=estimate)
        return LogIntegralDecision(LogIntegral.CONVERGES, estimate=estimate)

    # clamped samples bound the estimate below by log(clamp), so a mostly clamped
    # grid counts as divergent on its own
    heuristic = estimate < config.divergence_heuristic or clamped_fraction >= CLAMPED_MAJORITY
    logger.info(
        "grid input: log-integral estimate %.6g, clamped fraction %.3f (heuristic divergent: %s)",
        estimate,
        clamped_fraction,
        heuristic,
    )
    return LogIntegralDecision(
        LogIntegral.UNKNOWN,
        estimate=estimate,
        heuristic_divergent=heuristic,
        clamped_fraction=clamped_fraction,
    )
