"""Non-extremality witnesses g·p₀ for cofinite spectra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from ..algebra.circle_poly import CirclePolynomial, normalize_to_unit
from ..algebra.spectrum import SpectrumSet
from ..config import CofiniteConfig, DEFAULT_CONFIG, ExtremalityConfig
from ..errors import (
    CertificateError,
    DivergentLogIntegralError,
    KernelResidualError,
    ModulusCheckError,
    SpectrumViolationError,
    UndecidedLogIntegralError,
)
from ..finite.verdict import Verdict, VerdictKind
from ..utils.logging import configure_logging
from .boundary import BoundaryFunction, LogIntegral, SourceKind, log_defect, log_integral_diverges
from .outer import OuterFunction, analytic_grid, outer_function


logger = configure_logging()

SPECTRUM_TOL = 1e-10
NULL_WITNESS = 1e-12


@dataclass(frozen=True, eq=False)
class CofiniteWitness:
    witness: CirclePolynomial
    p0: CirclePolynomial
    outer: OuterFunction
    grid_log2: int
    certificate: Dict[str, Any] = field(default_factory=dict)


def gap_kernel(
    g_hat: np.ndarray,
    gaps: Sequence[int],
    config: CofiniteConfig | None = None,
) -> CirclePolynomial:
    """p₀ of degree <= m with (g·p₀)^(k_ν) = 0 for every gap, scaled to ‖p₀‖_∞ = 1.

    The m×(m+1) system always has a kernel.  Among kernel vectors the
    normalised projection of the first standard basis vector with a
    non-negligible projection is returned.
    """

    config = config or CofiniteConfig()
    m = len(gaps)
    if m < 1:
        raise ValueError("gap kernel needs at least one gap")

    def g(k: int) -> complex:
        return complex(g_hat[k]) if 0 <= k < g_hat.size else 0j

    system = np.array([[g(k - l) for l in range(m + 1)] for k in gaps], dtype=np.complex128)
    basis = null_space(system, rcond=1e-12)
    if basis.shape[1] == 0:  # pragma: no cover - an m×(m+1) system has a kernel
        basis = null_space(system, rcond=1e-8)
    projector = basis @ basis.conj().T
    vector = basis[:, 0]
    for i in range(m + 1):
        candidate = projector[:, i]
        if abs(candidate[i]) > 1e-8:
            vector = candidate / np.linalg.norm(candidate)
            break

    p0 = normalize_to_unit(CirclePolynomial(vector))
    coeffs = np.zeros(m + 1, dtype=np.complex128)
    coeffs[: p0.coeffs.size] = p0.coeffs
    residual = float(np.max(np.abs(system @ coeffs)))
    if residual > config.kernel_residual:
        raise KernelResidualError(residual, config.kernel_residual)
    return p0


def _check_spectrum(f: BoundaryFunction, spectrum: SpectrumSet) -> None:
    coeffs = f.coefficients()
    scale = max(float(np.max(np.abs(coeffs))), 1.0)
    outside = [k for k in spectrum.gaps if k < coeffs.size and abs(coeffs[k]) > SPECTRUM_TOL * scale]
    if outside:
        raise SpectrumViolationError(outside)


def _witness_on_grid(
    f: BoundaryFunction,
    spectrum: SpectrumSet,
    config: CofiniteConfig,
) -> CofiniteWitness:
    u, clamped = log_defect(f, config.clamp)
    outer = outer_function(u, config, clamped, f.offset)
    # with no gaps every analytic g is admissible and p₀ = 1
    p0 = gap_kernel(outer.g_hat, spectrum.gaps, config) if spectrum.gaps else CirclePolynomial(np.ones(1))

    w = CirclePolynomial(np.convolve(outer.g_hat, p0.coeffs))
    n = f.grid_size
    w_values = analytic_grid(w.coeffs, n, f.offset)
    sup_plus = float(np.max(np.abs(f.samples + w_values)))
    sup_minus = float(np.max(np.abs(f.samples - w_values)))
    gap_residuals = [abs(w.coefficient(k)) for k in spectrum.gaps]
    witness_norm = float(np.linalg.norm(w.coeffs))

    certificate: Dict[str, Any] = {
        "grid_log2": f.grid_log2,
        "grid_offset": f.offset,
        "sup_plus": sup_plus,
        "sup_minus": sup_minus,
        "gap_residuals": gap_residuals,
        "witness_norm": witness_norm,
        "p0": p0.to_pairs(),
        "disk_algebra": f.kind is SourceKind.POLYNOMIAL,
        "continuity_jump": outer.continuity_jump(),
        **outer.diagnostics(),
    }

    bound = 1.0 + config.witness_tol
    if witness_norm < NULL_WITNESS:
        raise CertificateError("‖ŵ‖ (null witness)", witness_norm, NULL_WITNESS)
    if max(gap_residuals, default=0.0) > config.witness_tol:
        raise CertificateError("gap coefficients |ŵ(k_ν)|", max(gap_residuals), config.witness_tol)
    if sup_plus > bound:
        raise CertificateError("grid sup |f+w|", sup_plus, bound)
    if sup_minus > bound:
        raise CertificateError("grid sup |f-w|", sup_minus, bound)
    return CofiniteWitness(witness=w, p0=p0, outer=outer, grid_log2=f.grid_log2, certificate=certificate)


def cofinite_witness(
    f: BoundaryFunction,
    spectrum: SpectrumSet,
    config: CofiniteConfig | None = None,
    override: bool = False,
) -> CofiniteWitness:
    """Witness w = g·p₀ with f ± w in the unit ball and ŵ vanishing on the gaps.

    A failed certificate is retried on finer grids up to ``max_grid_log2``;
    sampled inputs cannot be refined and fail at once.
    """

    config = config or CofiniteConfig()
    if spectrum.is_finite:
        raise ValueError("cofinite_witness needs a cofinite spectrum")

    _check_spectrum(f, spectrum)
    decision = log_integral_diverges(f, config)
    if decision.status is LogIntegral.DIVERGES:
        raise DivergentLogIntegralError()
    if decision.status is LogIntegral.UNKNOWN and not override:
        raise UndecidedLogIntegralError(decision.estimate)

    current = f
    while True:
        try:
            result = _witness_on_grid(current, spectrum, config)
        except (CertificateError, ModulusCheckError, KernelResidualError) as exc:
            if current.kind is SourceKind.GRID or current.grid_log2 >= config.max_grid_log2:
                raise
            logger.info("certificate failed on 2^%d grid (%s); refining", current.grid_log2, exc)
            current = current.with_grid(current.grid_log2 + 1)
            continue
        logger.info(
            "cofinite witness on 2^%d grid, gap residual %.3e",
            result.grid_log2,
            max(result.certificate["gap_residuals"], default=0.0),
        )
        return result


def even_spectrum_witness(
    f: BoundaryFunction,
    config: CofiniteConfig | None = None,
) -> Tuple[np.ndarray, Dict[str, Any]]:
    """Witness for an even f in the ball of functions with even spectrum.

    The outer function g with |g| = 1 - |f| is itself even, so f ± g stays in
    the ball and in the even subspace; p₀ = 1.  Returns ĝ and a certificate
    with the largest odd coefficient of g and the grid sups of |f ± g|.
    """

    config = config or CofiniteConfig()
    if log_integral_diverges(f, config).status is LogIntegral.DIVERGES:
        raise DivergentLogIntegralError()
    coeffs = f.coefficients()
    scale = max(float(np.max(np.abs(coeffs))), 1.0)
    odd_input = float(np.max(np.abs(coeffs[1::2]), initial=0.0))
    if odd_input > SPECTRUM_TOL * scale:
        raise SpectrumViolationError([int(k) for k in np.flatnonzero(np.abs(coeffs) > SPECTRUM_TOL * scale) if k % 2])

    u, clamped = log_defect(f, config.clamp)
    outer = outer_function(u, config, clamped, f.offset)
    g_hat = outer.g_hat
    n = f.grid_size
    odd_residual = float(np.max(np.abs(g_hat[1 : n // 2 : 2])))
    certificate: Dict[str, Any] = {
        "grid_log2": f.grid_log2,
        "grid_offset": f.offset,
        "odd_residual": odd_residual,
        "sup_plus": float(np.max(np.abs(f.samples + outer.grid_values))),
        "sup_minus": float(np.max(np.abs(f.samples - outer.grid_values))),
        **outer.diagnostics(),
    }
    logger.info("even spectrum witness: odd residual %.3e", odd_residual)
    return g_hat, certificate


def classify_cofinite(
    f: BoundaryFunction,
    spectrum: SpectrumSet,
    config: ExtremalityConfig | None = None,
    override: bool = False,
) -> Verdict:
    """Extreme iff ∫ log(1 - |f|) = -∞; otherwise the witness g·p₀ with ε = 1.

    Polynomial inputs are first divided by their sup norm, as in the finite
    case; the factor is reported as ``scale``.
    """

    config = config or DEFAULT_CONFIG
    f, scale = f.normalized()
    _check_spectrum(f, spectrum)
    decision = log_integral_diverges(f, config.cofinite)
    p = CirclePolynomial(f.coefficients())
    diagnostics: Dict[str, Any] = {"log_integral": decision.to_dict()}

    if decision.status is LogIntegral.DIVERGES:
        kind = VerdictKind.MONOMIAL if f.is_monomial() else VerdictKind.EXTREME
        return Verdict(kind=kind, spectrum=spectrum, p=p, scale=scale, diagnostics=diagnostics)
    if decision.status is LogIntegral.UNKNOWN and not override:
        diagnostics["reason"] = "log-integrability of sampled input cannot be decided"
        return Verdict(
            kind=VerdictKind.INDETERMINATE, spectrum=spectrum, p=p, scale=scale, diagnostics=diagnostics
        )

    result = cofinite_witness(f, spectrum, config.cofinite, override=override)
    return Verdict(
        kind=VerdictKind.NON_EXTREME,
        spectrum=spectrum,
        p=p,
        scale=scale,
        witness=result.witness,
        epsilon=1.0,
        certificate=result.certificate,
        diagnostics=diagnostics,
    )
