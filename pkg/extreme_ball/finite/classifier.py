"""Rank test for extremality in finite spectra, with witness reconstruction.

``p`` is extreme in the unit ball of the Λ-polynomials iff the stacked matrix
𝓜 has full column rank 2(N - μ + 1).  When it does not, a kernel vector
(α, β) yields q₀ = λ̄ Σ (α_l + iβ_l) z^l, and q = q₀·r is a perturbation with
‖p ± εq‖_∞ <= 1 for a suitable ε > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Tuple

import numpy as np

from ..algebra.circle_poly import CirclePolynomial, sup_norm, weighted_derivative
from ..algebra.spectrum import SpectrumSet, normalize_finite
from ..config import DEFAULT_CONFIG, ExtremalityConfig, RankConfig, WitnessConfig
from ..errors import (
    CertificateError,
    ContactIndeterminateError,
    FullRankError,
    SpectrumViolationError,
    UnimodularModulusError,
    VanishingEpsilonError,
    ZeroPolynomialError,
)
from ..oracle.search import midpoint_check, quadratic_slack
from ..utils.logging import configure_logging
from .contact import ContactSet, contact_set
from .extremal_matrix import ExtremalityMatrix, RestrictionData, assemble
from .verdict import Verdict, VerdictKind


logger = configure_logging()

SUPPORT_TOL = 1e-12
MONOMIAL_MODULUS_TOL = 1e-10
LAMBDA_TOL = 1e-12


@dataclass(frozen=True)
class RankInfo:
    rank: int
    sigma: Tuple[float, ...]
    confidence: float
    borderline: bool
    threshold: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "sigma": list(self.sigma),
            "confidence": self.confidence,
            "borderline": self.borderline,
            "threshold": self.threshold,
        }


def numeric_rank(matrix: np.ndarray, tol_rank: float = 1e-9, config: RankConfig | None = None) -> RankInfo:
    """Count singular values above ``tol_rank * σ_1 * max(rows, cols)``.

    ``confidence`` is how far the spectrum stays from the threshold on either
    side: min(σ_r / threshold, threshold / σ_{r+1}).
    """

    config = config or RankConfig(tol_rank=tol_rank)
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.size == 0:
        raise ValueError("numeric rank of an empty matrix")

    sigma = np.linalg.svd(matrix, compute_uv=False)
    top = float(sigma[0]) if sigma.size else 0.0
    threshold = tol_rank * top * max(matrix.shape)
    if top == 0.0:
        return RankInfo(rank=0, sigma=tuple(map(float, sigma)), confidence=math.inf, borderline=False, threshold=0.0)

    rank = int(np.sum(sigma > threshold))
    # a wide matrix has implicit zero singular values beyond min(rows, cols)
    dropped = float(sigma[rank]) if rank < sigma.size else 0.0
    kept = float(sigma[rank - 1])
    confidence = kept / threshold if dropped == 0.0 else min(kept / threshold, threshold / dropped)

    ratios = sigma / top
    borderline = bool(np.any((ratios >= config.borderline_low) & (ratios <= config.borderline_high)))
    if borderline:
        logger.warning("borderline singular values: %s", sigma.tolist())
    return RankInfo(
        rank=rank,
        sigma=tuple(float(s) for s in sigma),
        confidence=float(confidence),
        borderline=borderline,
        threshold=threshold,
    )


def kernel_vector(matrix: np.ndarray, tol_rank: float = 1e-9) -> np.ndarray:
    """Unit vector in the numerical kernel of ``matrix``.

    The kernel basis comes from the right singular vectors beyond the
    numerical rank.  The returned vector is the normalised projection of the
    first standard basis vector with a non-negligible projection onto that
    kernel, so the choice does not depend on the SVD's basis or signs.
    """

    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    cols = matrix.shape[1]
    info = numeric_rank(matrix, tol_rank)
    if info.rank >= cols:
        raise FullRankError()

    _, _, vh = np.linalg.svd(matrix, full_matrices=True)
    basis = vh[info.rank :].T
    projector = basis @ basis.T
    for i in range(cols):
        candidate = projector[:, i]
        if candidate[i] > 1e-8:
            vector = candidate / np.linalg.norm(candidate)
            break
    else:  # pragma: no cover - the projector has trace equal to the kernel dimension
        vector = basis[:, 0]

    scale = max(np.linalg.norm(matrix, 2), 1.0)
    residual = float(np.linalg.norm(matrix @ vector))
    if residual > 1e-8 * scale:
        logger.warning("kernel residual %.3e exceeds 1e-8 relative", residual)
    return vector


def _q0_from_kernel(vector: np.ndarray, lam: complex) -> CirclePolynomial:
    half = vector.size // 2
    return CirclePolynomial(np.conj(lam) * (vector[:half] + 1j * vector[half:]))


def _scaled_epsilon(p: CirclePolynomial, q: CirclePolynomial, config: WitnessConfig) -> float:
    bound = 1.0 + config.norm_slack

    def fits(eps: float) -> bool:
        check = midpoint_check(p, q * eps, slack=config.norm_slack)
        return max(check.norm_plus, check.norm_minus) <= bound

    if fits(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(config.bisection_iterations):
        mid = 0.5 * (lo + hi)
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _derivative_residual(
    p: CirclePolynomial,
    vector: np.ndarray,
    contacts: ContactSet,
) -> float:
    """max over contacts and s < μ_j of |d^s/dt^s Re(λ z^γ p̄ q₀)| at ζ_j, relative."""

    half = vector.size // 2
    weights = vector[:half] + 1j * vector[half:]
    worst = 0.0
    for point in contacts.points:
        for s in range(point.mu):
            derivs = np.array(
                [weighted_derivative(p, contacts.gamma + ell, point.t, s) for ell in range(half)]
            )
            value = abs(float(np.real(np.sum(weights * np.conj(derivs)))))
            scale = max(float(np.sum(np.abs(derivs))), 1.0)
            worst = max(worst, value / scale)
    return worst


def _gap_residual(q: CirclePolynomial, spectrum: SpectrumSet) -> float:
    """max |q̂(k)| over k outside Λ, relative to the coefficient norm."""

    norm = float(np.linalg.norm(q.coeffs))
    if norm == 0.0:
        return 0.0
    outside = [abs(q.coefficient(k)) for k in range(q.degree + 1) if k not in spectrum]
    return max(outside, default=0.0) / norm


def build_witness(
    p: CirclePolynomial,
    spectrum: SpectrumSet,
    contacts: ContactSet,
    restriction: RestrictionData,
    vector: np.ndarray,
    config: WitnessConfig | None = None,
) -> Tuple[CirclePolynomial, float, Dict[str, Any]]:
    """Reconstruct εq from a kernel vector; returns (εq, ε, checks)."""

    config = config or WitnessConfig()
    if not np.any(vector):
        raise ValueError("kernel vector must be nonzero")

    q0 = _q0_from_kernel(vector, restriction.lam)
    q = q0 * restriction.r
    if q.is_zero():
        raise ValueError("reconstructed perturbation vanishes")

    gap_residual = _gap_residual(q, spectrum)
    if gap_residual > config.gap_residual:
        raise CertificateError("gap coefficients |q̂(k_ν)|", gap_residual, config.gap_residual)
    derivative_residual = _derivative_residual(p, vector, contacts)
    if derivative_residual > config.derivative_residual:
        raise CertificateError(
            "contact derivatives of Re(λ z^γ p̄ q₀)", derivative_residual, config.derivative_residual
        )

    q = q.cleanup(1e-15)
    epsilon = _scaled_epsilon(p, q, config)
    if epsilon < config.vanishing_epsilon:
        raise VanishingEpsilonError(epsilon)
    logger.info("witness scale epsilon = %.9g", epsilon)

    checks = {
        "q0": q0.to_pairs(),
        "gap_residual": gap_residual,
        "derivative_residual": derivative_residual,
    }
    return q * epsilon, epsilon, checks


def verify_witness(
    p: CirclePolynomial,
    q: CirclePolynomial,
    spectrum: SpectrumSet | None = None,
    config: WitnessConfig | None = None,
) -> Dict[str, Any]:
    """Certificate for p = ½(p + q) + ½(p - q) with both halves in the ball."""

    config = config or WitnessConfig()
    check = midpoint_check(p, q, slack=config.certificate_norm_tol)
    slack = quadratic_slack(p, q, config.certificate_grid)
    certificate: Dict[str, Any] = {
        "norm_plus": check.norm_plus,
        "norm_minus": check.norm_minus,
        "quadratic_slack": slack,
        "grid": config.certificate_grid,
        "null_witness": check.null,
    }
    if spectrum is not None:
        certificate["gap_residual"] = _gap_residual(q, spectrum)

    bound = 1.0 + config.certificate_norm_tol
    if check.norm_plus > bound:
        raise CertificateError("‖p+q‖_∞", check.norm_plus, bound)
    if check.norm_minus > bound:
        raise CertificateError("‖p-q‖_∞", check.norm_minus, bound)
    if slack > config.certificate_slack_tol:
        raise CertificateError("2|Re(p̄q)| + |q|^2 - (1 - |p|^2)", slack, config.certificate_slack_tol)
    if spectrum is not None and certificate["gap_residual"] > config.gap_residual:
        raise CertificateError("gap coefficients of q", certificate["gap_residual"], config.gap_residual)
    if check.null:
        logger.warning("null witness: q vanishes identically")
    return certificate


def _check_support(p: CirclePolynomial, spectrum: SpectrumSet) -> None:
    outside = [k for k in p.support(SUPPORT_TOL) if k not in spectrum]
    if outside:
        raise SpectrumViolationError(outside)


def _monomial_verdict(p: CirclePolynomial, spectrum: SpectrumSet, scale: float, **diagnostics: Any) -> Verdict:
    support = p.support(SUPPORT_TOL)
    if len(support) == 1:
        modulus = abs(p.coefficient(support[0]))
        if abs(modulus - 1.0) > MONOMIAL_MODULUS_TOL:
            logger.warning("monomial coefficient has modulus %.16g", modulus)
    return Verdict(
        kind=VerdictKind.MONOMIAL,
        spectrum=spectrum,
        p=p,
        scale=scale,
        diagnostics=dict(diagnostics),
    )


def _consistency(matrix: ExtremalityMatrix) -> Dict[str, Any]:
    contacts = matrix.contacts
    checks = {
        "mu_le_n": contacts.mu <= matrix.n_max,
        "lambda_modulus_error": abs(abs(matrix.restriction.lam) - 1.0),
        "dimensions": [matrix.rows, matrix.cols],
        "expected_dimensions": [2 * len(matrix.gaps) + contacts.mu, 2 * (matrix.n_max - contacts.mu + 1)],
    }
    if checks["lambda_modulus_error"] > LAMBDA_TOL or checks["dimensions"] != checks["expected_dimensions"]:
        raise RuntimeError(f"extremality matrix consistency check failed: {checks}")
    return checks


def classify(
    p_raw: CirclePolynomial,
    spectrum: SpectrumSet,
    config: ExtremalityConfig | None = None,
) -> Verdict:
    """Decide whether p_raw/‖p_raw‖_∞ is an extreme point for the finite ``spectrum``."""

    config = config or DEFAULT_CONFIG
    if not spectrum.is_finite:
        raise ValueError("classify handles finite spectra; use classify_cofinite for cofinite ones")
    if p_raw.is_zero():
        raise ZeroPolynomialError()
    _check_support(p_raw, spectrum)

    norm = sup_norm(p_raw, config.norm)
    scale = 1.0 / norm.value
    p = p_raw * scale
    base = {"norm": norm.value, "low_confidence_norm": norm.low_confidence}

    if spectrum.is_monomial_space or len(p.support(SUPPORT_TOL)) == 1:
        return _monomial_verdict(p, spectrum, scale, **base)

    try:
        contacts = contact_set(p, spectrum.n_max, config.contact, config.norm)
    except UnimodularModulusError:
        return _monomial_verdict(p, spectrum, scale, unimodular_modulus=True, **base)
    except ContactIndeterminateError as exc:
        logger.warning("contact analysis indeterminate: %s", exc)
        return Verdict(
            kind=VerdictKind.INDETERMINATE,
            spectrum=spectrum,
            p=p,
            scale=scale,
            diagnostics={**base, "reason": str(exc), **exc.diagnostics},
        )

    matrix = assemble(p, spectrum, contacts)
    consistency = _consistency(matrix)
    rank = numeric_rank(matrix.assembled, config.rank.tol_rank, config.rank)
    matrix_info = {"rows": matrix.rows, "cols": matrix.cols, **rank.to_dict()}
    logger.info("rank %d of %d (mu=%d)", rank.rank, matrix.cols, contacts.mu)

    common = dict(
        spectrum=spectrum,
        p=p,
        scale=scale,
        matrix=matrix_info,
        contacts=contacts.to_dict(),
    )
    if rank.borderline:
        return Verdict(
            kind=VerdictKind.INDETERMINATE,
            diagnostics={**base, "reason": "borderline singular values", "consistency": consistency},
            **common,
        )
    if rank.rank == matrix.cols:
        return Verdict(kind=VerdictKind.EXTREME, diagnostics={**base, "consistency": consistency}, **common)

    vector = kernel_vector(matrix.assembled, config.rank.tol_rank)
    try:
        witness, epsilon, checks = build_witness(
            p, spectrum, contacts, matrix.restriction, vector, config.witness
        )
        certificate = verify_witness(p, witness, spectrum, config.witness)
    except (VanishingEpsilonError, CertificateError) as exc:
        logger.warning("witness construction failed, verdict downgraded: %s", exc)
        return Verdict(
            kind=VerdictKind.INDETERMINATE,
            diagnostics={**base, "reason": str(exc), **exc.diagnostics, "kernel_vector": vector.tolist()},
            **common,
        )

    certificate.update(checks)
    certificate["kernel_vector"] = vector.tolist()
    certificate["epsilon"] = epsilon
    return Verdict(
        kind=VerdictKind.NON_EXTREME,
        witness=witness,
        epsilon=epsilon,
        certificate=certificate,
        diagnostics={**base, "consistency": consistency},
        **common,
    )


def apply_shift(verdict: Verdict, shift: int) -> Verdict:
    """Carry a verdict for the normalised spectrum back through z^shift.

    Multiplication by z^d maps one unit ball isometrically onto the other, so
    only the polynomial and the witness move; the contact set is unchanged.
    """

    if shift:
        verdict.p = verdict.p.shifted(shift)
        if verdict.witness is not None:
            verdict.witness = verdict.witness.shifted(shift)
    verdict.shift = shift
    return verdict


def classify_members(
    p_raw: CirclePolynomial,
    members: Iterable[int],
    config: ExtremalityConfig | None = None,
) -> Verdict:
    """Classify against an arbitrary finite set of exponents.

    The set is shifted to contain 0, and the verdict is reported in the
    caller's exponents together with the shift used.
    """

    members = sorted({int(k) for k in members})
    spectrum, shift = normalize_finite(members)
    if p_raw.is_zero():
        raise ZeroPolynomialError()
    outside = [k for k in p_raw.support(SUPPORT_TOL) if k not in members]
    if outside:
        raise SpectrumViolationError(outside)
    verdict = classify(CirclePolynomial(p_raw.coeffs[shift:]), spectrum, config)
    return apply_shift(verdict, shift)
