"""Problem-level entry points shared by the CLI, the batch runner and the service."""

from __future__ import annotations

from typing import Any, Dict, Tuple

import numpy as np
import pandas as pd

from . import SCHEMA_VERSION
from .algebra.circle_poly import CirclePolynomial, autocorrelation, grid_values, normalize_to_unit
from .algebra.spectrum import SpectrumSet, normalize_finite
from .cofinite.outer import analytic_grid
from .cofinite.witness import classify_cofinite
from .config import ExtremalityConfig, tolerance_snapshot
from .data.problem import ProblemFile, polynomial_from_json
from .errors import CertificateError, DivergentLogIntegralError, FullRankError, ProblemFileError
from .finite.classifier import classify, classify_members, verify_witness
from .finite.verdict import Verdict, VerdictKind
from .oracle.search import SearchResult, perturbation_search
from .utils.logging import configure_logging


logger = configure_logging()


def document(payload: Dict[str, Any], config: ExtremalityConfig) -> Dict[str, Any]:
    """Stamp an output payload with the schema version and tolerances."""

    return {"schema_version": SCHEMA_VERSION, **payload, "tolerances": tolerance_snapshot(config)}


def _finite_input(problem: ProblemFile) -> Tuple[CirclePolynomial, SpectrumSet, int]:
    """Polynomial and spectrum in normalised coordinates, with the shift."""

    p = problem.polynomial()
    if problem.members is None:
        return p, problem.spectrum_set(), 0
    spectrum, shift = normalize_finite(problem.members)
    return CirclePolynomial(p.coeffs[shift:]), spectrum, shift


def classify_problem(problem: ProblemFile, config: ExtremalityConfig) -> Verdict:
    if problem.is_cofinite:
        boundary = problem.boundary(config.cofinite.grid_log2)
        return classify_cofinite(
            boundary, problem.spectrum_set(), config, override=problem.options.override
        )
    if problem.members is not None:
        return classify_members(problem.polynomial(), problem.members, config)
    return classify(problem.polynomial(), problem.spectrum_set(), config)


def witness_problem(problem: ProblemFile, config: ExtremalityConfig) -> Verdict:
    """Like :func:`classify_problem` but refuses inputs that admit no witness."""

    verdict = classify_problem(problem, config)
    if verdict.kind is VerdictKind.MONOMIAL or verdict.kind is VerdictKind.EXTREME:
        if problem.is_cofinite:
            raise DivergentLogIntegralError()
        raise FullRankError()
    return verdict


def verify_document(payload: Dict[str, Any], config: ExtremalityConfig) -> Dict[str, Any]:
    """Re-check the witness stored in a classify/witness output document."""

    if payload.get("verdict") != VerdictKind.NON_EXTREME.value or "witness" not in payload:
        raise ProblemFileError("document carries no witness to verify")
    try:
        spectrum = SpectrumSet.from_dict(payload["lambda"])
        p = polynomial_from_json(payload["p"])
        q = polynomial_from_json(payload["witness"])
    except KeyError as exc:
        raise ProblemFileError(f"document is missing {exc}") from exc

    if not spectrum.is_finite:
        return _verify_on_grid(p, q, spectrum, payload, config)

    shift = int(payload.get("shift", 0))
    p = CirclePolynomial(p.coeffs[shift:])
    q = CirclePolynomial(q.coeffs[shift:])
    certificate = verify_witness(p, q, spectrum, config.witness)
    return {"status": "verified", "certificate": certificate}


def _verify_on_grid(
    p: CirclePolynomial,
    q: CirclePolynomial,
    spectrum: SpectrumSet,
    payload: Dict[str, Any],
    config: ExtremalityConfig,
) -> Dict[str, Any]:
    stored = payload.get("certificate", {})
    grid_log2 = int(stored.get("grid_log2", config.cofinite.grid_log2))
    offset = float(stored.get("grid_offset", 0.0))
    n = 2**grid_log2
    f = analytic_grid(p.coeffs, n, offset)
    w = analytic_grid(q.coeffs, n, offset)
    sup_plus = float(np.max(np.abs(f + w)))
    sup_minus = float(np.max(np.abs(f - w)))
    gap_residual = max((abs(q.coefficient(k)) for k in spectrum.gaps), default=0.0)
    bound = 1.0 + config.cofinite.witness_tol
    if sup_plus > bound:
        raise CertificateError("grid sup |f+w|", sup_plus, bound)
    if sup_minus > bound:
        raise CertificateError("grid sup |f-w|", sup_minus, bound)
    if gap_residual > config.cofinite.witness_tol:
        raise CertificateError("gap coefficients |ŵ(k_ν)|", gap_residual, config.cofinite.witness_tol)
    return {
        "status": "verified",
        "certificate": {
            "grid_log2": grid_log2,
            "grid_offset": offset,
            "sup_plus": sup_plus,
            "sup_minus": sup_minus,
            "gap_residual": gap_residual,
        },
    }


def oracle_problem(problem: ProblemFile, config: ExtremalityConfig) -> Tuple[Dict[str, Any], SearchResult]:
    """Run the perturbation search and compare with the rank test."""

    if problem.is_cofinite:
        raise ProblemFileError("the perturbation search needs a finite spectrum")
    p, spectrum, shift = _finite_input(problem)
    p = normalize_to_unit(p, config.norm)
    result = perturbation_search(p, spectrum, config.search, config.norm)
    verdict = classify(p, spectrum, config)

    agreement = not (result.found and verdict.is_extreme)
    if not agreement:
        logger.error("perturbation search contradicts an extreme verdict")
    payload = {
        "search": result.to_dict(),
        "verdict": verdict.kind.value,
        "agreement": agreement,
        "shift": shift,
    }
    return payload, result


def plot_frame(problem: ProblemFile, config: ExtremalityConfig, grid: int | None = None) -> pd.DataFrame:
    """Columns t, abs_p, tau of the unit-normalised polynomial on a uniform grid."""

    n = grid or config.search.circle_grid
    p = normalize_to_unit(problem.polynomial(), config.norm)
    t = 2.0 * np.pi * np.arange(n) / n
    values = grid_values(p, n)
    tau = np.asarray(autocorrelation(p).tau(t), dtype=float)
    return pd.DataFrame({"t": t, "abs_p": np.abs(values), "tau": tau})


__all__ = [
    "classify_problem",
    "document",
    "oracle_problem",
    "plot_frame",
    "verify_document",
    "witness_problem",
]
