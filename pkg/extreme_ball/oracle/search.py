"""Brute-force perturbation search.

Nothing here touches contact sets or the extremality matrix: a perturbation
is accepted only on the strength of sup-norm computations and a pointwise
check of 2|Re(p̄q)| + |q|^2 <= 1 - |p|^2.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..algebra.circle_poly import CirclePolynomial, grid_values, sup_norm
from ..algebra.spectrum import SpectrumSet
from ..config import NormConfig, SearchConfig
from ..utils.logging import configure_logging


logger = configure_logging()


@dataclass(frozen=True)
class MidpointCheck:
    """Outcome of ‖p ± q‖_∞ <= 1 + slack; truthy when it passes."""

    passed: bool
    norm_plus: float
    norm_minus: float
    null: bool = False

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    direction: str
    """Short SHA-256 digest of the direction coefficients."""

    scale: float
    grid_scale: float


@dataclass
class SearchResult:
    witness: Optional[CirclePolynomial]
    scale: float
    trials_run: int
    transcript: List[TrialRecord] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "found": self.found,
            "witness": None if self.witness is None else {"coeffs": self.witness.to_pairs()},
            "scale": self.scale,
            "trials_run": self.trials_run,
        }

    def transcript_jsonl(self) -> str:
        return "".join(json.dumps(asdict(record)) + "\n" for record in self.transcript)


def _norm_or_zero(p: CirclePolynomial, norm_config: NormConfig | None) -> float:
    if p.is_zero():
        return 0.0
    return sup_norm(p, norm_config).value


def midpoint_check(
    p: CirclePolynomial,
    q: CirclePolynomial,
    slack: float = 1e-9,
    norm_config: NormConfig | None = None,
) -> MidpointCheck:
    """Certified check that both p + q and p - q lie in the unit ball."""

    norm_plus = _norm_or_zero(p + q, norm_config)
    norm_minus = _norm_or_zero(p - q, norm_config)
    passed = max(norm_plus, norm_minus) <= 1.0 + slack
    return MidpointCheck(
        passed=passed,
        norm_plus=norm_plus,
        norm_minus=norm_minus,
        null=q.is_zero(),
    )


def quadratic_slack(p: CirclePolynomial, q: CirclePolynomial, grid: int = 4096) -> float:
    """max over the grid of 2|Re(p̄q)| + |q|^2 - (1 - |p|^2)."""

    pv = grid_values(p, grid)
    qv = grid_values(q, grid)
    lhs = 2.0 * np.abs(np.real(np.conj(pv) * qv)) + np.abs(qv) ** 2
    return float(np.max(lhs - (1.0 - np.abs(pv) ** 2)))


def grid_midpoint_check(
    p: CirclePolynomial,
    q: CirclePolynomial,
    grid: int = 4096,
    slack: float = 1e-9,
) -> bool:
    """max over the grid of |p ± q|^2 <= 1 + slack.

    Since max(|p+q|^2, |p-q|^2) = |p|^2 + 2|Re(p̄q)| + |q|^2 pointwise, this
    agrees with ``quadratic_slack(p, q, grid) <= slack`` up to rounding.
    """

    pv = grid_values(p, grid)
    qv = grid_values(q, grid)
    worst = np.maximum(np.abs(pv + qv) ** 2, np.abs(pv - qv) ** 2)
    return bool(np.max(worst) <= 1.0 + slack)


def _direction_digest(direction: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(direction).tobytes()).hexdigest()[:16]


def _grid_scale(pv: np.ndarray, tau: np.ndarray, qv: np.ndarray, cap: float) -> float:
    """Largest s with 2s|Re(p̄q)| + s^2|q|^2 <= τ at every grid point."""

    re = np.abs(np.real(np.conj(pv) * qv))
    quad = np.abs(qv) ** 2
    tau = np.maximum(tau, 0.0)
    # positive root of quad*s^2 + 2*re*s - tau, written without cancellation
    denom = re + np.sqrt(re**2 + quad * tau)
    with np.errstate(divide="ignore", invalid="ignore"):
        roots = np.where(denom > 0.0, tau / denom, np.inf)
    return float(min(cap, np.min(roots)))


def _certified_scale(
    p: CirclePolynomial,
    q: CirclePolynomial,
    upper: float,
    config: SearchConfig,
    norm_config: NormConfig | None,
) -> float:
    if midpoint_check(p, q * upper, config.slack, norm_config):
        return upper
    lo, hi = 0.0, upper
    for _ in range(config.bisection_iterations):
        mid = 0.5 * (lo + hi)
        if midpoint_check(p, q * mid, config.slack, norm_config):
            lo = mid
        else:
            hi = mid
    return lo


def perturbation_search(
    p: CirclePolynomial,
    spectrum: SpectrumSet,
    config: SearchConfig | None = None,
    norm_config: NormConfig | None = None,
) -> SearchResult:
    """Random-direction search for q with ‖p ± q‖_∞ <= 1 with q supported on Λ.

    Directions are standard complex Gaussians on the Λ-supported coefficients,
    normalised to the unit sphere.  Each direction gets a closed-form upper
    bound on its feasible scale from an offset grid with zero slack; survivors
    are scaled by bisection on the certified midpoint check.  The first
    direction feasible beyond ``min_scale`` is returned.
    """

    config = config or SearchConfig()
    members = np.array(spectrum.members())
    rng = np.random.default_rng(config.seed)

    grid = config.circle_grid
    t = 2.0 * np.pi * (np.arange(grid) + 0.5) / grid
    basis = np.exp(1j * np.multiply.outer(t, members))
    pv = grid_values(p, grid, offset=0.5)
    tau = 1.0 - np.abs(pv) ** 2

    transcript: List[TrialRecord] = []
    for trial in range(config.trials):
        gauss = rng.standard_normal(2 * members.size)
        direction = gauss[: members.size] + 1j * gauss[members.size :]
        direction /= np.linalg.norm(direction)
        digest = _direction_digest(direction)

        bound = _grid_scale(pv, tau, basis @ direction, config.delta_max)
        scale = 0.0
        if bound > config.min_scale:
            coeffs = np.zeros(int(members.max()) + 1, dtype=np.complex128)
            coeffs[members] = direction
            q = CirclePolynomial(coeffs)
            scale = _certified_scale(p, q, bound, config, norm_config)
        transcript.append(TrialRecord(trial=trial, direction=digest, scale=scale, grid_scale=bound))
        logger.debug("trial %d direction %s grid bound %.3e scale %.3e", trial, digest, bound, scale)

        if scale > config.min_scale:
            logger.info("perturbation found at trial %d with scale %.3e", trial, scale)
            return SearchResult(
                witness=q * scale,
                scale=scale,
                trials_run=trial + 1,
                transcript=transcript,
            )

    logger.info("no perturbation found in %d trials", config.trials)
    return SearchResult(witness=None, scale=0.0, trials_run=config.trials, transcript=transcript)
