"""Configuration objects for extreme-ball.

Every numerical tolerance of the pipeline lives here.  Verdicts depend on
these values, so each output embeds the configuration it was produced with
(see :func:`tolerance_snapshot`).  Sections are namespaced per module so that
one stage can be tuned without touching the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, is_dataclass
from typing import Any, Dict


@dataclass(slots=True)
class NormConfig:
    """Certified sup-norm computation on the circle."""

    root_radius_tol: float = 1e-6
    """Roots of the critical-point polynomial this close to |w| = 1 become candidates."""

    cluster_radius_tol: float = 1e-3
    """Looser radius accepted for roots that belong to multiple-root clusters."""

    grid_factor: int = 16
    """Fallback scan uses ``grid_factor * D`` points (at least 256)."""

    newton_tol: float = 1e-13
    newton_max_iter: int = 60
    argmax_window: float = 1e-12
    low_confidence_gap: float = 1e-9
    flat_tol: float = 1e-12


@dataclass(slots=True)
class ContactConfig:
    """Contact-set extraction."""

    tau_tol: float = 1e-10
    derivative_tol: float = 1e-8
    """Relative factor in ``tol_s = derivative_tol * sum_k |c_k| |k|^s``."""

    min_separation: float = 1e-6
    dead_band_low: float = 0.1
    dead_band_high: float = 10.0
    merge_radius: float = 1e-9


@dataclass(slots=True)
class RankConfig:
    """Numerical rank of the extremality matrix."""

    tol_rank: float = 1e-9
    borderline_low: float = 1e-11
    borderline_high: float = 1e-7


@dataclass(slots=True)
class WitnessConfig:
    """Witness scaling and certification in the finite case."""

    bisection_iterations: int = 24
    norm_slack: float = 1e-12
    vanishing_epsilon: float = 1e-10
    gap_residual: float = 1e-9
    derivative_residual: float = 1e-7
    certificate_grid: int = 4096
    certificate_norm_tol: float = 1e-9
    certificate_slack_tol: float = 1e-8


@dataclass(slots=True)
class CofiniteConfig:
    """Outer-function pipeline for cofinite spectra."""

    grid_log2: int = 14
    max_grid_log2: int = 16
    clamp: float = 1e-15
    modulus_tol: float = 2e-6
    tail_energy_tol: float = 1e-8
    kernel_residual: float = 1e-8
    witness_tol: float = 1e-7
    norm_tol: float = 1e-10
    divergence_heuristic: float = -50.0


@dataclass(slots=True)
class SearchConfig:
    """Brute-force perturbation search of the oracle."""

    seed: int = 0
    trials: int = 500
    delta_max: float = 1.0
    """Upper bound of the scale bisection."""

    circle_grid: int = 4096
    slack: float = 1e-9
    min_scale: float = 1e-6
    bisection_iterations: int = 40


@dataclass(slots=True)
class ExtremalityConfig:
    """Top-level configuration."""

    norm: NormConfig = field(default_factory=NormConfig)
    contact: ContactConfig = field(default_factory=ContactConfig)
    rank: RankConfig = field(default_factory=RankConfig)
    witness: WitnessConfig = field(default_factory=WitnessConfig)
    cofinite: CofiniteConfig = field(default_factory=CofiniteConfig)
    search: SearchConfig = field(default_factory=SearchConfig)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExtremalityConfig":
        """Create an :class:`ExtremalityConfig` from nested dictionaries.

        Unknown keys raise ``TypeError`` from the dataclass constructors.
        """

        norm_cfg = data.get("norm") or {}
        contact_cfg = data.get("contact") or {}
        rank_cfg = data.get("rank") or {}
        witness_cfg = data.get("witness") or {}
        cofinite_cfg = data.get("cofinite") or {}
        search_cfg = data.get("search") or {}
        unknown = set(data) - {"norm", "contact", "rank", "witness", "cofinite", "search"}
        if unknown:
            raise TypeError(f"unknown configuration sections: {sorted(unknown)}")

        return cls(
            norm=NormConfig(**norm_cfg),
            contact=ContactConfig(**contact_cfg),
            rank=RankConfig(**rank_cfg),
            witness=WitnessConfig(**witness_cfg),
            cofinite=CofiniteConfig(**cofinite_cfg),
            search=SearchConfig(**search_cfg),
        )


DEFAULT_CONFIG = ExtremalityConfig()
"""Defaults as stated per module."""


def _serialise_dataclass(value: Any) -> Any:
    """Recursively convert dataclass instances into serialisable dictionaries."""

    if is_dataclass(value):
        return {info.name: _serialise_dataclass(getattr(value, info.name)) for info in fields(value)}
    if isinstance(value, dict):
        return {key: _serialise_dataclass(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [_serialise_dataclass(item) for item in value]
    return value


def config_to_dict(config: ExtremalityConfig) -> Dict[str, Any]:
    """Convert an :class:`ExtremalityConfig` into a plain dictionary."""

    return _serialise_dataclass(config)


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    """Return a deep merged copy of ``base`` updated with ``update``."""

    merged = dict(base)
    for key, value in update.items():
        if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def apply_config_update(config: ExtremalityConfig, update: Dict[str, Any]) -> ExtremalityConfig:
    """Return a new configuration with ``update`` applied on top of ``config``."""

    if not update:
        return config

    merged = _deep_merge(config_to_dict(config), update)
    return ExtremalityConfig.from_dict(merged)


def tolerance_snapshot(config: ExtremalityConfig) -> Dict[str, Any]:
    """The tolerance set embedded in every output document."""

    return config_to_dict(config)
