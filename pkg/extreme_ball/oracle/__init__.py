"""Independent brute-force checks of extremality verdicts."""

from .search import (
    MidpointCheck,
    SearchResult,
    grid_midpoint_check,
    midpoint_check,
    perturbation_search,
    quadratic_slack,
)

__all__ = [
    "MidpointCheck",
    "SearchResult",
    "grid_midpoint_check",
    "midpoint_check",
    "perturbation_search",
    "quadratic_slack",
]
