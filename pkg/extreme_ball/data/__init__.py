"""Problem ingestion."""

from .problem import (
    ProblemFile,
    load_problem,
    merge_shortcuts,
    parse_problem,
    polynomial_from_json,
    problem_from_dict,
)

__all__ = [
    "ProblemFile",
    "load_problem",
    "merge_shortcuts",
    "parse_problem",
    "polynomial_from_json",
    "problem_from_dict",
]
