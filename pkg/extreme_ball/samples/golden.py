"""Golden problems with hand-derivable verdicts."""

from __future__ import annotations

import math
from typing import Any, Dict

import pandas as pd

from ..config import DEFAULT_CONFIG, ExtremalityConfig
from ..data.problem import problem_from_dict
from ..pipeline import classify_problem


ROOT2 = math.sqrt(2.0)

GOLDEN: Dict[str, Dict[str, Any]] = {
    "monomial": {
        "problem": {"lambda": {"kind": "finite", "n": 1, "gaps": []}, "function": [[0.0, 0.0], [1.0, 0.0]]},
        "expected": "monomial",
    },
    "half_sum": {
        "problem": {"lambda": {"kind": "finite", "n": 1, "gaps": []}, "function": [[0.5, 0.0], [0.5, 0.0]]},
        "expected": "non_extreme",
    },
    "gapped_half_sum": {
        "problem": {
            "lambda": {"kind": "finite", "n": 2, "gaps": [1]},
            "function": [[0.5, 0.0], [0.0, 0.0], [0.5, 0.0]],
        },
        "expected": "non_extreme",
    },
    "p_star": {
        "problem": {
            "lambda": {"kind": "finite", "n": 2, "gaps": []},
            "function": [[(1.0 + ROOT2) / 4.0, 0.0], [0.5, 0.0], [(1.0 - ROOT2) / 4.0, 0.0]],
        },
        "expected": "extreme",
    },
    "half_sum_squared": {
        "problem": {
            "lambda": {"kind": "finite", "n": 2, "gaps": []},
            "function": [[0.25, 0.0], [0.5, 0.0], [0.25, 0.0]],
        },
        "expected": "non_extreme",
    },
    "shifted_members": {
        "problem": {"lambda": {"kind": "finite", "members": [2, 3]}, "function": [[0, 0], [0, 0], [0.5, 0], [0.5, 0]]},
        "expected": "non_extreme",
    },
    "cofinite_half_sum": {
        "problem": {
            "lambda": {"kind": "cofinite", "gaps": [3]},
            "function": [[0.5, 0.0], [0.5, 0.0]],
            "grid_log2": 14,
        },
        "expected": "non_extreme",
    },
    "blaschke": {
        "problem": {
            "lambda": {"kind": "cofinite", "gaps": []},
            "function": {"type": "blaschke", "zeros": [[0.5, 0.0]]},
        },
        "expected": "extreme",
    },
}


def run_demo(config: ExtremalityConfig | None = None) -> pd.DataFrame:
    """Classify each golden problem and return a summary frame."""

    config = config or DEFAULT_CONFIG
    rows = []
    for name, case in GOLDEN.items():
        problem = problem_from_dict(case["problem"])
        verdict = classify_problem(problem, problem.config(config))
        rows.append(
            {
                "problem": name,
                "expected": case["expected"],
                "verdict": verdict.kind.value,
                "epsilon": verdict.epsilon,
                "rank": verdict.matrix.get("rank"),
                "cols": verdict.matrix.get("cols"),
            }
        )
    frame = pd.DataFrame.from_records(rows)
    frame["agrees"] = frame["expected"] == frame["verdict"]
    return frame


if __name__ == "__main__":  # pragma: no cover
    summary = run_demo()
    print(summary.to_string(index=False))
    print(f"{int(summary['agrees'].sum())}/{len(summary)} verdicts as expected")
