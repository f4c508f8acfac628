"""Batch classification of a directory of problem files."""

from __future__ import annotations

import datetime as dt
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from ..config import ExtremalityConfig, apply_config_update
from ..data.problem import load_problem
from ..finite.verdict import VerdictKind
from ..pipeline import classify_problem
from ..utils.logging import configure_logging


logger = configure_logging()

SUMMARY_COLUMNS = ["file", "verdict", "rank", "cols", "mu", "epsilon", "status", "error", "duration"]


@dataclass
class BatchResult:
    records: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def frame(self) -> pd.DataFrame:
        return pd.DataFrame.from_records(self.records, columns=SUMMARY_COLUMNS)

    @property
    def failed(self) -> int:
        return sum(1 for record in self.records if record["status"] == "failed")

    @property
    def indeterminate(self) -> int:
        return sum(1 for record in self.records if record["verdict"] == VerdictKind.INDETERMINATE.value)

    def counts(self) -> Dict[str, int]:
        frame = self.frame
        if frame.empty:
            return {}
        return {str(key): int(value) for key, value in frame["verdict"].fillna("failed").value_counts().items()}

    def to_csv(self, target: str | Path) -> None:
        self.frame.to_csv(target, index=False)


class BatchRunner:
    """Classify every matching file of a directory.

    Files are independent; with ``workers > 1`` they are classified on a
    thread pool and the records are returned in sorted file order.
    """

    def __init__(
        self,
        config: ExtremalityConfig,
        overrides: Optional[Dict[str, Any]] = None,
        workers: int = 1,
    ) -> None:
        self.config = config
        self.overrides = dict(overrides or {})
        self.workers = max(1, int(workers))

    def run_file(self, path: Path) -> Dict[str, Any]:
        started = dt.datetime.now(dt.timezone.utc)
        record: Dict[str, Any] = {
            "file": path.name,
            "verdict": None,
            "rank": None,
            "cols": None,
            "mu": None,
            "epsilon": None,
            "status": "completed",
            "error": None,
        }
        try:
            problem = load_problem(path)
            config = apply_config_update(problem.config(self.config), self.overrides)
            verdict = classify_problem(problem, config)
        except Exception as exc:
            logger.exception("classification of %s failed: %s", path, exc)
            record["status"] = "failed"
            record["error"] = str(exc)
        else:
            record["verdict"] = verdict.kind.value
            record["rank"] = verdict.matrix.get("rank")
            record["cols"] = verdict.matrix.get("cols")
            if verdict.contacts is not None:
                record["mu"] = verdict.contacts.get("mu")
            record["epsilon"] = verdict.epsilon
        record["duration"] = (dt.datetime.now(dt.timezone.utc) - started).total_seconds()
        return record

    def run(self, directory: str | Path, pattern: str = "*.json") -> BatchResult:
        directory = Path(directory)
        if not directory.is_dir():
            raise NotADirectoryError(str(directory))
        paths = sorted(directory.glob(pattern))
        logger.info("scanning %d files in %s", len(paths), directory)

        if self.workers == 1:
            records = [self.run_file(path) for path in paths]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                records = list(pool.map(self.run_file, paths))
        return BatchResult(records=records)
