from __future__ import annotations

import datetime as dt
import uuid
from typing import Any, Callable, Dict, List, Optional

from ..config import DEFAULT_CONFIG, ExtremalityConfig, apply_config_update, config_to_dict
from ..data.problem import ProblemFile, merge_shortcuts, problem_from_dict
from ..pipeline import classify_problem, document, oracle_problem, verify_document, witness_problem
from ..utils.logging import configure_logging
from ..utils.serialise import to_jsonable


logger = configure_logging()

HISTORY_LIMIT = 50


class ExtremalityService:
    """High level façade over classification, witnesses and the oracle."""

    def __init__(self, config: ExtremalityConfig | None = None) -> None:
        self._config: ExtremalityConfig = config or DEFAULT_CONFIG
        self._history: List[Dict[str, Any]] = []

    # ------------------------------------------------------------------
    # Configuration management
    # ------------------------------------------------------------------
    def get_config(self) -> Dict[str, Any]:
        """Return the active configuration as a serialisable dictionary."""

        return config_to_dict(self._config)

    def update_config(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        """Persist configuration changes and return the updated settings."""

        self._config = apply_config_update(self._config, payload)
        return self.get_config()

    # ------------------------------------------------------------------
    # Runs
    # ------------------------------------------------------------------
    def classify(self, problem: Dict[str, Any] | ProblemFile, notes: str | None = None) -> Dict[str, Any]:
        return self._record(
            "classify",
            problem,
            lambda parsed, config: document(classify_problem(parsed, config).to_dict(), config),
            notes=notes,
        )

    def witness(self, problem: Dict[str, Any] | ProblemFile, notes: str | None = None) -> Dict[str, Any]:
        return self._record(
            "witness",
            problem,
            lambda parsed, config: document(witness_problem(parsed, config).to_dict(), config),
            notes=notes,
        )

    def oracle(
        self,
        problem: Dict[str, Any] | ProblemFile,
        trials: int | None = None,
        seed: int | None = None,
        notes: str | None = None,
    ) -> Dict[str, Any]:
        def run(parsed: ProblemFile, config: ExtremalityConfig) -> Dict[str, Any]:
            config = apply_config_update(config, merge_shortcuts({}, trials=trials, seed=seed))
            payload, result = oracle_problem(parsed, config)
            payload["transcript"] = [to_jsonable(record) for record in result.transcript]
            return document(payload, config)

        return self._record("oracle", problem, run, notes=notes)

    def verify(self, record: Dict[str, Any], notes: str | None = None) -> Dict[str, Any]:
        """Re-check a classify/witness document, or a run record holding one."""

        payload = record.get("result", record)
        return self._run("verify", lambda: document(verify_document(payload, self._config), self._config), notes)

    def list_runs(self, limit: int | None = None) -> List[Dict[str, Any]]:
        """Return the most recent runs."""

        if limit is None:
            return list(self._history)
        return list(self._history[:limit])

    def latest_run(self) -> Dict[str, Any] | None:
        """Return the most recent run if available."""

        return self._history[0] if self._history else None

    def get_run(self, run_id: str) -> Dict[str, Any] | None:
        for run in self._history:
            if run["id"] == run_id:
                return run
        return None

    # ------------------------------------------------------------------
    # Dashboard helpers
    # ------------------------------------------------------------------
    def get_dashboard(self) -> Dict[str, Any]:
        """Return a combined payload with recent runs and verdict counts."""

        verdicts: Dict[str, int] = {}
        for run in self._history:
            verdict = (run.get("result") or {}).get("verdict")
            if verdict:
                verdicts[verdict] = verdicts.get(verdict, 0) + 1
        return {
            "config": self.get_config(),
            "latest_run": self.latest_run(),
            "runs": self.list_runs(limit=10),
            "metrics": {
                "total_runs": len(self._history),
                "failed_runs": sum(1 for run in self._history if run["status"] == "failed"),
                "verdicts": verdicts,
            },
        }

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------
    def _record(
        self,
        kind: str,
        problem: Dict[str, Any] | ProblemFile,
        action: Callable[[ProblemFile, ExtremalityConfig], Dict[str, Any]],
        notes: str | None,
    ) -> Dict[str, Any]:
        def run() -> Dict[str, Any]:
            parsed = problem if isinstance(problem, ProblemFile) else problem_from_dict(problem)
            return action(parsed, parsed.config(self._config))

        return self._run(kind, run, notes)

    def _run(self, kind: str, action: Callable[[], Dict[str, Any]], notes: Optional[str]) -> Dict[str, Any]:
        started = dt.datetime.now(dt.timezone.utc)
        record: Dict[str, Any] = {
            "id": str(uuid.uuid4()),
            "kind": kind,
            "timestamp": started.isoformat(),
            "status": "completed",
            "config_snapshot": self.get_config(),
        }
        if notes:
            record["notes"] = notes

        try:
            result = action()
        except Exception as exc:
            logger.exception("%s run failed: %s", kind, exc)
            record["status"] = "failed"
            record["error"] = str(exc)
        else:
            record["result"] = to_jsonable(result)

        record["duration"] = (dt.datetime.now(dt.timezone.utc) - started).total_seconds()
        self._history.insert(0, record)
        self._history = self._history[:HISTORY_LIMIT]
        return record
