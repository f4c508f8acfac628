import json

import pytest

from extreme_ball.batch import BatchRunner
from extreme_ball.config import DEFAULT_CONFIG


def _write(path, payload):
    path.write_text(json.dumps(payload))


def test_runner_collects_records_in_file_order(tmp_path):
    _write(tmp_path / "b.json", {"lambda": {"kind": "finite", "n": 1}, "function": [[0.5, 0.0], [0.5, 0.0]]})
    _write(tmp_path / "a.json", {"lambda": {"kind": "finite", "n": 1}, "function": [[0.0, 0.0], [1.0, 0.0]]})
    (tmp_path / "c.json").write_text("{not json")

    result = BatchRunner(DEFAULT_CONFIG, workers=2).run(tmp_path)
    frame = result.frame

    assert frame["file"].tolist() == ["a.json", "b.json", "c.json"]
    assert frame["verdict"].tolist()[:2] == ["monomial", "non_extreme"]
    assert result.failed == 1
    assert result.counts()["failed"] == 1
    assert frame.loc[1, "mu"] == 1
    assert frame.loc[1, "epsilon"] == pytest.approx(0.5, abs=1e-6)


def test_overrides_apply_to_every_file(tmp_path):
    _write(tmp_path / "p.json", {"lambda": {"kind": "finite", "n": 1}, "function": [[0.5, 0.0], [0.5, 0.0]]})

    result = BatchRunner(DEFAULT_CONFIG, overrides={"rank": {"tol_rank": 1e-6}}).run(tmp_path)

    assert result.records[0]["status"] == "completed"
    assert result.indeterminate == 0


def test_missing_directory():
    with pytest.raises(NotADirectoryError):
        BatchRunner(DEFAULT_CONFIG).run("does-not-exist")
