import json
import shutil
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from extreme_ball.cli import main


PROBLEMS = Path(__file__).resolve().parents[1] / "problems"


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_extreme_golden_file(capsys):
    code, out, _ = _run(capsys, "classify", str(PROBLEMS / "p_hat.json"))
    payload = json.loads(out)

    assert code == 0
    assert payload["verdict"] == "extreme"
    assert payload["schema_version"] == 1
    assert payload["tolerances"]["rank"]["tol_rank"] == 1e-9


def test_classify_then_verify_round_trip(capsys, tmp_path):
    target = tmp_path / "half_sum.out.json"
    code, _, _ = _run(capsys, "classify", str(PROBLEMS / "half_sum.json"), "--out", str(target))
    payload = json.loads(target.read_text())

    assert code == 0
    assert payload["verdict"] == "non_extreme"
    assert "witness" in payload

    code, out, _ = _run(capsys, "verify", str(target))
    assert code == 0
    assert json.loads(out)["status"] == "verified"


def test_cofinite_classify_then_verify(capsys, tmp_path):
    target = tmp_path / "cofinite.out.json"
    code, _, _ = _run(capsys, "witness", str(PROBLEMS / "cofinite_half_sum.json"), "--out", str(target))

    assert code == 0
    code, out, _ = _run(capsys, "verify", str(target))
    assert code == 0
    assert json.loads(out)["certificate"]["gap_residual"] <= 1e-7


def test_gap_violation_exits_with_error(capsys):
    code, out, err = _run(capsys, "classify", str(PROBLEMS / "gap_violation.json"))

    assert code == 1
    assert out == ""
    assert "spectrum violation" in err


def test_malformed_json_reports_line(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"lambda": {"kind": "finite"\n "n": 1}}')

    code, _, err = _run(capsys, "classify", str(broken))

    assert code == 1
    assert "line 2" in err


def test_witness_of_extreme_point_fails(capsys):
    code, _, err = _run(capsys, "witness", str(PROBLEMS / "p_hat.json"))

    assert code == 1
    assert "full rank" in err


def test_blaschke_witness_is_refused(capsys):
    code, _, err = _run(capsys, "witness", str(PROBLEMS / "blaschke.json"))

    assert code == 1
    assert "log-integral diverges" in err


def test_tolerance_flags_are_embedded(capsys):
    code, out, _ = _run(capsys, "classify", str(PROBLEMS / "half_sum.json"), "--tol-rank", "1e-8", "--slack", "1e-10")
    tolerances = json.loads(out)["tolerances"]

    assert code == 0
    assert tolerances["rank"]["tol_rank"] == 1e-8
    assert tolerances["search"]["slack"] == 1e-10


def test_plot_writes_grid_rows(capsys, tmp_path):
    target = tmp_path / "data.csv"
    code, _, _ = _run(capsys, "plot", str(PROBLEMS / "p_hat.json"), "--out", str(target), "--grid", "512")

    frame = pd.read_csv(target)
    assert code == 0
    assert target.read_text().splitlines()[0] == "t,abs_p,tau"
    assert len(frame) == 512
    assert frame["tau"].min() >= -1e-10
    assert frame["abs_p"].max() == pytest.approx(1.0, abs=1e-6)


def test_oracle_writes_transcript(capsys, tmp_path):
    transcript = tmp_path / "trials.jsonl"
    code, out, _ = _run(
        capsys,
        "oracle",
        str(PROBLEMS / "p_hat.json"),
        "--trials",
        "30",
        "--seed",
        "4",
        "--transcript",
        str(transcript),
    )
    payload = json.loads(out)
    lines = transcript.read_text().splitlines()

    assert code == 0
    assert payload["agreement"]
    assert payload["search"]["found"] is False
    assert len(lines) == 30
    assert set(json.loads(lines[0])) == {"trial", "direction", "scale", "grid_scale"}


def test_scan_summarises_directory(capsys, tmp_path):
    for name in ("half_sum.json", "p_hat.json", "gapped_half_sum.json"):
        shutil.copy(PROBLEMS / name, tmp_path / name)
    target = tmp_path / "summary.csv"

    code, _, _ = _run(capsys, "scan", str(tmp_path), "--out", str(target))
    frame = pd.read_csv(target)

    assert code == 0
    assert dict(zip(frame["file"], frame["verdict"])) == {
        "gapped_half_sum.json": "non_extreme",
        "half_sum.json": "non_extreme",
        "p_hat.json": "extreme",
    }


def test_scan_reports_failures(capsys, tmp_path):
    shutil.copy(PROBLEMS / "gap_violation.json", tmp_path / "gap_violation.json")

    code, out, _ = _run(capsys, "scan", str(tmp_path))
    records = json.loads(out)["files"]

    assert code == 1
    assert records[0]["status"] == "failed"
    assert "spectrum violation" in records[0]["error"]


def _grid_problem(tmp_path, samples, **options):
    path = tmp_path / "grid.json"
    path.write_text(
        json.dumps(
            {
                "lambda": {"kind": "cofinite", "gaps": []},
                "function": {"type": "grid", "samples": [[v.real, v.imag] for v in samples]},
                "options": options,
            }
        )
    )
    return path


def test_undecided_sampled_input_exits_indeterminate(capsys, tmp_path):
    t = 2 * np.pi * np.arange(256) / 256
    path = _grid_problem(tmp_path, 0.5 + 0.5 * np.exp(1j * t))

    code, out, _ = _run(capsys, "classify", str(path))

    assert code == 2
    assert json.loads(out)["verdict"] == "indeterminate"


def test_unimodular_sampled_input_with_override_reports_error(capsys, tmp_path):
    path = _grid_problem(tmp_path, np.exp(2j * np.pi * np.arange(64) / 64), override=True)

    code, out, err = _run(capsys, "classify", str(path))

    assert code == 1
    assert out == ""
    assert "error: every sample of the modulus is clamped" in err
