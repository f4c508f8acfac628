import pytest

from extreme_ball.server import ExtremalityService


HALF_SUM = {"lambda": {"kind": "finite", "n": 1, "gaps": []}, "function": [[0.5, 0.0], [0.5, 0.0]]}
P_STAR = {
    "lambda": {"kind": "finite", "n": 2, "gaps": []},
    "function": [[0.6035533905932737, 0.0], [0.5, 0.0], [-0.10355339059327379, 0.0]],
}


def test_service_updates_config():
    service = ExtremalityService()
    updated = service.update_config({"rank": {"tol_rank": 1e-8}})

    assert updated["rank"]["tol_rank"] == 1e-8


def test_classify_creates_history():
    service = ExtremalityService()
    record = service.classify(HALF_SUM, notes="unit-test")

    assert record["id"]
    assert record["status"] == "completed"
    assert record["result"]["verdict"] == "non_extreme"
    assert record["notes"] == "unit-test"
    assert service.latest_run()["id"] == record["id"]


def test_witness_record_verifies():
    service = ExtremalityService()
    record = service.witness(HALF_SUM)
    check = service.verify(record)

    assert check["status"] == "completed"
    assert check["result"]["status"] == "verified"


def test_failures_are_recorded():
    service = ExtremalityService()
    record = service.witness(P_STAR)

    assert record["status"] == "failed"
    assert "full rank" in record["error"]
    assert "config_snapshot" in record


def test_oracle_run_carries_transcript():
    service = ExtremalityService()
    record = service.oracle(P_STAR, trials=10, seed=1)

    assert record["status"] == "completed"
    assert record["result"]["agreement"] is True
    assert len(record["result"]["transcript"]) == 10


def test_history_is_capped():
    service = ExtremalityService()
    for _ in range(55):
        service.classify({"lambda": {"kind": "finite", "n": 1}, "function": [[1.0, 0.0]]})

    assert len(service.list_runs()) == 50
    assert len(service.list_runs(limit=5)) == 5


def test_dashboard_payload_contains_expected_keys():
    service = ExtremalityService()
    service.classify(HALF_SUM)
    service.classify(P_STAR)
    payload = service.get_dashboard()

    assert {"config", "latest_run", "runs", "metrics"} <= payload.keys()
    assert payload["metrics"]["verdicts"] == {"non_extreme": 1, "extreme": 1}


def test_api_routes():
    pytest.importorskip("fastapi")
    pytest.importorskip("httpx")
    from fastapi.testclient import TestClient

    from extreme_ball.server.api import app

    client = TestClient(app)
    assert client.get("/health").json() == {"status": "ok"}

    run = client.post("/classify", json={"problem": HALF_SUM}).json()["run"]
    assert run["result"]["verdict"] == "non_extreme"
    assert client.get(f"/runs/{run['id']}").json()["run"]["id"] == run["id"]
    assert client.get("/runs/unknown").status_code == 404

    verified = client.post("/verify", json={"document": run["result"]}).json()["run"]
    assert verified["result"]["status"] == "verified"

    config = client.put("/config", json={"rank": {"tol_rank": 1e-9}}).json()["config"]
    assert config["rank"]["tol_rank"] == 1e-9
