"""HTTP surface: endpoints, error mapping, artifact byte-stability."""

import json
import math

import pytest
from fastapi.testclient import TestClient

from chsh_tradeoff.qcore import haar_random_state
from chsh_tradeoff.service.app import create_app
from chsh_tradeoff.stateio import state_to_dict


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _state_000():
    return {"n": 3, "amplitudes": [[1.0, 0.0]] + [[0.0, 0.0]] * 7}


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_analyze_product_state(client):
    resp = client.post("/analyze", json={"state": _state_000(), "config": {"k": 1}})
    assert resp.status_code == 200
    body = json.loads(resp.text)
    assert body["kind"] == "tradeoff"
    assert body["report"]["total"] == pytest.approx(12.0, abs=1e-10)
    assert body["report"]["class"]["tag"] == "ProductABC"
    assert body["config"] == {"k": 1}
    assert body["format_version"] == "1"


def test_analyze_csv_format(client):
    resp = client.post("/analyze", json={"state": _state_000(), "format": "csv"})
    assert resp.status_code == 200
    assert "name,value" in resp.text
    assert "total,12" in resp.text
    assert "class,ProductABC" in resp.text


def test_analyze_four_qubits(client):
    state = {"n": 4, "amplitudes": [[1.0, 0.0]] + [[0.0, 0.0]] * 15}
    body = json.loads(client.post("/analyze", json={"state": state}).text)
    assert body["kind"] == "conjecture"
    assert body["report"]["total"] == pytest.approx(3.0, abs=1e-10)
    assert body["report"]["per_pair"]["AD"] == pytest.approx(1.0, abs=1e-10)


def test_analyze_five_and_six_qubits(client):
    for n in (5, 6):
        state = {"n": n, "amplitudes": [[1.0, 0.0]] + [[0.0, 0.0]] * (2 ** n - 1)}
        body = json.loads(client.post("/analyze", json={"state": state}).text)
        assert body["kind"] == "conjecture"
        assert body["report"]["total"] == pytest.approx(n - 1.0, abs=1e-10)
        assert len(body["report"]["per_pair"]) == n - 1


def test_analyze_rejects_two_qubits(client):
    state = {"n": 2, "amplitudes": [[1.0, 0.0]] + [[0.0, 0.0]] * 3}
    resp = client.post("/analyze", json={"state": state})
    assert resp.status_code == 400
    assert resp.json()["detail"]["code"] == "parse"


def test_analyze_normalization_error(client):
    state = {"n": 1, "amplitudes": [[1.2, 0.0], [0.0, 0.0]]}
    resp = client.post("/analyze", json={"state": state})
    assert resp.status_code == 400
    assert resp.json()["detail"]["code"] == "normalization"


def test_analyze_shape_error_is_422(client):
    resp = client.post("/analyze", json={"state": {"n": 3}})
    assert resp.status_code == 422


def test_analyze_byte_identical(client):
    req = {"state": state_to_dict(haar_random_state(3, 4)), "config": {"seed": 4}}
    a = client.post("/analyze", json=req).text
    b = client.post("/analyze", json=req).text
    assert a == b


def test_sweep_endpoint(client):
    req = {"family": "biseparable", "grid": "delta=0.05:0.78:6", "config": {"x": 2}}
    resp = client.post("/sweep", json=req)
    assert resp.status_code == 200
    lines = resp.text.splitlines()
    assert lines[0] == "# format_version: 1"
    assert sum(1 for ln in lines if ln.startswith("biseparable,")) == 6
    assert resp.text == client.post("/sweep", json=req).text


def test_sweep_bad_grid(client):
    resp = client.post("/sweep", json={"family": "w", "grid": "a=0:1:3"})
    assert resp.status_code == 400
    assert resp.json()["detail"]["field"] == "grid"


def test_search_endpoint_and_determinism(client):
    req = {"n": 4, "samples": 25, "restarts": 1, "seed": 17, "config": {"s": 17}}
    resp = client.post("/search", json=req)
    assert resp.status_code == 200
    body = json.loads(resp.text)
    assert body["violation_found"] is False
    assert body["best_total"] <= 3.0 + 1e-9
    assert len(body["histogram"]) == 80
    assert body["best_state"]["n"] == 4
    assert resp.text == client.post("/search", json=req).text


def test_search_with_warm_start(client):
    ghz = {"n": 4, "amplitudes": [[math.cos(math.pi / 4), 0.0]] + [[0.0, 0.0]] * 14
           + [[math.sin(math.pi / 4), 0.0]]}
    req = {"n": 4, "samples": 3, "restarts": 1, "seed": 2, "warm_starts": [ghz]}
    body = json.loads(client.post("/search", json=req).text)
    assert body["best_total"] == pytest.approx(3.0, abs=1e-9)


def test_random_endpoint(client):
    req = {"n": 3, "count": 4, "seed": 100, "config": {"c": 4}}
    resp = client.post("/random", json=req)
    body = json.loads(resp.text)
    assert len(body["states"]) == 4
    # per-sample seed policy: state i comes from seed + i
    want = state_to_dict(haar_random_state(3, 102))
    assert body["states"][2] == want
    assert resp.text == client.post("/random", json=req).text


def test_verify_endpoint_quick_suite(client):
    resp = client.post("/verify", json={"suite": "theorem1"})
    body = json.loads(resp.text)
    assert body["passed"] is True
    assert body["suites"][0]["suite"] == "theorem1"
    assert all(c["passed"] for c in body["suites"][0]["checks"])


def test_verify_unknown_suite(client):
    resp = client.post("/verify", json={"suite": "bogus"})
    assert resp.status_code == 400


def test_analyze_family_record(client):
    record = {"family": "w", "a": 1 / 3, "b": 1 / 3, "c": 1 / 3}
    body = json.loads(client.post("/analyze", json={"state": record}).text)
    assert body["report"]["total"] == pytest.approx(32.0 / 3.0, abs=1e-8)
    assert body["report"]["closed_form_total"] == pytest.approx(32.0 / 3.0, abs=1e-12)
    assert body["report"]["class"]["tag"] == "W"


def test_analyze_family_record_bad_params(client):
    record = {"family": "ghz", "delta": 9.0, "alpha": 1.0, "beta": 1.0,
              "gamma": 1.0, "phi": 1.0}
    resp = client.post("/analyze", json={"state": record})
    assert resp.status_code == 400
    assert resp.json()["detail"]["code"] == "parse"
