"""HTTP service: endpoint contracts, schema validation, fault handling."""

import jsonschema
import pytest
from fastapi.testclient import TestClient

from syrec.service import RESPONSE_SCHEMAS, SCHEMA_VERSION, create_app

from conftest import ALU_SOURCE


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=True)


def check_schema(kind: str, payload: dict) -> None:
    jsonschema.validate(payload, RESPONSE_SCHEMAS[kind])


def test_health(client):
    response = client.get("/api/health")
    assert response.status_code == 200
    body = response.json()
    assert body["ok"] is True
    check_schema("health", body)


def test_parse_ok(client):
    response = client.post("/api/parse", json={"source": ALU_SOURCE})
    assert response.status_code == 200
    body = response.json()
    assert body["ok"] and body["schemaVersion"] == SCHEMA_VERSION
    check_schema("parse", body)


def test_parse_syntax_error_is_400(client):
    response = client.post("/api/parse", json={"source": "module"})
    assert response.status_code == 400
    body = response.json()
    assert not body["ok"] and body["diagnostics"]
    assert body["diagnostics"][0]["severity"] == "error"
    check_schema("parse", body)


def test_synthesize_line_aware(client):
    response = client.post("/api/synthesize", json={"source": ALU_SOURCE, "mode": "line-aware"})
    assert response.status_code == 200
    body = response.json()
    check_schema("synthesize", body)
    assert body["stats"]["lines"] == 7
    assert len(body["lines"]) == 7
    assert len(body["gates"]) == body["stats"]["gates"]
    assert ".version 2.0" in body["real"]


def test_synthesize_cost_aware(client):
    response = client.post("/api/synthesize", json={"source": ALU_SOURCE, "mode": "cost-aware"})
    body = response.json()
    check_schema("synthesize", body)
    assert body["stats"]["lines"] == 11
    assert body["stats"]["constants"] == 4


def test_synthesize_bad_mode_is_400(client):
    response = client.post("/api/synthesize", json={"source": ALU_SOURCE, "mode": "fast"})
    assert response.status_code == 400
    check_schema("synthesize", response.json())


def test_simulate_circuit(client):
    response = client.post("/api/simulate", json={
        "source": ALU_SOURCE, "mode": "line-aware",
        "inputs": {"op": 0, "x1": 1, "x2": 2}})
    assert response.status_code == 200
    body = response.json()
    check_schema("simulate", body)
    assert body["outputs"] == {"x0": 3}


def test_simulate_with_oracle(client):
    response = client.post("/api/simulate", json={
        "source": ALU_SOURCE, "mode": "cost-aware",
        "inputs": {"op": 1, "x1": 3, "x2": 1}, "oracle": True})
    body = response.json()
    check_schema("simulate", body)
    assert body["outputs"] == {"x0": 0}
    assert body["oracle"]["match"] is True


def test_simulate_missing_input_is_400(client):
    response = client.post("/api/simulate", json={
        "source": ALU_SOURCE, "mode": "line-aware", "inputs": {"op": 1}})
    assert response.status_code == 400
    body = response.json()
    assert "unassigned input" in body["diagnostics"][0]["message"]


def test_cost_report(client):
    response = client.post("/api/cost", json={"source": ALU_SOURCE, "mode": "cost-aware"})
    body = response.json()
    check_schema("cost", body)
    assert body["report"]["lines"] == 11


def test_malformed_json_is_400(client):
    response = client.post("/api/parse", content=b"{not json",
                           headers={"content-type": "application/json"})
    assert response.status_code == 400


def test_missing_field_is_400(client):
    response = client.post("/api/synthesize", json={"source": ALU_SOURCE})
    assert response.status_code == 400


def test_oversized_source_is_413(client):
    big = "// padding\n" * 120_000   # > 1 MiB
    response = client.post("/api/parse", json={"source": big})
    assert response.status_code == 413


def test_service_is_stateless(client):
    requests = [
        ("/api/synthesize", {"source": ALU_SOURCE, "mode": "line-aware"}),
        ("/api/cost", {"source": ALU_SOURCE, "mode": "cost-aware"}),
        ("/api/synthesize", {"source": "module m(inout a(1)) ~= a", "mode": "cost-aware"}),
    ]
    first = [client.post(path, json=body).json() for path, body in requests]
    for path, body in reversed(requests):
        client.post(path, json=body)
    second = [client.post(path, json=body).json() for path, body in requests]
    assert first == second


def test_cli_and_api_emit_identical_real(client, tmp_path):
    from syrec.cli import main
    source_path = tmp_path / "alu.syrec"
    source_path.write_text(ALU_SOURCE, encoding="utf-8")
    out_path = tmp_path / "alu.real"
    assert main(["synth", str(source_path), "--mode", "line-aware", "-o", str(out_path)]) == 0
    api_real = client.post("/api/synthesize",
                           json={"source": ALU_SOURCE, "mode": "line-aware"}).json()["real"]
    assert out_path.read_text(encoding="utf-8") == api_real


def test_health_responds_during_heavy_synthesis():
    # against a real server: a long-running synthesis must not starve health
    import json
    import subprocess
    import sys
    import threading
    import time
    import urllib.request

    port = 8741
    base = f"http://127.0.0.1:{port}"
    server = subprocess.Popen(
        [sys.executable, "-m", "syrec.cli", "serve", "--port", str(port)],
        stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    try:
        for _ in range(100):
            try:
                with urllib.request.urlopen(f"{base}/api/health", timeout=1) as response:
                    if response.status == 200:
                        break
            except OSError:
                time.sleep(0.1)
        else:
            pytest.skip("service did not come up")

        heavy = ("module main(inout a(32))\n"
                 "    for $i = 1 to 3000 do\n"
                 "        a += $i\n"
                 "    rof")
        done = threading.Event()
        outcome: dict = {}

        def synthesize_heavy():
            body = json.dumps({"source": heavy, "mode": "line-aware"}).encode()
            request = urllib.request.Request(
                f"{base}/api/synthesize", data=body,
                headers={"content-type": "application/json"})
            with urllib.request.urlopen(request, timeout=120) as response:
                outcome["status"] = response.status
            done.set()

        worker = threading.Thread(target=synthesize_heavy)
        worker.start()
        quick_checks = 0
        while not done.is_set() and quick_checks < 500:
            started = time.monotonic()
            with urllib.request.urlopen(f"{base}/api/health", timeout=5) as response:
                assert response.status == 200
            if time.monotonic() - started < 1.0:
                quick_checks += 1
        worker.join(timeout=120)
        assert outcome.get("status") == 200
        assert quick_checks > 0, "health checks never completed during synthesis"
    finally:
        server.terminate()
        server.wait(timeout=10)


def test_root_serves_placeholder_without_static_dir(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "playground" in response.text


def test_root_serves_static_dir(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>playground shell</body></html>")
    local = TestClient(create_app(static_dir=str(tmp_path)))
    response = local.get("/")
    assert response.status_code == 200
    assert "playground shell" in response.text
