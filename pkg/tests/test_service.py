import json
import threading

import pytest
from fastapi.testclient import TestClient

from ahpkit.banking_case import banking_model_with_weights
from ahpkit.documents import ModelDocument, model_hash, save_model
from ahpkit.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def banking_hash():
    return model_hash(ModelDocument(banking_model_with_weights()))


def _fig1_judgments(client, sid, node):
    for (i, j), v in {(0, 1): 3, (0, 2): 5, (1, 2): 7}.items():
        r = client.post(f"/sessions/{sid}/judgments", json={"node": node, "i": i, "j": j, "value": v})
        assert r.status_code == 200, r.text


class TestModels:
    def test_banking_model_is_preloaded(self, client):
        r = client.get("/models/banking")
        assert r.status_code == 200
        payload = json.loads(r.content)
        assert payload["format"] == "ahpkit/model"
        assert payload["hierarchy"]["root"] == "information_security_policy"

    def test_upload_returns_canonical_hash(self, client, small_hierarchy):
        data = save_model(small_hierarchy)
        r = client.post("/models", content=data)
        assert r.status_code == 201
        digest = r.json()["model_hash"]
        assert digest == model_hash(small_hierarchy)
        fetched = client.get(f"/models/{digest}")
        assert fetched.content == data

    def test_upload_is_idempotent(self, client, small_hierarchy):
        data = save_model(small_hierarchy)
        a = client.post("/models", content=data).json()["model_hash"]
        b = client.post("/models", content=data).json()["model_hash"]
        assert a == b

    def test_malformed_upload_is_422(self, client):
        r = client.post("/models", content=b"{broken")
        assert r.status_code == 422
        assert "malformed" in r.json()["detail"]

    def test_unknown_model_is_404(self, client):
        assert client.get("/models/deadbeef").status_code == 404
        assert client.get("/models/deadbeef/results").status_code == 404


class TestResults:
    def test_results_match_validated_numbers(self, client, banking_hash):
        r = client.get(f"/models/{banking_hash}/results")
        assert r.status_code == 200
        payload = json.loads(r.content)
        totals = payload["global_priorities"]["alternatives"]
        assert totals["confidentiality"] == pytest.approx(0.449, abs=0.002)
        assert totals["integrity"] == pytest.approx(0.346, abs=0.002)
        assert totals["availability"] == pytest.approx(0.206, abs=0.002)

    def test_results_idempotent(self, client, banking_hash):
        a = client.get(f"/models/{banking_hash}/results").content
        b = client.get(f"/models/{banking_hash}/results").content
        assert a == b

    def test_tabular_results(self, client, banking_hash):
        r = client.get(f"/models/{banking_hash}/results", params={"format": "tabular", "decimals": 3})
        assert r.status_code == 200
        assert "Management,0.112,0.054,0.011,0.177" in r.text

    def test_model_without_priorities_is_409(self, client, small_hierarchy):
        digest = client.post("/models", content=save_model(small_hierarchy)).json()["model_hash"]
        r = client.get(f"/models/{digest}/results")
        assert r.status_code == 409
        assert "local priorities" in r.json()["detail"]


class TestSensitivityEndpoint:
    def test_culture_to_zero(self, client, banking_hash):
        r = client.get(
            f"/models/{banking_hash}/sensitivity", params={"criterion": "culture", "weight": 0.0}
        )
        assert r.status_code == 200
        payload = r.json()
        assert payload["alternatives"]["confidentiality"] == pytest.approx(0.516, abs=0.001)
        assert payload["rank_changes"] == []

    def test_bad_criterion_is_409(self, client, banking_hash):
        r = client.get(
            f"/models/{banking_hash}/sensitivity", params={"criterion": "nope", "weight": 0.5}
        )
        assert r.status_code == 409


class TestSessions:
    def test_create_session_document(self, client, banking_hash):
        r = client.post("/sessions", json={"model_hash": banking_hash})
        assert r.status_code == 201
        payload = json.loads(r.content)
        assert payload["format"] == "ahpkit/session"
        assert payload["model_hash"] == banking_hash
        assert len(payload["pending"]) == 18
        assert payload["answered"] == []

    def test_session_for_unknown_model_is_404(self, client):
        assert client.post("/sessions", json={"model_hash": "nope"}).status_code == 404

    def test_next_comparison_uses_question_template(self, client, banking_hash):
        sid = json.loads(client.post("/sessions", json={"model_hash": banking_hash}).content)["session_id"]
        r = client.get(f"/sessions/{sid}/next")
        payload = r.json()
        assert payload["done"] is False
        assert payload["question"] == "How important is Management relative to Technology?"
        assert payload["remaining"] == 18
        assert (payload["i"], payload["j"]) == (0, 1)

    def test_verbal_judgment_stored_as_ratio(self, client, banking_hash):
        sid = json.loads(client.post("/sessions", json={"model_hash": banking_hash}).content)["session_id"]
        r = client.post(
            f"/sessions/{sid}/judgments",
            json={
                "node": "information_security_policy",
                "i": 0,
                "j": 1,
                "descriptor": "strong",
                "direction": "first_over_second",
            },
        )
        assert r.status_code == 200
        payload = r.json()
        assert payload["value"] == 5.0
        assert payload["reciprocal"] == pytest.approx(0.2)

    def test_off_scale_judgment_hints_allowed_values(self, client, banking_hash):
        sid = json.loads(client.post("/sessions", json={"model_hash": banking_hash}).content)["session_id"]
        r = client.post(
            f"/sessions/{sid}/judgments",
            json={"node": "information_security_policy", "i": 0, "j": 1, "value": 2.08},
        )
        assert r.status_code == 422
        assert "1..9" in r.json()["detail"]

    def test_bad_descriptor_is_422(self, client, banking_hash):
        sid = json.loads(client.post("/sessions", json={"model_hash": banking_hash}).content)["session_id"]
        r = client.post(
            f"/sessions/{sid}/judgments",
            json={"node": "information_security_policy", "i": 0, "j": 1, "descriptor": "mega"},
        )
        assert r.status_code == 422

    def test_unknown_session_is_404(self, client):
        assert client.get("/sessions/missing/status").status_code == 404
        assert client.get("/sessions/missing/next").status_code == 404
        assert client.post("/sessions/missing/judgments", json={"node": "x", "i": 0, "j": 1, "value": 1}).status_code == 404

    def test_status_reports_live_consistency(self, client, banking_hash):
        sid = json.loads(
            client.post("/sessions", json={"model_hash": banking_hash}).content
        )["session_id"]
        _fig1_judgments(client, sid, "culture")
        status = client.get(f"/sessions/{sid}/status").json()
        assert status["answered"] == 3
        assert status["total"] == 18
        culture = status["per_node"]["culture"]
        assert culture["consistency"]["consistent"] is False
        assert culture["consistency"]["cr"] == pytest.approx(0.201, abs=0.01)
        assert culture["consistency"]["worst_judgment"] is not None

    def test_incomplete_results_is_409(self, client, banking_hash):
        sid = json.loads(client.post("/sessions", json={"model_hash": banking_hash}).content)["session_id"]
        r = client.get(f"/sessions/{sid}/results")
        assert r.status_code == 409
        assert "unanswered" in r.json()["detail"]

    def test_full_session_produces_results(self, client, banking_hash):
        sid = json.loads(
            client.post("/sessions", json={"model_hash": banking_hash, "mode": "continuous"}).content
        )["session_id"]
        while True:
            nxt = client.get(f"/sessions/{sid}/next").json()
            if nxt["done"]:
                break
            r = client.post(
                f"/sessions/{sid}/judgments",
                json={"node": nxt["node"], "i": nxt["i"], "j": nxt["j"], "value": 1.0},
            )
            assert r.status_code == 200
        results = json.loads(
            client.get(f"/sessions/{sid}/results", params={"full_precision": True}).content
        )
        for score in results["global_priorities"]["alternatives"].values():
            assert score == pytest.approx(1 / 3, abs=1e-9)

    def test_last_write_wins_on_reanswer(self, client, banking_hash):
        sid = json.loads(client.post("/sessions", json={"model_hash": banking_hash}).content)["session_id"]
        node = "information_security_policy"
        client.post(f"/sessions/{sid}/judgments", json={"node": node, "i": 0, "j": 1, "value": 3})
        client.post(f"/sessions/{sid}/judgments", json={"node": node, "i": 0, "j": 1, "value": 7})
        session = json.loads(client.get(f"/sessions/{sid}").content)
        recorded = [e for e in session["answered"] if (e["i"], e["j"]) == (0, 1) and e["node"] == node]
        assert recorded == [{"node": node, "i": 0, "j": 1, "value": 7.0}]

    def test_concurrent_submissions_serialized(self, client, banking_hash):
        sid = json.loads(client.post("/sessions", json={"model_hash": banking_hash}).content)["session_id"]
        pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

        def submit(pair):
            client.post(
                f"/sessions/{sid}/judgments",
                json={"node": "information_security_policy", "i": pair[0], "j": pair[1], "value": 2},
            )

        threads = [threading.Thread(target=submit, args=(p,)) for p in pairs]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        status = client.get(f"/sessions/{sid}/status").json()
        assert status["per_node"]["information_security_policy"]["answered"] == 6


class TestServiceCliParity:
    def test_http_results_byte_equal_cli_compute(self, client, banking_hash):
        import subprocess
        import sys

        http_bytes = client.get(f"/models/{banking_hash}/results").content
        proc = subprocess.run(
            [sys.executable, "-m", "ahpkit.cli", "compute", "--bundled", "banking", "--format", "structured"],
            capture_output=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == http_bytes
