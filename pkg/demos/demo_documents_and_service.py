"""Durable documents and the HTTP service.

Shows the deterministic model/session/report formats, content-addressed
model hashing, the three report renderings, and the REST surface driven
in-process.
"""

import json

from fastapi.testclient import TestClient

from ahpkit import ElicitationSession
from ahpkit.banking_case import banking_model_with_weights
from ahpkit.documents import (
    ModelDocument,
    export_report,
    load_model,
    model_hash,
    save_model,
    save_session,
)
from ahpkit.service import create_app
from ahpkit.workflow import compute_results

model = banking_model_with_weights()

# Deterministic serialization: same value, same bytes, same hash.
data = save_model(model)
assert save_model(model) == data
assert load_model(data) == model
digest = model_hash(model)
print(f"model document: {len(data)} bytes, sha256 {digest[:16]}...")

# Sessions persist the answered/pending split exactly.
session = ElicitationSession(model, model_hash=digest)
session.record_judgment("culture", (0, 1), 3)
print("session document keys:", sorted(json.loads(save_session(session))))

# One report, three renderings. Precision 3 mirrors published tables.
report = compute_results(ModelDocument(model), precision=3)
labels = {n.id: n.label for n in model.nodes.values()}
print("\ntabular (3 decimals):")
print(export_report(report, format="tabular", labels=labels).decode())

print("text:")
print(export_report(report, format="text", labels=labels).decode())

# The HTTP service speaks the same documents. (TestClient here; run
# `ahpkit serve` for a real socket.)
client = TestClient(create_app())
results = client.get(f"/models/{digest}/results").content
cli_equivalent = export_report(compute_results(ModelDocument(model)), format="structured")
print("HTTP results byte-equal to the library export:", results == cli_equivalent)

sid = json.loads(client.post("/sessions", json={"model_hash": digest}).content)["session_id"]
nxt = client.get(f"/sessions/{sid}/next").json()
print("first wizard question over HTTP:", nxt["question"])
client.post(
    f"/sessions/{sid}/judgments",
    json={"node": nxt["node"], "i": nxt["i"], "j": nxt["j"], "descriptor": "strong"},
)
print("progress:", client.get(f"/sessions/{sid}/status").json()["answered"], "answered")
