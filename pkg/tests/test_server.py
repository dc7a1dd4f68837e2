import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from causalkit.server import create_app
from conftest import AUDIOLOGY_CSV, csv_from_columns


@pytest.fixture
def client():
    return TestClient(create_app())


def upload(client, text, config=None):
    resp = client.post("/datasets", json={"data": text, "config": config})
    assert resp.status_code == 200, resp.text
    return resp.json()


def chain_csv(n=2000, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, n)
    b = np.where(rng.random(n) < 0.9, a, 1 - a)
    return csv_from_columns({"A": a.tolist(), "B": b.tolist()})


def test_upload_audiology_summary(client):
    doc = upload(client, AUDIOLOGY_CSV.read_text())
    assert len(doc["summary"]["columns"]) == 24
    assert doc["summary"]["sampleSize"] == 200
    marginals = {c["name"]: c["marginal"] for c in doc["summary"]["columns"]}
    assert sum(marginals["class"].values()) == pytest.approx(1.0)


def test_upload_errors(client):
    resp = client.post("/datasets", json={"data": ""})
    assert resp.status_code == 400
    assert resp.json()["code"] == "empty_table"


def test_duplicate_upload_gets_new_id(client):
    a = upload(client, "x,y\n1,2\n3,4\n")
    b = upload(client, "x,y\n1,2\n3,4\n")
    assert a["datasetId"] != b["datasetId"]


def test_discover_independent_coins(client):
    rng = np.random.default_rng(1)
    text = csv_from_columns(
        {
            "X": rng.integers(0, 2, 5000).tolist(),
            "Y": rng.integers(0, 2, 5000).tolist(),
        }
    )
    ds = upload(client, text)
    resp = client.post(f"/datasets/{ds['datasetId']}/discover", json={})
    assert resp.status_code == 200
    assert resp.json()["edgeCount"] == 0

    again = client.post(f"/datasets/{ds['datasetId']}/discover", json={})
    assert again.json()["score"] == resp.json()["score"]


def test_discover_validation(client):
    ds = upload(client, chain_csv())
    resp = client.post(
        f"/datasets/{ds['datasetId']}/discover", json={"penaltyDiscount": -1}
    )
    assert resp.status_code == 422
    resp = client.post("/datasets/nope/discover", json={})
    assert resp.status_code == 404


def test_graph_layout_and_focus(client):
    ds = upload(client, AUDIOLOGY_CSV.read_text())
    graph = client.post(f"/datasets/{ds['datasetId']}/discover", json={}).json()
    gid = graph["graphId"]

    full = client.get(f"/graphs/{gid}")
    assert full.status_code == 200
    doc = full.json()
    assert doc["layers"] >= 2
    assert all("layer" in n and "orderInLayer" in n for n in doc["nodes"])

    # idempotent reads are byte-identical
    assert full.content == client.get(f"/graphs/{gid}").content

    focused = client.get(f"/graphs/{gid}", params={"focus": "class"})
    assert focused.status_code == 200
    assert len(focused.json()["nodes"]) < len(doc["nodes"])

    bad = client.get(f"/graphs/{gid}", params={"focus": "zzz"})
    assert bad.status_code == 422
    assert client.get("/graphs/zzz").status_code == 404


def test_intervene_endpoint(client):
    ds = upload(client, chain_csv())
    gid = client.post(f"/datasets/{ds['datasetId']}/discover", json={}).json()["graphId"]
    resp = client.post(
        f"/graphs/{gid}/intervene",
        json={
            "assignments": [{"column": "A", "value": "1"}],
            "sampleCount": 50_000,
            "seed": 11,
        },
    )
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["perDimension"]["A"]["estimated"]["1"] == 1.0
    assert doc["perDimension"]["B"]["estimated"]["1"] == pytest.approx(0.9, abs=0.02)

    again = client.post(
        f"/graphs/{gid}/intervene",
        json={
            "assignments": [{"column": "A", "value": "1"}],
            "sampleCount": 50_000,
            "seed": 11,
        },
    )
    assert again.content == resp.content

    bad = client.post(
        f"/graphs/{gid}/intervene",
        json={"assignments": [{"column": "A", "value": "nope"}]},
    )
    assert bad.status_code == 422


def test_empty_intervention_close_to_observational(client):
    ds = upload(client, chain_csv(seed=2))
    gid = client.post(f"/datasets/{ds['datasetId']}/discover", json={}).json()["graphId"]
    doc = client.post(
        f"/graphs/{gid}/intervene", json={"assignments": [], "seed": 3}
    ).json()
    for dim in doc["perDimension"].values():
        drift = sum(
            abs(dim["original"][k] - dim["estimated"].get(k, 0.0))
            for k in dim["original"]
        )
        assert drift < 0.05


def test_attribute_endpoint(client):
    ds = upload(client, AUDIOLOGY_CSV.read_text())
    gid = client.post(f"/datasets/{ds['datasetId']}/discover", json={}).json()["graphId"]
    resp = client.post(
        f"/graphs/{gid}/attribute",
        json={"column": "class", "value": "cochlear_unknown"},
    )
    assert resp.status_code == 200
    doc = resp.json()
    top = max(doc["effects"], key=doc["effects"].get)
    assert top == "noise"
    for node in doc["outOfPath"]:
        assert doc["effects"][node] == 0.0

    root = client.post(
        f"/graphs/{gid}/attribute", json={"column": "noise", "value": "t"}
    ).json()
    assert all(v == 0.0 for v in root["effects"].values())

    bad = client.post(
        f"/graphs/{gid}/attribute", json={"column": "class", "value": "zzz"}
    )
    assert bad.status_code == 422


def test_payload_cap():
    client = TestClient(create_app(upload_cap=100))
    resp = client.post("/datasets", json={"data": "x" * 1000})
    assert resp.status_code == 413


def test_persistence_round_trip(tmp_path):
    client = TestClient(create_app(persist_dir=tmp_path))
    ds = upload(client, chain_csv(seed=4))
    gid = client.post(f"/datasets/{ds['datasetId']}/discover", json={}).json()["graphId"]
    before = client.get(f"/graphs/{gid}").content

    reloaded = TestClient(create_app(persist_dir=tmp_path))
    after = reloaded.get(f"/graphs/{gid}")
    assert after.status_code == 200
    assert after.content == before
