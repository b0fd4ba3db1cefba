import json

import pytest
from fastapi.testclient import TestClient

from metallicgeo import __version__
from metallicgeo.dataset import dataset_dumps, record_to_json
from metallicgeo.examples import build_ekt_immersion, build_sphere_product
from metallicgeo.service import app
from metallicgeo.structures import MetallicParams


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "version": __version__}


def test_verify_builtin_pass(client):
    response = client.post("/verify/builtin", json={"name": "sphere-product"})
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"] == "pass"
    assert any(e["name"] == "gauss" for e in body["entries"])


def test_verify_builtin_hypersurface_includes_extra_entries(client):
    response = client.post(
        "/verify/builtin", json={"name": "ekt", "kappa": 1.0, "tau": 0.5}
    )
    assert response.status_code == 200
    names = [e["name"] for e in response.json()["entries"]]
    assert any(n.startswith("hyp:") for n in names)


def test_verify_builtin_rejects_bad_input(client):
    assert client.post("/verify/builtin", json={"name": "banana"}).status_code == 422
    assert (
        client.post("/verify/builtin", json={"name": "ekt", "tau": 0.0}).status_code
        == 422
    )
    assert (
        client.post(
            "/verify/builtin", json={"name": "sphere-product", "q": -1.0}
        ).status_code
        == 422
    )


def test_verify_dataset_counts(client):
    good = record_to_json(build_sphere_product(2, 2, 1.0, 1.0, MetallicParams(1.0, 1.0)))
    bad = json.loads(json.dumps(good))
    bad["P"]["data"][0][1] = "0.5"
    dataset = {"version": "1", "records": [good, bad]}
    response = client.post("/verify/dataset", json={"dataset": dataset})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] == 1
    assert body["failed"] == 1
    assert body["records"][0]["verdict"] == "pass"
    assert body["records"][1]["verdict"] == "fail"


def test_verify_dataset_rejects_malformed(client):
    response = client.post(
        "/verify/dataset", json={"dataset": {"version": "0", "records": []}}
    )
    assert response.status_code == 422


def test_family_sweep(client):
    response = client.post("/family-sweep", json={"thetas": 8})
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"] == "pass"
    assert body["entries"][-1]["name"] == "continuity"
    assert client.post("/family-sweep", json={"thetas": 0}).status_code == 422


def test_dataset_text_round_trip_through_service(client):
    _, ekt = build_ekt_immersion(0.0, 1.0, 2.0, 2.0)
    dataset = json.loads(dataset_dumps([ekt]))
    response = client.post("/verify/dataset", json={"dataset": dataset})
    assert response.status_code == 200
    assert response.json()["passed"] == 1
