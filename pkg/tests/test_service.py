import numpy as np
import pytest
from fastapi.testclient import TestClient

from gaussentangle import __version__
from gaussentangle.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def fig2_doc(**overrides):
    doc = {
        "lambda": 0.1,
        "omega1": 1.0,
        "omega2": 3.0,
        "state": {"type": "two_mode_squeezed", "r": 2.0},
        "t_max": 25.0,
        "steps": 30,
        "T_list": [0.0, 1.0],
    }
    doc.update(overrides)
    return doc


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "version": __version__}


def test_sweep_endpoint(client):
    response = client.post("/sweep", json=fig2_doc())
    assert response.status_code == 200
    payload = response.json()
    assert payload["schema"] == 1
    assert len(payload["records"]) == 60
    assert payload["rk4_max_s_diff"] is None
    record = payload["records"][0]
    assert set(record) == {
        "t", "T", "S", "nu_minus", "E_N", "uncertainty_residual", "is_entangled",
    }
    assert record["is_entangled"] is True


def test_evolve_endpoint_single_temperature(client):
    response = client.post("/evolve", json=fig2_doc(T_list=[1.0], steps=8))
    assert response.status_code == 200
    assert len(response.json()["records"]) == 8


def test_evolve_rejects_multiple_temperatures(client):
    response = client.post("/evolve", json=fig2_doc())
    assert response.status_code == 422
    assert response.json()["error_class"] == "config"


def test_esd_endpoint(client):
    response = client.post("/esd", json=fig2_doc(T_list=[1.0], t_max=100.0))
    assert response.status_code == 200
    payload = response.json()
    assert payload["schema"] == 1
    assert payload["scenario"]["lambda"] == 0.1
    entry = payload["results"][0]
    assert entry["T"] == 1.0
    assert entry["esd_time"] is not None


def test_esd_refuses_separable_state(client):
    doc = fig2_doc(state={"type": "single_mode_squeezed", "r": 1.0})
    response = client.post("/esd", json=doc)
    assert response.status_code == 400
    assert response.json()["error_class"] == "physics"


def test_asymptote_endpoint(client):
    response = client.post("/asymptote", json=fig2_doc(T_list=[1.0]))
    assert response.status_code == 200
    entry = response.json()["results"][0]
    assert entry["S_inf"] == pytest.approx(0.05076686772381301, rel=1e-10)
    assert entry["E_N_inf"] == pytest.approx(-0.14377398525366298, rel=1e-10)
    assert entry["separable"] is True


def test_validate_endpoint(client):
    response = client.post("/validate", json=fig2_doc(T_list=[0.0, 2.0]))
    assert response.status_code == 200
    payload = response.json()
    assert payload["all_passed"] is True
    assert len(payload["results"][0]["inequalities"]) == 6


def test_validate_strict_query(client):
    response = client.post("/validate", json=fig2_doc(T_list=[1.0]), params={"strict": True})
    assert response.status_code == 200
    payload = response.json()
    assert payload["strict"] is True
    assert payload["results"][0]["strict_min_eigenvalue"] is not None


def test_body_validation_maps_to_422(client):
    response = client.post("/sweep", json=fig2_doc(omega1=-1.0))
    assert response.status_code == 422


def test_unknown_key_rejected(client):
    response = client.post("/sweep", json={**fig2_doc(), "bogus": 1})
    assert response.status_code == 422


def test_unphysical_custom_state_maps_to_400(client):
    sigma = (0.25 * np.eye(4)).reshape(-1).tolist()
    doc = fig2_doc(state={"type": "custom", "sigma": sigma})
    response = client.post("/sweep", json=doc)
    assert response.status_code == 400
    assert response.json()["error_class"] == "physics"
